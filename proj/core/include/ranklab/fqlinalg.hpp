#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ranklab/bigint.hpp"
#include "ranklab/fields.hpp"

namespace ranklab {

using Vec = std::vector<Fe>;

// Dense row-major matrix over one field of a tower.
struct Mat {
  const Field* field = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Fe> data;

  Mat() = default;
  Mat(const Field& f, std::size_t r, std::size_t c) : field(&f), rows(r), cols(c), data(r * c) {}

  static Mat identity(const Field& f, std::size_t n);
  static Mat from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);

  Fe& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Fe operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<Fe> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const Fe> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
  Vec col_vec(std::size_t j) const;
  void append_row(std::span<const Fe> r);
  bool is_zero() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

Mat multiply(const Mat& a, const Mat& b);
Vec multiply(const Mat& a, std::span<const Fe> v);
Mat transpose(const Mat& a);
Mat add(const Mat& a, const Mat& b);
Mat scale(const Mat& a, Fe c);
// Columns of a and b side by side.
Mat hconcat(const Mat& a, const Mat& b);
Mat vconcat(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);  // throws Singular

struct RrefResult {
  Mat matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(Mat m);
std::size_t rank(const Mat& m);
// Rows form a basis of the right null space, in RREF.
Mat kernel_matrix(const Mat& m);
// x with a x = b, or empty when inconsistent.
std::optional<Vec> solve(const Mat& a, std::span<const Fe> b);

// A subspace of F^ambient carried by its RREF basis (rows).
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  SubspaceBasis(const Field& f, std::size_t ambient);  // zero subspace
  // Row space of the given rows (any spanning set).
  static SubspaceBasis span(const Mat& rows);
  static SubspaceBasis full(const Field& f, std::size_t ambient);

  const Field& field() const { return *basis_.field; }
  std::size_t ambient() const { return basis_.cols; }
  std::size_t dim() const { return basis_.rows; }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool contains(std::span<const Fe> v) const;
  bool contains(const SubspaceBasis& other) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) { return a.basis_ == b.basis_; }

 private:
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis kernel(const Mat& m);
SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b);
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);
// Complement under the standard dot product.
SubspaceBasis orthogonal(const SubspaceBasis& a);

// Gaussian binomial [s choose t]_Q; 0 outside 0 <= t <= s.
BigInt qbinom(long s, long t, std::uint64_t Q);
// (Q^{s+1} - 1)/(Q - 1), the number of points of PG(s, Q); 0 for s < 0.
BigInt theta(long s, std::uint64_t Q);

// Calls visit with the RREF basis of every d-dimensional subspace of
// F^ambient exactly once, ordered by pivot pattern then free entries. Stops
// early when visit returns false. Returns false iff stopped early.
bool enumerate_subspaces(const Field& f, std::size_t ambient, std::size_t d, std::uint64_t budget,
                         const std::function<bool(const Mat&)>& visit);

// Nonzero vectors whose first nonzero entry is 1, i.e. points of PG(ambient-1, F),
// listed by index 0 .. theta(ambient-1)-1.
std::uint64_t projective_point_count(const Field& f, std::size_t ambient);
Vec projective_point(const Field& f, std::size_t ambient, std::uint64_t index);
// Scale so that the first nonzero entry is 1.
Vec normalize_projective(const Field& f, Vec v);

// All vectors of F^len indexed by their base-|F| digits (entry 0 least significant).
Vec vector_from_index(const Field& f, std::size_t len, std::uint64_t index);

}  // namespace ranklab
