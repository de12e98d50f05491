#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ranklab/bigint.hpp"
#include "ranklab/fields.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/parallel.hpp"

namespace ranklab {

// F_q-linear space of m x n matrices over F_q (maps F_q^n -> F_q^m), stored by basis.
class RankCode {
 public:
  RankCode() = default;
  // Basis must be independent (DependentBasis otherwise).
  static RankCode from_basis(std::shared_ptr<const Field> field, std::size_t m, std::size_t n, std::vector<Mat> basis);
  // Span of arbitrary matrices; dependent ones are dropped.
  static RankCode from_span(std::shared_ptr<const Field> field, std::size_t m, std::size_t n,
                            const std::vector<Mat>& matrices);
  static RankCode full_space(std::shared_ptr<const Field> field, std::size_t m, std::size_t n);

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->size(); }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Mat>& basis() const { return basis_; }
  // K x mn matrix of row-major flattened basis matrices.
  Mat flat_matrix() const;
  const SubspaceBasis& flat() const { return flat_; }
  bool contains(const Mat& M) const;
  bool same_code(const RankCode& other) const { return m_ == other.m_ && n_ == other.n_ && flat_ == other.flat_; }

 private:
  std::shared_ptr<const Field> field_;
  std::size_t m_ = 0, n_ = 0;
  std::vector<Mat> basis_;
  SubspaceBasis flat_;
};

Vec flatten_matrix(const Mat& M);
Mat unflatten_matrix(const Field& f, std::size_t m, std::size_t n, std::span<const Fe> v);

struct RankDistribution {
  std::size_t m = 0, n = 0, K = 0;
  std::uint32_t q = 0;
  std::vector<BigInt> A;  // index 0 .. min(m, n)

  BigInt total() const;
  // Smallest positive rank with A_i > 0; 0 if the code is zero.
  std::size_t min_distance() const;
  friend bool operator==(const RankDistribution&, const RankDistribution&) = default;
};

// Visits every codeword exactly once, walking a p-ary Gray code over an F_p-basis
// of the code. With more than one thread the callback runs concurrently.
void for_each_codeword(const RankCode& C, const ScanOptions& opts, const std::function<void(const Mat&)>& visit);

RankDistribution rank_distribution(const RankCode& C, const ScanOptions& opts = {});
std::size_t min_distance(const RankCode& C, const ScanOptions& opts = {});
// q^K == q^{max(m,n)(min(m,n)-d+1)}.
bool mrd_parameters(std::size_t m, std::size_t n, std::size_t K, std::size_t d);
bool is_mrd(const RankCode& C, const ScanOptions& opts = {});
RankDistribution mrd_weight_distribution(std::size_t m, std::size_t n, std::uint32_t q, std::size_t d);

RankCode adjoint(const RankCode& C);
// Orthogonal complement under Tr(M N^t).
RankCode delsarte_dual_code(const RankCode& C);

bool macwilliams_check(const RankDistribution& A, const RankDistribution& B);
bool macwilliams_check(const RankCode& C, const ScanOptions& opts = {});
bool dual_relations_check(const RankDistribution& A);
bool dual_relations_check(const RankCode& C, const ScanOptions& opts = {});

enum class Side { Left, Right };
const char* to_string(Side s);

struct Idealiser {
  Side side = Side::Left;
  std::vector<Mat> basis;  // m x m (left) or n x n (right)
  std::size_t dim = 0;     // order is q^dim
  BigInt order;
  bool isField = false;
  bool probabilistic = false;  // field flag from sampling rather than enumeration
};

Idealiser left_idealiser(const RankCode& C, const ScanOptions& opts = {}, std::uint64_t seed = 0);
Idealiser right_idealiser(const RankCode& C, const ScanOptions& opts = {}, std::uint64_t seed = 0);
// Every basis product stays in the code.
bool verify_idealiser(const RankCode& C, const Idealiser& I);

// {A M : M in C}; C square, A of full row rank with at most n rows.
RankCode puncture(const RankCode& C, const Mat& A);

struct InequivalenceCertificate {
  bool inequivalent = false;
  std::vector<std::string> reasons;  // empty when inconclusive
};

InequivalenceCertificate inequivalence_certificate(const RankCode& a, const RankCode& b, const ScanOptions& opts = {});

// The invariants the exclusion test reads, so it can run on stated values.
struct CodeInvariants {
  std::size_t m = 0, n = 0, K = 0, d = 0;
  std::uint32_t q = 0;
  std::size_t rightIdealiserDim = 0;
};

enum class Exclusion { CertifiedNew, NotApplicable };
const char* to_string(Exclusion e);

Exclusion gabidulin_family_exclusion(const CodeInvariants& inv, std::size_t r, std::size_t n, std::size_t h);
Exclusion gabidulin_family_exclusion(const RankCode& C, std::size_t r, std::size_t n, std::size_t h,
                                     const ScanOptions& opts = {});

}  // namespace ranklab
