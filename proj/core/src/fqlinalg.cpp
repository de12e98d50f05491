#include "ranklab/fqlinalg.hpp"

#include <algorithm>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

void check_same_field(const Mat& a, const Mat& b, const char* what) {
  require(a.field == b.field || (a.field && b.field && a.field->size() == b.field->size()),
          ErrorCode::WrongLevel, std::string(what) + ": matrices over different fields");
}

}  // namespace

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Fe(1);
  return m;
}

Mat Mat::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(f, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Vec Mat::col_vec(std::size_t j) const {
  Vec out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
  return out;
}

void Mat::append_row(std::span<const Fe> r) {
  require(r.size() == cols, ErrorCode::DimensionMismatch, "row length does not match matrix width");
  data.insert(data.end(), r.begin(), r.end());
  ++rows;
}

bool Mat::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](Fe x) { return x.is_zero(); });
}

Mat multiply(const Mat& a, const Mat& b) {
  check_same_field(a, b, "multiply");
  require(a.cols == b.rows, ErrorCode::DimensionMismatch, "multiply: inner dimensions differ");
  const Field& f = *a.field;
  Mat c(f, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t l = 0; l < a.cols; ++l) {
      const Fe x = a(i, l);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
    }
  return c;
}

Vec multiply(const Mat& a, std::span<const Fe> v) {
  require(a.cols == v.size(), ErrorCode::DimensionMismatch, "multiply: vector length differs");
  const Field& f = *a.field;
  Vec out(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Fe acc(0);
    for (std::size_t j = 0; j < a.cols; ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Mat transpose(const Mat& a) {
  Mat t(*a.field, a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Mat add(const Mat& a, const Mat& b) {
  check_same_field(a, b, "add");
  require(a.rows == b.rows && a.cols == b.cols, ErrorCode::DimensionMismatch, "add: shapes differ");
  Mat c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = a.field->add(a.data[i], b.data[i]);
  return c;
}

Mat scale(const Mat& a, Fe s) {
  Mat c = a;
  for (auto& x : c.data) x = a.field->mul(x, s);
  return c;
}

Mat hconcat(const Mat& a, const Mat& b) {
  require(a.rows == b.rows, ErrorCode::DimensionMismatch, "hconcat: row counts differ");
  Mat c(*a.field, a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), c.row(i).begin());
    std::copy(b.row(i).begin(), b.row(i).end(), c.row(i).begin() + static_cast<std::ptrdiff_t>(a.cols));
  }
  return c;
}

Mat vconcat(const Mat& a, const Mat& b) {
  require(a.cols == b.cols, ErrorCode::DimensionMismatch, "vconcat: column counts differ");
  Mat c = a;
  c.data.insert(c.data.end(), b.data.begin(), b.data.end());
  c.rows += b.rows;
  return c;
}

RrefResult rref(Mat m) {
  RrefResult out;
  if (m.field == nullptr) {
    out.matrix = std::move(m);
    return out;
  }
  const Field& f = *m.field;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const Fe inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const Fe factor = m(i, c);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.matrix = std::move(m);
  return out;
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat kernel_matrix(const Mat& m) {
  const Field& f = *m.field;
  const RrefResult red = rref(m);
  std::vector<bool> isPivot(m.cols, false);
  for (auto p : red.pivots) isPivot[p] = true;
  Mat k(f, 0, m.cols);
  for (std::size_t freeCol = 0; freeCol < m.cols; ++freeCol) {
    if (isPivot[freeCol]) continue;
    Vec v(m.cols);
    v[freeCol] = Fe(1);
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = f.neg(red.matrix(i, freeCol));
    k.append_row(v);
  }
  return rref(std::move(k)).matrix;
}

std::optional<Vec> solve(const Mat& a, std::span<const Fe> b) {
  require(b.size() == a.rows, ErrorCode::DimensionMismatch, "solve: right-hand side length differs");
  Mat aug(*a.field, a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  const RrefResult red = rref(std::move(aug));
  if (!red.pivots.empty() && red.pivots.back() == a.cols) return std::nullopt;
  Vec x(a.cols);
  for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.matrix(i, a.cols);
  return x;
}

Mat inverse(const Mat& a) {
  require(a.rows == a.cols, ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows;
  const RrefResult red = rref(hconcat(a, Mat::identity(*a.field, n)));
  require(red.rank >= n && (n == 0 || red.pivots[n - 1] == n - 1), ErrorCode::Singular, "matrix is singular");
  Mat inv(*a.field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.matrix(i, n + j);
  return inv;
}

SubspaceBasis::SubspaceBasis(const Field& f, std::size_t ambient) : basis_(f, 0, ambient) {}

SubspaceBasis SubspaceBasis::span(const Mat& rows) {
  SubspaceBasis s;
  RrefResult red = rref(rows);
  red.matrix.rows = red.rank;
  red.matrix.data.resize(red.rank * red.matrix.cols);
  s.basis_ = std::move(red.matrix);
  s.pivots_ = std::move(red.pivots);
  return s;
}

SubspaceBasis SubspaceBasis::full(const Field& f, std::size_t ambient) { return span(Mat::identity(f, ambient)); }

bool SubspaceBasis::contains(std::span<const Fe> v) const {
  require(v.size() == ambient(), ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  const Field& f = field();
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const Fe c = w[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient(); ++j) w[j] = f.sub(w[j], f.mul(c, basis_(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](Fe x) { return x.is_zero(); });
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

SubspaceBasis kernel(const Mat& m) { return SubspaceBasis::span(kernel_matrix(m)); }

SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  require(a.ambient() == b.ambient(), ErrorCode::AmbientMismatch, "sum: ambient dimensions differ");
  return SubspaceBasis::span(vconcat(a.basis(), b.basis()));
}

SubspaceBasis orthogonal(const SubspaceBasis& a) {
  if (a.dim() == 0) return SubspaceBasis::full(a.field(), a.ambient());
  return kernel(a.basis());
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  require(a.ambient() == b.ambient(), ErrorCode::AmbientMismatch, "intersect: ambient dimensions differ");
  return orthogonal(sum(orthogonal(a), orthogonal(b)));
}

BigInt qbinom(long s, long t, std::uint64_t Q) {
  if (s < 0 || t < 0 || t > s) return 0;
  BigInt num = 1, den = 1;
  for (long i = 0; i < t; ++i) {
    num *= big_pow(Q, static_cast<std::uint64_t>(s - i)) - 1;
    den *= big_pow(Q, static_cast<std::uint64_t>(i + 1)) - 1;
  }
  return num / den;
}

BigInt theta(long s, std::uint64_t Q) {
  if (s < 0) return 0;
  return (big_pow(Q, static_cast<std::uint64_t>(s + 1)) - 1) / (Q - 1);
}

bool enumerate_subspaces(const Field& f, std::size_t ambient, std::size_t d, std::uint64_t budget,
                         const std::function<bool(const Mat&)>& visit) {
  if (d > ambient) return true;
  const BigInt total = qbinom(static_cast<long>(ambient), static_cast<long>(d), f.size());
  require(total <= budget, ErrorCode::BudgetExceeded,
          "enumerating " + total.str() + " subspaces exceeds the budget of " + std::to_string(budget));
  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  Mat m(f, d, ambient);
  while (true) {
    // free positions: row i, columns after piv[i] that are not pivots
    std::vector<std::pair<std::size_t, std::size_t>> freePos;
    std::vector<bool> isPivot(ambient, false);
    for (auto p : piv) isPivot[p] = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = piv[i] + 1; j < ambient; ++j)
        if (!isPivot[j]) freePos.emplace_back(i, j);
    std::fill(m.data.begin(), m.data.end(), Fe(0));
    for (std::size_t i = 0; i < d; ++i) m(i, piv[i]) = Fe(1);
    std::vector<std::uint32_t> digits(freePos.size(), 0);
    while (true) {
      if (!visit(m)) return false;
      std::size_t pos = 0;
      while (pos < digits.size()) {
        if (++digits[pos] < f.size()) break;
        digits[pos] = 0;
        m(freePos[pos].first, freePos[pos].second) = Fe(0);
        ++pos;
      }
      if (pos == digits.size()) break;
      m(freePos[pos].first, freePos[pos].second) = Fe(digits[pos]);
    }
    // next pivot combination
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == ambient - d + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  return true;
}

std::uint64_t projective_point_count(const Field& f, std::size_t ambient) {
  std::uint64_t total = 0, block = 1;
  for (std::size_t i = 0; i < ambient; ++i) {
    total += block;
    block *= f.size();
  }
  return total;
}

Vec projective_point(const Field& f, std::size_t ambient, std::uint64_t index) {
  // leading 1 at position lead, Q^{ambient-1-lead} points each
  std::uint64_t block = 1;
  for (std::size_t i = 1; i < ambient; ++i) block *= f.size();
  for (std::size_t lead = 0; lead < ambient; ++lead) {
    if (index < block) {
      Vec v(ambient);
      v[lead] = Fe(1);
      for (std::size_t j = lead + 1; j < ambient; ++j) {
        v[j] = Fe(static_cast<std::uint32_t>(index % f.size()));
        index /= f.size();
      }
      return v;
    }
    index -= block;
    block /= f.size();
  }
  fail(ErrorCode::InvalidArgument, "projective point index out of range");
}

Vec normalize_projective(const Field& f, Vec v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) {
      const Fe inv = f.inv(v[i]);
      for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(v[j], inv);
      break;
    }
  }
  return v;
}

Vec vector_from_index(const Field& f, std::size_t len, std::uint64_t index) {
  Vec v(len);
  for (auto& x : v) {
    x = Fe(static_cast<std::uint32_t>(index % f.size()));
    index /= f.size();
  }
  return v;
}

}  // namespace ranklab
