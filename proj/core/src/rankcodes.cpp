#include "ranklab/rankcodes.hpp"

#include <algorithm>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

Vec flatten_matrix(const Mat& M) { return M.data; }

Mat unflatten_matrix(const Field& f, std::size_t m, std::size_t n, std::span<const Fe> v) {
  require(v.size() == m * n, ErrorCode::DimensionMismatch, "flat matrix length is not m*n");
  Mat M(f, m, n);
  std::copy(v.begin(), v.end(), M.data.begin());
  return M;
}

RankCode RankCode::from_basis(std::shared_ptr<const Field> field, std::size_t m, std::size_t n,
                              std::vector<Mat> basis) {
  require(field != nullptr, ErrorCode::InvalidArgument, "code without a field");
  RankCode C;
  C.field_ = std::move(field);
  C.m_ = m;
  C.n_ = n;
  Mat flat(*C.field_, 0, m * n);
  for (auto& B : basis) {
    require(B.rows == m && B.cols == n, ErrorCode::ShapeMismatch, "basis matrix has the wrong shape");
    require(B.field != nullptr && B.field->size() == C.field_->size(), ErrorCode::WrongLevel,
            "basis matrix over a different field");
    B.field = C.field_.get();
    flat.append_row(B.data);
  }
  C.flat_ = SubspaceBasis::span(flat);
  require(C.flat_.dim() == basis.size(), ErrorCode::DependentBasis, "code basis is F_q-dependent");
  C.basis_ = std::move(basis);
  return C;
}

RankCode RankCode::from_span(std::shared_ptr<const Field> field, std::size_t m, std::size_t n,
                             const std::vector<Mat>& matrices) {
  Mat flat(*field, 0, m * n);
  std::vector<Mat> kept;
  std::size_t rk = 0;
  for (const auto& M : matrices) {
    require(M.rows == m && M.cols == n, ErrorCode::ShapeMismatch, "matrix has the wrong shape");
    Mat trial = flat;
    trial.append_row(M.data);
    const std::size_t r2 = rank(trial);
    if (r2 > rk) {
      rk = r2;
      flat = std::move(trial);
      kept.push_back(M);
    }
  }
  return from_basis(std::move(field), m, n, std::move(kept));
}

RankCode RankCode::full_space(std::shared_ptr<const Field> field, std::size_t m, std::size_t n) {
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat E(*field, m, n);
      E(i, j) = Fe(1);
      basis.push_back(std::move(E));
    }
  return from_basis(std::move(field), m, n, std::move(basis));
}

Mat RankCode::flat_matrix() const {
  Mat flat(*field_, 0, m_ * n_);
  for (const auto& B : basis_) flat.append_row(B.data);
  return flat;
}

bool RankCode::contains(const Mat& M) const {
  require(M.rows == m_ && M.cols == n_, ErrorCode::ShapeMismatch, "matrix has the wrong shape");
  return flat_.contains(M.data);
}

BigInt RankDistribution::total() const {
  BigInt s = 0;
  for (const auto& a : A) s += a;
  return s;
}

std::size_t RankDistribution::min_distance() const {
  for (std::size_t i = 1; i < A.size(); ++i)
    if (A[i] > 0) return i;
  return 0;
}

std::size_t min_distance(const RankCode& C, const ScanOptions& opts) {
  require(C.dim() > 0, ErrorCode::EmptyCode, "the zero code has no minimum distance");
  return rank_distribution(C, opts).min_distance();
}

bool mrd_parameters(std::size_t m, std::size_t n, std::size_t K, std::size_t d) {
  const std::size_t lo = std::min(m, n), hi = std::max(m, n);
  if (d < 1 || d > lo) return false;
  return K == hi * (lo - d + 1);
}

bool is_mrd(const RankCode& C, const ScanOptions& opts) {
  return mrd_parameters(C.m(), C.n(), C.dim(), min_distance(C, opts));
}

RankDistribution mrd_weight_distribution(std::size_t m, std::size_t n, std::uint32_t q, std::size_t d) {
  const std::size_t lo = std::min(m, n), hi = std::max(m, n);
  require(q >= 2 && d >= 1 && d <= lo + 1, ErrorCode::InvalidParams,
          "MRD weight distribution needs 1 <= d <= min(m,n)+1");
  RankDistribution D;
  D.m = m;
  D.n = n;
  D.q = q;
  D.K = hi * (lo + 1 - d);
  D.A.assign(lo + 1, 0);
  D.A[0] = 1;
  for (std::size_t ell = 0; d + ell <= lo; ++ell) {
    BigInt s = 0;
    for (std::size_t t = 0; t <= ell; ++t) {
      const std::size_t e = ell - t;
      BigInt term = qbinom(static_cast<long>(ell + d), static_cast<long>(e), q) * big_pow(q, e * (e - 1) / 2) *
                    (big_pow(q, hi * (t + 1)) - 1);
      if (e % 2) s -= term;
      else s += term;
    }
    D.A[d + ell] = qbinom(static_cast<long>(lo), static_cast<long>(d + ell), q) * s;
  }
  return D;
}

RankCode adjoint(const RankCode& C) {
  std::vector<Mat> basis;
  for (const auto& B : C.basis()) basis.push_back(transpose(B));
  return RankCode::from_basis(C.field_ptr(), C.n(), C.m(), std::move(basis));
}

RankCode delsarte_dual_code(const RankCode& C) {
  const std::size_t mn = C.m() * C.n();
  if (C.dim() == 0) return RankCode::full_space(C.field_ptr(), C.m(), C.n());
  const Mat K = kernel_matrix(C.flat_matrix());
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < K.rows; ++i) basis.push_back(unflatten_matrix(C.field(), C.m(), C.n(), K.row(i)));
  RankCode D = RankCode::from_basis(C.field_ptr(), C.m(), C.n(), std::move(basis));
  require(D.dim() == mn - C.dim(), ErrorCode::InternalError, "dual code has the wrong dimension");
  return D;
}

bool macwilliams_check(const RankDistribution& A, const RankDistribution& B) {
  require(A.m == B.m && A.n == B.n && A.q == B.q, ErrorCode::ParamMismatch, "distributions of different shapes");
  const long m = static_cast<long>(A.m);
  const std::uint64_t q = A.q;
  auto at = [](const RankDistribution& D, long i) -> BigInt {
    return i >= 0 && static_cast<std::size_t>(i) < D.A.size() ? D.A[static_cast<std::size_t>(i)] : BigInt(0);
  };
  for (long nu = 0; nu <= m; ++nu) {
    BigInt lhs = 0, rhs = 0;
    for (long i = 0; i <= m - nu; ++i) lhs += at(A, i) * qbinom(m - i, nu, q);
    for (long j = 0; j <= nu; ++j) rhs += at(B, j) * qbinom(m - j, nu - j, q);
    // lhs = q^K / q^{n nu} * rhs, cleared of denominators
    if (lhs * big_pow(q, A.n * static_cast<std::uint64_t>(nu)) != big_pow(q, A.K) * rhs) return false;
  }
  return true;
}

bool macwilliams_check(const RankCode& C, const ScanOptions& opts) {
  return macwilliams_check(rank_distribution(C, opts), rank_distribution(delsarte_dual_code(C), opts));
}

bool dual_relations_check(const RankDistribution& A) {
  const std::size_t lo = std::min(A.m, A.n), hi = std::max(A.m, A.n);
  const std::size_t d = A.min_distance();
  require(d > 0 && mrd_parameters(A.m, A.n, A.K, d), ErrorCode::NotMRD, "dual relations need an MRD code");
  const std::uint64_t q = A.q;
  for (std::size_t nu = 0; nu + d <= lo; ++nu) {
    BigInt lhs = qbinom(static_cast<long>(lo), static_cast<long>(nu), q);
    for (std::size_t i = d; i + nu <= lo; ++i)
      lhs += A.A[i] * qbinom(static_cast<long>(lo - i), static_cast<long>(nu), q);
    const BigInt rhs = big_pow(q, A.K) * qbinom(static_cast<long>(lo), static_cast<long>(nu), q);
    if (lhs * big_pow(q, hi * nu) != rhs) return false;
  }
  return true;
}

bool dual_relations_check(const RankCode& C, const ScanOptions& opts) {
  return dual_relations_check(rank_distribution(C, opts));
}

RankCode puncture(const RankCode& C, const Mat& A) {
  require(C.m() == C.n(), ErrorCode::ShapeMismatch, "puncturing needs a square code");
  require(A.cols == C.n() && A.rows <= C.n(), ErrorCode::ShapeMismatch, "puncturing matrix must be m' x n with m' <= n");
  require(rank(A) == A.rows, ErrorCode::RankDeficientA, "puncturing matrix is not of full row rank");
  std::vector<Mat> images;
  for (const auto& B : C.basis()) images.push_back(multiply(A, B));
  return RankCode::from_span(C.field_ptr(), A.rows, C.n(), images);
}

InequivalenceCertificate inequivalence_certificate(const RankCode& a, const RankCode& b, const ScanOptions& opts) {
  require(a.m() == b.m() && a.n() == b.n() && a.q() == b.q(), ErrorCode::ParamMismatch,
          "codes live in different matrix spaces");
  InequivalenceCertificate cert;
  auto note = [&](std::string reason) {
    cert.inequivalent = true;
    cert.reasons.push_back(std::move(reason));
  };
  if (a.dim() != b.dim()) note("dimension");
  if (rank_distribution(a, opts) != rank_distribution(b, opts)) note("rank-distribution");
  const Idealiser la = left_idealiser(a, opts), lb = left_idealiser(b, opts);
  const Idealiser ra = right_idealiser(a, opts), rb = right_idealiser(b, opts);
  if (la.dim != lb.dim) note("left-idealiser-order");
  else if (la.isField != lb.isField && !la.probabilistic && !lb.probabilistic) note("left-idealiser-field");
  if (ra.dim != rb.dim) note("right-idealiser-order");
  else if (ra.isField != rb.isField && !ra.probabilistic && !rb.probabilistic) note("right-idealiser-field");
  return cert;
}

const char* to_string(Exclusion e) { return e == Exclusion::CertifiedNew ? "certified-new" : "not-applicable"; }

Exclusion gabidulin_family_exclusion(const CodeInvariants& inv, std::size_t r, std::size_t n, std::size_t h) {
  require(h >= 1 && h < n && (r * n) % (h + 1) == 0, ErrorCode::ParamMismatch, "(h+1) must divide rn with 1 <= h < n");
  const std::size_t m = r * n / (h + 1);
  require(inv.m == m && inv.n == n && inv.d == n - h && inv.K == r * n, ErrorCode::ParamMismatch,
          "code parameters are not (rn/(h+1), n, q; n-h) with dimension rn");
  if (r % (h + 1) == 0) return Exclusion::NotApplicable;
  require(n >= h + 3 && !(n == 4 && h == 1), ErrorCode::HypothesisViolated, "needs n >= h+3 and (n,h) != (4,1)");
  return inv.rightIdealiserDim == n ? Exclusion::CertifiedNew : Exclusion::NotApplicable;
}

Exclusion gabidulin_family_exclusion(const RankCode& C, std::size_t r, std::size_t n, std::size_t h,
                                     const ScanOptions& opts) {
  CodeInvariants inv;
  inv.m = C.m();
  inv.n = C.n();
  inv.K = C.dim();
  inv.q = C.q();
  inv.d = min_distance(C, opts);
  inv.rightIdealiserDim = right_idealiser(C, opts).dim;
  return gabidulin_family_exclusion(inv, r, n, h);
}

}  // namespace ranklab
