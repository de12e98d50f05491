#include <string>

#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"

namespace ranklab {

namespace {

Mat mat_pow(Mat base, std::uint64_t e) {
  Mat result = Mat::identity(*base.field, base.rows);
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

bool has_order(const Mat& Z, std::uint64_t order) {
  const Mat I = Mat::identity(*Z.field, Z.rows);
  if (mat_pow(Z, order) != I) return false;
  for (std::uint64_t ell : prime_divisors(order))
    if (mat_pow(Z, order / ell) == I) return false;
  return true;
}

}  // namespace

ConverseResult mrd_to_subspace(const RankCode& C, const TowerPtr& tower, const ScanOptions& opts) {
  const FieldTower& T = *tower;
  const std::size_t n = C.n(), t = C.m();
  require(T.q() == C.q() && T.n() == n, ErrorCode::ParamMismatch, "tower does not match the code's q and n");
  require(t >= n, ErrorCode::ShapeMismatch, "converse extraction needs m >= n");
  const std::size_t d = min_distance(C, opts);
  require(mrd_parameters(t, n, C.dim(), d), ErrorCode::NotMRD, "code is not MRD");
  const Idealiser R = right_idealiser(C, opts);
  require(R.dim == n, ErrorCode::IdealiserNotMaximal,
          "right idealiser has order q^" + std::to_string(R.dim) + ", not q^" + std::to_string(n));
  require(C.dim() % n == 0, ErrorCode::InternalError, "code dimension is not a multiple of n");
  const std::size_t r = C.dim() / n;
  const Field& fq = T.base();
  const Field& mid = T.mid();

  // A Singer cycle generator inside R(C).
  const std::uint64_t order = T.qn() - 1;
  std::optional<Mat> Z;
  for (std::uint64_t idx = 1; idx <= order && !Z; ++idx) {
    const Vec c = vector_from_index(fq, R.dim, idx);
    Mat cand(fq, n, n);
    for (std::size_t i = 0; i < R.dim; ++i)
      if (!c[i].is_zero()) cand = add(cand, scale(R.basis[i], c[i]));
    if (has_order(cand, order)) Z = cand;
  }
  require(Z.has_value(), ErrorCode::InternalError, "right idealiser has no element of order q^n - 1");

  // Minimal polynomial via the Krylov sequence of e_0.
  Mat krylovZ(fq, n, n);
  Vec v(n);
  v[0] = Fe(1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < n; ++x) krylovZ(x, i) = v[x];
    v = multiply(*Z, v);
  }
  const auto sol = solve(krylovZ, v);
  require(sol.has_value(), ErrorCode::InternalError, "Krylov system of the Singer generator is inconsistent");
  // p(x) = x^n - sum sol_i x^i
  auto p_at = [&](Fe y) {
    Fe acc = mid.pow(y, n);
    for (std::size_t i = 0; i < n; ++i) acc = mid.sub(acc, mid.mul((*sol)[i], mid.pow(y, i)));
    return acc;
  };
  std::optional<Fe> gamma;
  for (std::uint32_t c = 1; c < mid.size() && !gamma; ++c)
    if (p_at(Fe(c)).is_zero()) gamma = Fe(c);
  require(gamma.has_value(), ErrorCode::InternalError, "minimal polynomial has no root in F_{q^n}");

  Mat krylovW(fq, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec col(n);
    to_base_coords(T, mid.pow(*gamma, i), col);
    for (std::size_t x = 0; x < n; ++x) krylovW(x, i) = col[x];
  }
  ConverseResult out;
  out.H = multiply(krylovZ, inverse(krylovW));
  const Mat omegaGamma = map_matrix(T, Level::Mid, [&](Fe x) { return mid.mul(*gamma, x); });
  require(multiply(*Z, out.H) == multiply(out.H, omegaGamma), ErrorCode::InternalError, "H does not conjugate Z");

  std::vector<Mat> conj;
  for (const auto& M : C.basis()) conj.push_back(multiply(M, out.H));
  out.conjugated = RankCode::from_basis(C.field_ptr(), t, n, std::move(conj));

  // F_n-basis f_1..f_r of C' (right action f o omega_alpha).
  std::vector<Mat> omegas;
  for (unsigned a = 0; a < n; ++a) {
    const Fe ga = mid.pow(mid.generator(), a);
    omegas.push_back(map_matrix(T, Level::Mid, [&](Fe x) { return mid.mul(ga, x); }));
  }
  Mat spanned(fq, 0, t * n);
  for (const auto& B : out.conjugated.basis()) {
    if (out.fnBasis.size() == r) break;
    if (spanned.rows > 0 && SubspaceBasis::span(spanned).contains(B.data)) continue;
    out.fnBasis.push_back(B);
    for (const auto& W : omegas) spanned.append_row(multiply(B, W).data);
  }
  require(out.fnBasis.size() == r, ErrorCode::InternalError, "conjugated code is not an F_n-space of dimension r");

  out.G = Mat(fq, t, r * n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < t; ++x) out.G(x, j * n + a) = out.fnBasis[j](x, a);
  out.U = FqSubspace::from_flat(tower, r, kernel(out.G));
  const CUGCode rebuilt = c_ug(out.U, out.G, opts);
  out.iota = rebuilt.iota;
  out.roundTrip = rebuilt.code.same_code(out.conjugated);
  return out;
}

}  // namespace ranklab
