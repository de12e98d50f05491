#include <string>

#include "ranklab/error.hpp"
#include "ranklab/subspaces.hpp"

namespace ranklab {

namespace {

Vec row_times(const Vec& u, const Mat& P) { return multiply(transpose(P), u); }

}  // namespace

DelsarteDualData delsarte_dual(const FqSubspace& U, const ScanOptions& opts) {
  const FieldTower& T = U.tower();
  const Field& mid = T.mid();
  const std::size_t k = U.k(), r = U.r();
  require(k > r, ErrorCode::DimensionMismatch, "Delsarte dual needs k > r");
  const std::size_t heaviest = max_hyperplane_weight(U, opts);
  require(heaviest + 1 < k, ErrorCode::PreconditionHyperplaneWeight,
          "a hyperplane meets U in dimension " + std::to_string(heaviest) + " >= k-1");

  const Mat M = Mat::from_rows(mid, r, U.basis());
  // Complete the columns of M to a basis of F_{q^n}^k with unit columns.
  Mat cols = transpose(M);
  std::vector<std::size_t> units;
  for (std::size_t e = 0; e < k && cols.rows < k; ++e) {
    Vec unit(k);
    unit[e] = Fe(1);
    Mat trial = cols;
    trial.append_row(unit);
    if (rank(trial) == trial.rows) {
      cols = std::move(trial);
      units.push_back(e);
    }
  }
  require(cols.rows == k, ErrorCode::NoEmbedding, "no unit-column completion of [M|N] found");

  DelsarteDualData D;
  D.k = k;
  D.r = r;
  D.embedding = transpose(cols);
  D.unitColumns = units;
  const Mat Binv = inverse(D.embedding);
  Mat C(mid, 0, k);
  for (std::size_t j = r; j < k; ++j) C.append_row(Binv.row(j));

  std::vector<Vec> dualBasis;
  for (std::size_t i = 0; i < k; ++i) dualBasis.push_back(C.col_vec(i));
  try {
    D.dual = FqSubspace::from_basis(U.tower_ptr(), k - r, std::move(dualBasis));
  } catch (const Error& e) {
    fail(ErrorCode::InternalError, std::string("W meets the orthogonal of Gamma: ") + e.what());
  }

  D.betaGram = Mat::identity(T.base(), k);
  Mat gammaRows(mid, 0, k);
  for (std::size_t j = r; j < k; ++j) {
    Vec e(k);
    e[j] = Fe(1);
    gammaRows.append_row(e);
  }
  D.Gamma = SubspaceBasis::span(gammaRows);
  D.GammaPerp = kernel(multiply(C, transpose(Binv)));
  require(D.GammaPerp.dim() == r, ErrorCode::InternalError, "orthogonal of Gamma has the wrong dimension");

  // <W, Gamma>_{F_q} ∩ V = U and W ∩ Gamma = 0, in flat coordinates of F_{q^n}^k.
  const unsigned n = T.n();
  Mat wFlat(T.base(), 0, k * n), gammaFlat(T.base(), 0, k * n), vFlat(T.base(), 0, k * n);
  for (std::size_t i = 0; i < k; ++i) wFlat.append_row(flatten(T, D.embedding.row(i)));
  for (std::size_t j = r; j < k; ++j)
    for (unsigned a = 0; a < n; ++a) {
      Vec e(k);
      e[j] = mid.pow(mid.generator(), a);
      gammaFlat.append_row(flatten(T, e));
    }
  for (std::size_t c = 0; c < r * n; ++c) {
    Vec e(k * n);
    e[c] = Fe(1);
    vFlat.append_row(e);
  }
  const SubspaceBasis W = SubspaceBasis::span(wFlat), G = SubspaceBasis::span(gammaFlat);
  require(W.dim() == k && intersect(W, G).dim() == 0, ErrorCode::InternalError, "W meets Gamma");
  Mat uPadded(T.base(), 0, k * n);
  for (const auto& u : U.basis()) {
    Vec v(k);
    std::copy(u.begin(), u.end(), v.begin());
    uPadded.append_row(flatten(T, v));
  }
  require(intersect(sum(W, G), SubspaceBasis::span(vFlat)) == SubspaceBasis::span(uPadded), ErrorCode::InternalError,
          "<W, Gamma> does not cut out U on V");
  return D;
}

DoubleDualData delsarte_double_dual(const FqSubspace& U, const ScanOptions& opts) {
  const DelsarteDualData first = delsarte_dual(U, opts);
  const DelsarteDualData second = delsarte_dual(first.dual, opts);
  const Field& mid = U.tower().mid();
  const std::size_t k = U.k(), r = U.r();
  Mat Nsecond(mid, k, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j) Nsecond(i, j) = second.embedding(i, (k - r) + j);
  const Mat M = Mat::from_rows(mid, r, U.basis());
  DoubleDualData out;
  out.doubleDual = second.dual;
  out.isomorphism = inverse(multiply(transpose(Nsecond), M));
  const Mat back = inverse(out.isomorphism);
  out.recoversU = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (second.dual.basis()[i] != row_times(U.basis()[i], out.isomorphism)) out.recoversU = false;
    if (row_times(second.dual.basis()[i], back) != U.basis()[i]) out.recoversU = false;
  }
  return out;
}

}  // namespace ranklab
