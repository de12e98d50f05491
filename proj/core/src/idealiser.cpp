#include <random>

#include "ranklab/error.hpp"
#include "ranklab/rankcodes.hpp"

namespace ranklab {

namespace {

constexpr std::uint64_t kExactFieldCheckLimit = std::uint64_t(1) << 16;
constexpr int kFieldSamples = 4096;

// Unknown X (s x s, row-major) enters the constraint <product, D> = 0 linearly;
// coeff(i, l) returns the s x s coefficient matrix for basis C_i and dual D_l.
template <class Coeff>
Idealiser solve_idealiser(const RankCode& C, Side side, std::size_t s, Coeff coeff, const ScanOptions& opts,
                          std::uint64_t seed) {
  const Field& f = C.field();
  const RankCode dual = delsarte_dual_code(C);
  Mat system(f, 0, s * s);
  for (std::size_t i = 0; i < C.dim(); ++i)
    for (std::size_t l = 0; l < dual.dim(); ++l) system.append_row(coeff(C.basis()[i], dual.basis()[l]).data);
  const Mat K = kernel_matrix(system);

  Idealiser I;
  I.side = side;
  for (std::size_t i = 0; i < K.rows; ++i) I.basis.push_back(unflatten_matrix(f, s, s, K.row(i)));
  I.dim = I.basis.size();
  I.order = big_pow(f.size(), I.dim);

  // A subalgebra is a field iff its nonzero elements are invertible.
  const RankCode algebra = RankCode::from_basis(C.field_ptr(), s, s, I.basis);
  if (I.order <= kExactFieldCheckLimit) {
    ScanOptions exact = opts;
    exact.budget = kExactFieldCheckLimit;
    const RankDistribution D = rank_distribution(algebra, exact);
    I.isField = D.total() == D.A[s] + 1;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, f.size() - 1);
    I.isField = true;
    I.probabilistic = true;
    for (int t = 0; t < kFieldSamples && I.isField; ++t) {
      Mat Z(f, s, s);
      bool zero = true;
      for (const auto& B : I.basis) {
        const Fe c(coef(rng));
        if (c.is_zero()) continue;
        zero = false;
        Z = add(Z, scale(B, c));
      }
      if (!zero && !Z.is_zero() && rank(Z) < s) I.isField = false;
    }
  }
  return I;
}

}  // namespace

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

Idealiser left_idealiser(const RankCode& C, const ScanOptions& opts, std::uint64_t seed) {
  // <Y C, D> = sum_{a,b} Y_ab (D C^T)_ab
  return solve_idealiser(
      C, Side::Left, C.m(), [](const Mat& B, const Mat& D) { return multiply(D, transpose(B)); }, opts, seed);
}

Idealiser right_idealiser(const RankCode& C, const ScanOptions& opts, std::uint64_t seed) {
  // <C Z, D> = sum_{b,c} Z_bc (C^T D)_bc
  return solve_idealiser(
      C, Side::Right, C.n(), [](const Mat& B, const Mat& D) { return multiply(transpose(B), D); }, opts, seed);
}

bool verify_idealiser(const RankCode& C, const Idealiser& I) {
  for (const auto& X : I.basis)
    for (const auto& B : C.basis()) {
      const Mat P = I.side == Side::Left ? multiply(X, B) : multiply(B, X);
      if (!C.contains(P)) return false;
    }
  return true;
}

}  // namespace ranklab
