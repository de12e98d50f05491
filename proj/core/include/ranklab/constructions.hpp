#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "ranklab/fields.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/rankcodes.hpp"
#include "ranklab/subspaces.hpp"

namespace ranklab {

// x -> sum_i a_i x^{q^i} on one level of the tower (N = its degree over F_q).
class LinearizedPoly {
 public:
  LinearizedPoly(TowerPtr tower, Level level, std::vector<Fe> coeffs);

  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  Level level() const { return level_; }
  unsigned degree() const { return N_; }
  const std::vector<Fe>& coeffs() const { return coeffs_; }
  Fe evaluate(Fe x) const;
  // N x N over F_q; column j holds the coordinates of f(q^j-th basis element).
  Mat matrix() const;
  LinearizedPoly scaled(Fe a) const;

 private:
  TowerPtr tower_;
  Level level_;
  unsigned N_;
  std::vector<Fe> coeffs_;
};

// Matrix over F_q of an F_q-linear map on the level with N = degree over F_q.
template <class Map>
Mat map_matrix(const FieldTower& tower, Level level, Map f) {
  const unsigned N = tower.degree_over_base(level);
  Mat M(tower.base(), N, N);
  Vec coords(N);
  std::uint32_t basis = 1;
  for (unsigned j = 0; j < N; ++j, basis *= tower.q()) {
    to_base_coords(tower, f(Fe(basis)), coords);
    for (unsigned i = 0; i < N; ++i) M(i, j) = coords[i];
  }
  return M;
}

// Level of the tower whose degree over F_q is N (mid preferred).
Level level_of_degree(const FieldTower& tower, unsigned N);

RankCode gabidulin(unsigned N, unsigned k, unsigned s, const TowerPtr& tower);

struct TwistedGabidulin {
  RankCode code;
  bool untwisted = false;  // eta = 0
};
// Norm condition eta^{(q^N-1)/(q-1)} != (-1)^{Nk}.
bool twisted_eta_admissible(const FieldTower& tower, unsigned N, unsigned k, Fe eta);
TwistedGabidulin twisted_gabidulin(unsigned N, unsigned k, unsigned s, Fe eta, unsigned c, const TowerPtr& tower);

struct CUGCode {
  FqSubspace U;
  Mat G;  // (rn-k) x rn over F_q, kernel = flat(U)
  std::size_t iota = 0;
  RankCode code;  // (rn-k) x n, basis Gamma_b for b = g^a e_i in order i*n + a
};

// Projection along U onto the coordinates outside the pivots of its RREF.
Mat canonical_projection(const FqSubspace& U);
CUGCode c_ug(const FqSubspace& U, const ScanOptions& opts = {});
CUGCode c_ug(const FqSubspace& U, const Mat& G, const ScanOptions& opts = {});
bool c_ug_mrd_predicate(const FqSubspace& U, const ScanOptions& opts = {});
// Rank distribution of C_{U,G} from point weights: A_{n-s} = (q^n-1) #{points of weight s}.
RankDistribution c_ug_distribution_from_points(const FqSubspace& U, const ScanOptions& opts = {});
// Closed form of A_{n-s}, s = 0..iota, for an MRD C_{U,G} in F_{q^n}^r.
RankDistribution c_ug_mrd_distribution(std::size_t r, std::size_t n, std::size_t iota, std::uint32_t q);

struct GIndependence {
  Mat L;  // (rn-k) x (rn-k), L G1 = G2
  bool verified = false;
};
GIndependence c_ug_g_independence(const FqSubspace& U, const Mat& G1, const Mat& G2);

struct SheekeyCode {
  RankCode code;
  bool degenerate = false;  // dimension below r n
};
SheekeyCode sheekey_code(const std::vector<LinearizedPoly>& fs);
// {(f_1(x), ..., f_r(x)) : x in F_{q^n}}.
FqSubspace subspace_of_polys(const std::vector<LinearizedPoly>& fs);

struct ConverseResult {
  FqSubspace U;
  RankCode conjugated;  // C' = C H with R(C') the multiplication field
  Mat H;                // n x n over F_q
  Mat G;                // t x rn, G(v) = sum_j f_j(v_j)
  std::vector<Mat> fnBasis;  // F_n-basis f_1 .. f_r of C'
  std::size_t iota = 0;
  bool roundTrip = false;  // C_{U,G} == C' as sets
};
// tower must have the code's q and n.
ConverseResult mrd_to_subspace(const RankCode& C, const TowerPtr& tower, const ScanOptions& opts = {});

struct GabidulinRestriction {
  RankCode code;       // nt x n
  FqSubspace U;        // maps vanishing at 1, in F_{q^n}^{t(iota+1)}
  FqSubspace Udual;
  FqSubspace expectedDual;  // (y_i, y_i^{q^{n-1}}, ..., y_i^{q^{n-iota}}) blocks
  bool dualMatches = false;
};
// tower = (p, e, n, t).
GabidulinRestriction gabidulin_restriction(unsigned iota, const TowerPtr& tower);

FqSubspace pseudoregulus_subspace(std::size_t r, std::size_t h, const TowerPtr& tower);

struct SearchOptions {
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeBudget{10000};
  std::uint64_t maxIterations = 0;  // 0 = unbounded
  ScanOptions scan;
};

struct SearchResult {
  std::optional<FqSubspace> witness;
  std::uint64_t iterations = 0;
  std::uint64_t restarts = 0;
  double seconds = 0;
};

SearchResult random_scattered_search(std::size_t r, std::size_t h, std::size_t k, const TowerPtr& tower,
                                     const SearchOptions& opts);

}  // namespace ranklab
