#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ranklab/fields.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/parallel.hpp"

namespace ranklab {

// F_q-coordinates of v in F_{q^n}^r: entry i*n + a is the coefficient of g^a in v_i.
Vec flatten(const FieldTower& tower, std::span<const Fe> v);
Vec unflatten(const FieldTower& tower, std::span<const Fe> flat, std::size_t r);

// An F_q-subspace of F_{q^n}^r. basisMid keeps the order it was built with;
// flat is the canonical RREF of the flattened basis and decides equality.
class FqSubspace {
 public:
  FqSubspace() = default;
  // The vectors must be F_q-independent (DependentBasis otherwise).
  static FqSubspace from_basis(TowerPtr tower, std::size_t r, std::vector<Vec> basis);
  // F_q-span of arbitrary vectors; dependent ones are dropped.
  static FqSubspace from_span(TowerPtr tower, std::size_t r, const std::vector<Vec>& vectors);
  static FqSubspace from_flat(TowerPtr tower, std::size_t r, const SubspaceBasis& flat);
  // F_q-span of an F_{q^n}-subspace given by spanning rows over F_{q^n}.
  static FqSubspace from_fqn_span(TowerPtr tower, std::size_t r, const std::vector<Vec>& rows);

  const TowerPtr& tower_ptr() const { return tower_; }
  const FieldTower& tower() const { return *tower_; }
  std::size_t r() const { return r_; }
  std::size_t k() const { return basis_.size(); }
  std::size_t n() const { return tower_->n(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const SubspaceBasis& flat() const { return flat_; }
  // k x rn matrix of flattened basis vectors, in basis order.
  Mat flat_matrix() const;
  // (rn-k) x rn matrix over F_q whose kernel is the flattening of U.
  const Mat& parity_check() const { return parity_; }
  bool contains(std::span<const Fe> v) const;
  // dim over F_{q^n} of the span of U equals r.
  bool spans() const;

  friend bool operator==(const FqSubspace& a, const FqSubspace& b) {
    return a.tower_->same_as(*b.tower_) && a.r_ == b.r_ && a.flat_ == b.flat_;
  }

 private:
  TowerPtr tower_;
  std::size_t r_ = 0;
  std::vector<Vec> basis_;
  SubspaceBasis flat_;
  Mat parity_;
};

// dim_{F_q}(U ∩ ker A) for A with rows over F_{q^n}.
std::size_t weight_in_kernel(const FqSubspace& U, const Mat& annihilator);
// dim_{F_q}(U ∩ <v>_{F_{q^n}}).
std::size_t point_weight(const FqSubspace& U, std::span<const Fe> v);
// dim_{F_q}(U ∩ H) for the hyperplane H = {x : sum a_i x_i = 0}.
std::size_t hyperplane_weight(const FqSubspace& U, std::span<const Fe> a);

std::size_t iota(const FqSubspace& U, const ScanOptions& opts = {});
bool is_h_scattered(const FqSubspace& U, std::size_t h, const ScanOptions& opts = {});
// Witness h-dimensional F_{q^n}-subspace (as annihilator rows) of weight > h, if any.
std::optional<Mat> find_heavy_subspace(const FqSubspace& U, std::size_t h, const ScanOptions& opts = {});

enum class DimensionBound { Subgeometry, WithinBound, Violation };
const char* to_string(DimensionBound b);
DimensionBound check_dimension_bound(const FqSubspace& U, std::size_t h);

std::size_t max_hyperplane_weight(const FqSubspace& U, const ScanOptions& opts = {});
// Number of hyperplanes of each weight.
std::map<std::size_t, std::uint64_t> hyperplane_weight_counts(const FqSubspace& U, const ScanOptions& opts = {});
// Number of points <v> of PG(r-1, q^n) of each positive weight.
std::map<std::size_t, std::uint64_t> point_weight_counts(const FqSubspace& U, const ScanOptions& opts = {});

// Gram matrix Tr(g^a g^b) of the trace form on F_{q^n} over F_q.
Mat trace_gram(const FieldTower& tower);
// Complement under Tr_{q^n/q}(sum u_i v_i).
FqSubspace ordinary_dual(const FqSubspace& U);
// dim(U^⊥' ∩ W^⊥') - dim(U ∩ W) == rn - dim U - s n for the F_{q^n}-subspace W
// spanned by the given rows (s = its F_{q^n}-dimension).
bool dual_weight_identity_check(const FqSubspace& U, const std::vector<Vec>& Wrows);

struct DelsarteDualData {
  std::size_t k = 0;
  std::size_t r = 0;
  Mat embedding;              // k x k over F_{q^n}, rows (u_i, n_i)
  std::vector<std::size_t> unitColumns;  // unit vector chosen for each column of N
  Mat betaGram;               // k x k over F_q
  SubspaceBasis Gamma;        // over F_{q^n}, ambient k
  SubspaceBasis GammaPerp;    // over F_{q^n}, ambient k
  FqSubspace dual;            // in F_{q^n}^{k-r}
};

DelsarteDualData delsarte_dual(const FqSubspace& U, const ScanOptions& opts = {});

struct DoubleDualData {
  FqSubspace doubleDual;      // in F_{q^n}^r
  Mat isomorphism;            // r x r over F_{q^n}: basis vector i of the double dual is u_i * isomorphism
  bool recoversU = false;     // (double dual) * isomorphism^{-1} == U basis-wise
};

DoubleDualData delsarte_double_dual(const FqSubspace& U, const ScanOptions& opts = {});

struct Characterization {
  bool viaDefinition = false;
  bool viaHyperplanes = false;
  bool viaDualPoints = false;
  bool hypothesisHolds = false;  // n >= h + 3
  bool agree() const { return viaDefinition == viaHyperplanes && viaHyperplanes == viaDualPoints; }
};

Characterization characterize_max_h_scattered(const FqSubspace& U, std::size_t h, const ScanOptions& opts = {});

FqSubspace direct_sum(const FqSubspace& a, const FqSubspace& b);

}  // namespace ranklab
