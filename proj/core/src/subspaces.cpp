#include "ranklab/subspaces.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

Fe g_power(const FieldTower& tower, unsigned a) { return tower.mid().pow(tower.mid().generator(), a); }

void require_budget(const BigInt& count, std::uint64_t budget, const char* what) {
  require(count <= budget, ErrorCode::BudgetExceeded,
          std::string(what) + ": " + count.str() + " subspaces exceed the budget of " + std::to_string(budget));
}

// Smallest index in [0, total) with pred true, scanning in parallel.
template <class Pred>
std::optional<std::uint64_t> first_index(std::uint64_t total, unsigned threads, Pred pred) {
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  parallel_chunks(total, threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      if (i > best.load(std::memory_order_relaxed)) return true;
      if (pred(i)) {
        std::uint64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return true;
      }
    }
    return true;
  });
  if (best.load() == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best.load();
}

}  // namespace

Vec flatten(const FieldTower& tower, std::span<const Fe> v) {
  const unsigned n = tower.n();
  Vec out(v.size() * n);
  for (std::size_t i = 0; i < v.size(); ++i)
    to_base_coords(tower, v[i], std::span<Fe>(out.data() + i * n, n));
  return out;
}

Vec unflatten(const FieldTower& tower, std::span<const Fe> flat, std::size_t r) {
  const unsigned n = tower.n();
  require(flat.size() == r * n, ErrorCode::DimensionMismatch, "flat vector length is not r*n");
  Vec out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = from_base_coords(tower, flat.subspan(i * n, n));
  return out;
}

FqSubspace FqSubspace::from_basis(TowerPtr tower, std::size_t r, std::vector<Vec> basis) {
  require(tower != nullptr, ErrorCode::InvalidArgument, "subspace without a tower");
  FqSubspace U;
  U.tower_ = std::move(tower);
  U.r_ = r;
  const FieldTower& T = *U.tower_;
  Mat flat(T.base(), 0, r * T.n());
  for (const auto& v : basis) {
    require(v.size() == r, ErrorCode::DimensionMismatch, "basis vector length differs from r");
    for (Fe x : v) require(T.mid().contains(x), ErrorCode::WrongLevel, "basis entry outside F_{q^n}");
    flat.append_row(flatten(T, v));
  }
  U.flat_ = SubspaceBasis::span(flat);
  require(U.flat_.dim() == basis.size(), ErrorCode::DependentBasis, "basis vectors are F_q-dependent");
  U.basis_ = std::move(basis);
  U.parity_ = U.flat_.dim() == 0 ? Mat::identity(T.base(), r * T.n()) : kernel_matrix(U.flat_.basis());
  return U;
}

FqSubspace FqSubspace::from_span(TowerPtr tower, std::size_t r, const std::vector<Vec>& vectors) {
  const FieldTower& T = *tower;
  std::vector<Vec> kept;
  Mat flat(T.base(), 0, r * T.n());
  std::size_t currentRank = 0;
  for (const auto& v : vectors) {
    require(v.size() == r, ErrorCode::DimensionMismatch, "vector length differs from r");
    Mat trial = flat;
    trial.append_row(flatten(T, v));
    const std::size_t rk = rank(trial);
    if (rk > currentRank) {
      flat = std::move(trial);
      currentRank = rk;
      kept.push_back(v);
    }
  }
  return from_basis(std::move(tower), r, std::move(kept));
}

FqSubspace FqSubspace::from_flat(TowerPtr tower, std::size_t r, const SubspaceBasis& flat) {
  const FieldTower& T = *tower;
  require(flat.ambient() == r * T.n(), ErrorCode::AmbientMismatch, "flat subspace has the wrong ambient");
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < flat.dim(); ++i) basis.push_back(unflatten(T, flat.basis().row(i), r));
  return from_basis(std::move(tower), r, std::move(basis));
}

FqSubspace FqSubspace::from_fqn_span(TowerPtr tower, std::size_t r, const std::vector<Vec>& rows) {
  const FieldTower& T = *tower;
  const Mat red = SubspaceBasis::span(Mat::from_rows(T.mid(), r, rows)).basis();
  std::vector<Vec> vectors;
  for (std::size_t i = 0; i < red.rows; ++i)
    for (unsigned a = 0; a < T.n(); ++a) {
      Vec v = red.row_vec(i);
      const Fe ga = g_power(T, a);
      for (auto& x : v) x = T.mid().mul(x, ga);
      vectors.push_back(std::move(v));
    }
  return from_basis(std::move(tower), r, std::move(vectors));
}

Mat FqSubspace::flat_matrix() const {
  Mat m(tower_->base(), 0, r_ * tower_->n());
  for (const auto& v : basis_) m.append_row(flatten(*tower_, v));
  return m;
}

bool FqSubspace::contains(std::span<const Fe> v) const { return flat_.contains(flatten(*tower_, v)); }

bool FqSubspace::spans() const {
  if (basis_.empty()) return r_ == 0;
  return rank(Mat::from_rows(tower_->mid(), r_, basis_)) == r_;
}

std::size_t weight_in_kernel(const FqSubspace& U, const Mat& A) {
  const FieldTower& T = U.tower();
  require(A.cols == U.r(), ErrorCode::DimensionMismatch, "annihilator width differs from r");
  if (U.k() == 0) return 0;
  Mat images(T.base(), 0, A.rows * T.n());
  for (const auto& u : U.basis()) images.append_row(flatten(T, multiply(A, u)));
  return U.k() - rank(images);
}

std::size_t point_weight(const FqSubspace& U, std::span<const Fe> v) {
  const FieldTower& T = U.tower();
  require(v.size() == U.r(), ErrorCode::DimensionMismatch, "point length differs from r");
  require(std::any_of(v.begin(), v.end(), [](Fe x) { return !x.is_zero(); }), ErrorCode::InvalidArgument,
          "the zero vector spans no point");
  const Mat& P = U.parity_check();
  if (P.rows == 0) return T.n();
  Mat cols(T.base(), T.n(), P.rows);
  for (unsigned a = 0; a < T.n(); ++a) {
    Vec w(v.begin(), v.end());
    const Fe ga = g_power(T, a);
    for (auto& x : w) x = T.mid().mul(x, ga);
    const Vec image = multiply(P, flatten(T, w));
    std::copy(image.begin(), image.end(), cols.row(a).begin());
  }
  return T.n() - rank(cols);
}

std::size_t hyperplane_weight(const FqSubspace& U, std::span<const Fe> a) {
  Mat A(U.tower().mid(), 0, U.r());
  A.append_row(a);
  return weight_in_kernel(U, A);
}

std::size_t iota(const FqSubspace& U, const ScanOptions& opts) {
  const Field& mid = U.tower().mid();
  if (U.k() == 0) return 0;
  require_budget(theta(static_cast<long>(U.r()) - 1, mid.size()), opts.subspaceBudget, "iota");
  const std::uint64_t total = projective_point_count(mid, U.r());
  const std::size_t cap = std::min<std::size_t>(U.k(), U.tower().n());
  std::atomic<std::size_t> best{0};
  parallel_chunks(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      if (best.load(std::memory_order_relaxed) == cap) return false;
      const std::size_t w = point_weight(U, projective_point(mid, U.r(), i));
      std::size_t cur = best.load();
      while (w > cur && !best.compare_exchange_weak(cur, w)) {
      }
    }
    return true;
  });
  return best.load();
}

std::optional<Mat> find_heavy_subspace(const FqSubspace& U, std::size_t h, const ScanOptions& opts) {
  const std::size_t r = U.r();
  require(h >= 1 && h + 1 <= r, ErrorCode::InvalidArgument, "h must satisfy 1 <= h <= r-1");
  const Field& mid = U.tower().mid();
  require_budget(qbinom(static_cast<long>(r), static_cast<long>(h), mid.size()), opts.subspaceBudget,
                 "h-subspace scan");
  if (h == 1 || h + 1 == r) {
    const std::uint64_t total = projective_point_count(mid, r);
    const bool lines = h == 1;
    auto heavy = [&](std::uint64_t i) {
      const Vec v = projective_point(mid, r, i);
      return (lines ? point_weight(U, v) : hyperplane_weight(U, v)) > h;
    };
    const auto hit = first_index(total, opts.threads, heavy);
    if (!hit) return std::nullopt;
    const Vec v = projective_point(mid, r, *hit);
    if (!lines) return Mat::from_rows(mid, r, {v});
    // annihilator of the line <v>
    return kernel_matrix(Mat::from_rows(mid, r, {v}));
  }
  std::optional<Mat> witness;
  enumerate_subspaces(mid, r, r - h, opts.subspaceBudget, [&](const Mat& A) {
    if (weight_in_kernel(U, A) > h) {
      witness = A;
      return false;
    }
    return true;
  });
  return witness;
}

bool is_h_scattered(const FqSubspace& U, std::size_t h, const ScanOptions& opts) {
  require(h >= 1 && h + 1 <= U.r(), ErrorCode::InvalidArgument, "h must satisfy 1 <= h <= r-1");
  if (!U.spans()) return false;
  return !find_heavy_subspace(U, h, opts).has_value();
}

const char* to_string(DimensionBound b) {
  switch (b) {
    case DimensionBound::Subgeometry: return "subgeometry";
    case DimensionBound::WithinBound: return "within-bound";
    case DimensionBound::Violation: return "violation";
  }
  return "?";
}

DimensionBound check_dimension_bound(const FqSubspace& U, std::size_t h) {
  if (U.k() == U.r()) return DimensionBound::Subgeometry;
  if ((h + 1) * U.k() <= U.r() * U.n()) return DimensionBound::WithinBound;
  return DimensionBound::Violation;
}

std::map<std::size_t, std::uint64_t> hyperplane_weight_counts(const FqSubspace& U, const ScanOptions& opts) {
  const Field& mid = U.tower().mid();
  require_budget(theta(static_cast<long>(U.r()) - 1, mid.size()), opts.subspaceBudget, "hyperplane scan");
  std::map<std::size_t, std::uint64_t> counts;
  std::mutex m;
  parallel_chunks(projective_point_count(mid, U.r()), opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::map<std::size_t, std::uint64_t> local;
    for (std::uint64_t i = begin; i < end; ++i) ++local[hyperplane_weight(U, projective_point(mid, U.r(), i))];
    std::lock_guard<std::mutex> lock(m);
    for (auto [w, c] : local) counts[w] += c;
    return true;
  });
  return counts;
}

std::map<std::size_t, std::uint64_t> point_weight_counts(const FqSubspace& U, const ScanOptions& opts) {
  const Field& mid = U.tower().mid();
  require_budget(theta(static_cast<long>(U.r()) - 1, mid.size()), opts.subspaceBudget, "point scan");
  std::map<std::size_t, std::uint64_t> counts;
  std::mutex m;
  parallel_chunks(projective_point_count(mid, U.r()), opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::map<std::size_t, std::uint64_t> local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::size_t w = point_weight(U, projective_point(mid, U.r(), i));
      if (w > 0) ++local[w];
    }
    std::lock_guard<std::mutex> lock(m);
    for (auto [w, c] : local) counts[w] += c;
    return true;
  });
  return counts;
}

std::size_t max_hyperplane_weight(const FqSubspace& U, const ScanOptions& opts) {
  const auto counts = hyperplane_weight_counts(U, opts);
  return counts.empty() ? 0 : counts.rbegin()->first;
}

Mat trace_gram(const FieldTower& tower) {
  const unsigned n = tower.n();
  Mat T(tower.base(), n, n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      T(a, b) = trace_to_base(tower, tower.mid().mul(g_power(tower, a), g_power(tower, b)));
  return T;
}

FqSubspace ordinary_dual(const FqSubspace& U) {
  const FieldTower& T = U.tower();
  const unsigned n = T.n();
  const std::size_t rn = U.r() * n;
  if (U.k() == 0) return FqSubspace::from_flat(U.tower_ptr(), U.r(), SubspaceBasis::full(T.base(), rn));
  const Mat gram = trace_gram(T);
  Mat big(T.base(), rn, rn);
  for (std::size_t i = 0; i < U.r(); ++i)
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b) big(i * n + a, i * n + b) = gram(a, b);
  return FqSubspace::from_flat(U.tower_ptr(), U.r(), kernel(multiply(U.flat_matrix(), big)));
}

bool dual_weight_identity_check(const FqSubspace& U, const std::vector<Vec>& Wrows) {
  const FieldTower& T = U.tower();
  const FqSubspace W = FqSubspace::from_fqn_span(U.tower_ptr(), U.r(), Wrows);
  const long s = static_cast<long>(W.k() / T.n());
  const FqSubspace Uperp = ordinary_dual(U);
  const FqSubspace Wperp = ordinary_dual(W);
  const long lhs = static_cast<long>(intersect(Uperp.flat(), Wperp.flat()).dim()) -
                   static_cast<long>(intersect(U.flat(), W.flat()).dim());
  const long rn = static_cast<long>(U.r() * T.n());
  return lhs == rn - static_cast<long>(U.k()) - s * static_cast<long>(T.n());
}

Characterization characterize_max_h_scattered(const FqSubspace& U, std::size_t h, const ScanOptions& opts) {
  const std::size_t rn = U.r() * U.n();
  require(rn % (h + 1) == 0 && U.k() == rn / (h + 1), ErrorCode::DimensionMismatch,
          "k = " + std::to_string(U.k()) + " is not rn/(h+1)");
  Characterization c;
  c.hypothesisHolds = U.n() >= h + 3;
  c.viaDefinition = is_h_scattered(U, h, opts);
  c.viaHyperplanes = max_hyperplane_weight(U, opts) + U.n() <= rn / (h + 1) + h;
  c.viaDualPoints = iota(ordinary_dual(U), opts) <= h;
  return c;
}

FqSubspace direct_sum(const FqSubspace& a, const FqSubspace& b) {
  require(a.tower().same_as(b.tower()), ErrorCode::TowerMismatch, "direct sum of subspaces over different towers");
  const std::size_t r = a.r() + b.r();
  std::vector<Vec> basis;
  for (const auto& u : a.basis()) {
    Vec v(r);
    std::copy(u.begin(), u.end(), v.begin());
    basis.push_back(std::move(v));
  }
  for (const auto& u : b.basis()) {
    Vec v(r);
    std::copy(u.begin(), u.end(), v.begin() + static_cast<std::ptrdiff_t>(a.r()));
    basis.push_back(std::move(v));
  }
  return FqSubspace::from_basis(a.tower_ptr(), r, std::move(basis));
}

}  // namespace ranklab
