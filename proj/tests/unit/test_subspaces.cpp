#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"
#include "ranklab/subspaces.hpp"

using namespace ranklab;

namespace {

Fe gpow(const FieldTower& T, unsigned a) { return T.mid().pow(T.mid().generator(), a); }

FqSubspace random_subspace(const TowerPtr& T, std::size_t r, std::size_t k, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, T->qn() - 1);
  while (true) {
    std::vector<Vec> vs(k, Vec(r));
    for (auto& v : vs)
      for (auto& x : v) x = Fe(pick(rng));
    const FqSubspace U = FqSubspace::from_span(T, r, vs);
    if (U.k() == k) return U;
  }
}

// {(x, x^2, 0)} + <(0, 0, 1)> in F_16^3
FqSubspace heavy_plane_example(const TowerPtr& T) {
  std::vector<Vec> basis;
  for (unsigned a = 0; a < 4; ++a) {
    const Fe x = gpow(*T, a);
    basis.push_back({x, T->mid().mul(x, x), Fe(0)});
  }
  basis.push_back({Fe(0), Fe(0), Fe(1)});
  return FqSubspace::from_basis(T, 3, basis);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("flattening") {
  auto T = make_tower(2, 1, 4, 1);
  const Vec v{gpow(*T, 1), Fe(1)};
  const Vec flat = flatten(*T, v);
  CHECK(flat == Vec{Fe(0), Fe(1), Fe(0), Fe(0), Fe(1), Fe(0), Fe(0), Fe(0)});
  CHECK(unflatten(*T, flat, 2) == v);
  CHECK(code_of([&] { unflatten(*T, flat, 3); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("construction gates") {
  auto T = make_tower(2, 1, 4, 1);
  CHECK(code_of([&] { FqSubspace::from_basis(T, 2, {{Fe(1), Fe(0)}, {Fe(1), Fe(0)}}); }) == ErrorCode::DependentBasis);
  CHECK(code_of([&] { FqSubspace::from_basis(T, 2, {{Fe(1)}}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { FqSubspace::from_basis(T, 2, {{Fe(16), Fe(0)}}); }) == ErrorCode::WrongLevel);
  const FqSubspace U = FqSubspace::from_span(T, 2, {{Fe(1), Fe(0)}, {Fe(1), Fe(0)}, {Fe(0), Fe(3)}});
  CHECK(U.k() == 2);
  CHECK(multiply(U.parity_check(), U.flat_matrix().row_vec(0)) == Vec(6, Fe(0)));
}

TEST_CASE("iota") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  CHECK(iota(pr) == 1);
  CHECK(iota(pr) == oracle::iota(pr));
  const FqSubspace line = FqSubspace::from_fqn_span(T, 2, {{Fe(1), gpow(*T, 3)}});
  CHECK(line.k() == 4);
  CHECK(iota(line) == 4);
  CHECK(iota(FqSubspace::from_basis(T, 2, {})) == 0);
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) {
    const FqSubspace U = random_subspace(T, 2, 1 + rng() % 6, rng);
    CHECK(iota(U) == oracle::iota(U));
  }
  auto T3 = make_tower(3, 1, 2, 1);
  for (int i = 0; i < 20; ++i) {
    const FqSubspace U = random_subspace(T3, 3, 1 + rng() % 5, rng);
    CHECK(iota(U) == oracle::iota(U));
  }
}

TEST_CASE("iota < n iff U contains no full line, exhaustive over F_4^2") {
  auto T = make_tower(2, 1, 2, 1);
  const Field& F = T->mid();
  for (std::size_t d = 0; d <= 4; ++d)
    enumerate_subspaces(T->base(), 4, d, 1u << 20, [&](const Mat& B) {
      const FqSubspace U = FqSubspace::from_flat(T, 2, SubspaceBasis::span(B));
      bool hasLine = false;
      for (std::uint64_t i = 0; i < projective_point_count(F, 2); ++i) {
        const Vec a = projective_point(F, 2, i);
        bool all = true;
        for (std::uint32_t l = 1; l < 4; ++l) all = all && U.contains(Vec{F.mul(Fe(l), a[0]), F.mul(Fe(l), a[1])});
        hasLine = hasLine || all;
      }
      CHECK((iota(U) < 2) == !hasLine);
      return true;
    });
}

TEST_CASE("scatteredness") {
  auto T = make_tower(2, 1, 4, 1);
  CHECK(is_h_scattered(pseudoregulus_subspace(2, 1, T), 1));
  CHECK_FALSE(is_h_scattered(FqSubspace::from_fqn_span(T, 2, {{Fe(1), Fe(1)}}), 1));
  auto T8 = make_tower(2, 1, 3, 1);
  std::vector<Vec> basis;
  for (unsigned a = 0; a < 3; ++a) {
    const Fe x = gpow(*T8, a);
    basis.push_back({x, T8->mid().pow(x, 2), T8->mid().pow(x, 4)});
  }
  const FqSubspace sub = FqSubspace::from_basis(T8, 3, basis);
  CHECK(is_h_scattered(sub, 2));
  CHECK(check_dimension_bound(sub, 2) == DimensionBound::Subgeometry);
  CHECK(code_of([&] { is_h_scattered(sub, 3); }) == ErrorCode::InvalidArgument);

  SUBCASE("direct sums") {
    const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
    const FqSubspace ds = direct_sum(pr, pr);
    CHECK(ds.k() == 8);
    CHECK(ds.r() == 4);
    CHECK(is_h_scattered(ds, 1));
    CHECK(direct_sum(pr, FqSubspace::from_basis(T, 1, {})).k() == 4);
    std::mt19937 rng(2);
    CHECK(direct_sum(pr, random_subspace(T, 1, 3, rng)).k() == 7);
    CHECK(code_of([&] { direct_sum(pr, pseudoregulus_subspace(2, 1, T8)); }) == ErrorCode::TowerMismatch);
  }
  SUBCASE("heavy subspace witnesses") {
    const FqSubspace bad = FqSubspace::from_basis(T, 2, {{Fe(1), Fe(0)}, {gpow(*T, 5), Fe(0)}, {Fe(0), Fe(1)}});
    const auto w = find_heavy_subspace(bad, 1);
    REQUIRE(w.has_value());
    CHECK(weight_in_kernel(bad, *w) > 1);
    CHECK_FALSE(find_heavy_subspace(pseudoregulus_subspace(2, 1, T), 1).has_value());
  }
}

TEST_CASE("dimension bound") {
  auto T = make_tower(2, 1, 4, 1);
  CHECK(check_dimension_bound(pseudoregulus_subspace(2, 1, T), 1) == DimensionBound::WithinBound);
  std::mt19937 rng(9);
  CHECK(check_dimension_bound(random_subspace(T, 2, 5, rng), 1) == DimensionBound::Violation);
  // exhaustive: scattered subspaces of F_4^2 never violate
  auto T4 = make_tower(2, 1, 2, 1);
  for (std::size_t d = 1; d <= 4; ++d)
    enumerate_subspaces(T4->base(), 4, d, 1u << 20, [&](const Mat& B) {
      const FqSubspace U = FqSubspace::from_flat(T4, 2, SubspaceBasis::span(B));
      if (is_h_scattered(U, 1)) CHECK(check_dimension_bound(U, 1) != DimensionBound::Violation);
      return true;
    });
}

TEST_CASE("hyperplane and point weights agree with the oracle") {
  std::mt19937 rng(23);
  auto T = make_tower(2, 1, 3, 1);
  for (int i = 0; i < 15; ++i) {
    const FqSubspace U = random_subspace(T, 3, 2 + rng() % 5, rng);
    const auto counts = hyperplane_weight_counts(U);
    const auto expected = oracle::hyperplane_weights(U);
    CHECK(counts.size() == expected.size());
    for (auto [w, c] : expected) CHECK(counts.at(w) == c);
    std::map<std::size_t, std::uint64_t> pts;
    for (auto [pt, w] : oracle::point_weights(U)) ++pts[w];
    CHECK(point_weight_counts(U) == pts);
    CHECK(max_hyperplane_weight(U) == expected.rbegin()->first);
  }
  const FqSubspace inside = FqSubspace::from_basis(T, 3, {{Fe(1), Fe(0), Fe(0)}, {Fe(2), Fe(0), Fe(0)}, {Fe(0), Fe(1), Fe(0)}});
  CHECK(max_hyperplane_weight(inside) == 3);
}

TEST_CASE("maximum h-scattered hyperplane weights stay in range") {
  struct Case {
    std::size_t r, h;
    unsigned n;
  };
  for (Case c : {Case{2, 1, 4}, Case{3, 2, 3}, Case{4, 1, 4}, Case{3, 2, 6}, Case{4, 3, 4}}) {
    auto T = make_tower(2, 1, c.n, 1);
    const FqSubspace U = pseudoregulus_subspace(c.r, c.h, T);
    const std::size_t low = c.r * c.n / (c.h + 1) - c.n;
    for (auto [w, count] : hyperplane_weight_counts(U)) {
      CHECK(w >= low);
      CHECK(w <= low + c.h);
    }
  }
}

TEST_CASE("ordinary dual") {
  SUBCASE("exhaustive involution over F_4^2") {
    auto T = make_tower(2, 1, 2, 1);
    for (std::size_t d = 0; d <= 4; ++d)
      enumerate_subspaces(T->base(), 4, d, 1u << 20, [&](const Mat& B) {
        const FqSubspace U = FqSubspace::from_flat(T, 2, SubspaceBasis::span(B));
        const FqSubspace D = ordinary_dual(U);
        CHECK(D.k() == 4 - d);
        CHECK(ordinary_dual(D) == U);
        return true;
      });
  }
  SUBCASE("random") {
    std::mt19937 rng(4);
    for (auto [p, e, n] : {std::tuple{2u, 1u, 4u}, {3u, 1u, 3u}, {2u, 2u, 2u}}) {
      auto T = make_tower(p, e, n, 1);
      for (int i = 0; i < 10; ++i) {
        const std::size_t r = 2 + rng() % 2;
        const FqSubspace U = random_subspace(T, r, 1 + rng() % (r * n - 1), rng);
        const FqSubspace D = ordinary_dual(U);
        CHECK(D.k() == r * n - U.k());
        CHECK(ordinary_dual(D) == U);
        // trace form vanishes across
        for (const auto& u : U.basis())
          for (const auto& v : D.basis()) {
            Fe s(0);
            for (std::size_t j = 0; j < r; ++j) s = T->mid().add(s, T->mid().mul(u[j], v[j]));
            CHECK(trace_to_base(*T, s).is_zero());
          }
      }
    }
  }
  SUBCASE("dual of an F_{q^n}-hyperplane is the orthogonal line") {
    auto T = make_tower(2, 1, 3, 1);
    const Field& F = T->mid();
    for (std::uint64_t i = 0; i < projective_point_count(F, 3); i += 5) {
      const Vec a = projective_point(F, 3, i);
      const SubspaceBasis H = kernel(Mat::from_rows(F, 3, {a}));
      std::vector<Vec> rows;
      for (std::size_t j = 0; j < H.dim(); ++j) rows.push_back(H.basis().row_vec(j));
      CHECK(ordinary_dual(FqSubspace::from_fqn_span(T, 3, rows)) == FqSubspace::from_fqn_span(T, 3, {a}));
    }
  }
}

TEST_CASE("dual weight identity") {
  std::mt19937 rng(8);
  auto T = make_tower(2, 1, 3, 1);
  const Field& F = T->mid();
  const FqSubspace full = FqSubspace::from_fqn_span(T, 2, {{Fe(1), Fe(0)}, {Fe(0), Fe(1)}});
  CHECK(dual_weight_identity_check(full, {{Fe(1), Fe(3)}}));
  for (int i = 0; i < 40; ++i) {
    const FqSubspace U = random_subspace(T, 2, 1 + rng() % 5, rng);
    const Vec a = projective_point(F, 2, rng() % projective_point_count(F, 2));
    CHECK(dual_weight_identity_check(U, {a}));
    CHECK(dual_weight_identity_check(U, {{Fe(1), Fe(0)}, {Fe(0), Fe(1)}}));
  }
}

TEST_CASE("Delsarte dual") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  const DelsarteDualData D = delsarte_dual(pr);
  CHECK(D.dual.k() == 4);
  CHECK(D.dual.r() == 2);
  CHECK(is_h_scattered(D.dual, 1));
  CHECK(oracle::iota(D.dual) == 1);
  CHECK(rank(D.embedding) == 4);
  CHECK(D.betaGram == transpose(D.betaGram));
  CHECK(rank(D.betaGram) == 4);
  CHECK(D.Gamma.dim() + D.GammaPerp.dim() == 4);

  const DoubleDualData DD = delsarte_double_dual(pr);
  CHECK(DD.recoversU);
  CHECK(rank(DD.isomorphism) == 2);

  SUBCASE("transfer to (n-h-2)-scattered") {
    auto T5 = make_tower(2, 1, 5, 1);
    const FqSubspace U = pseudoregulus_subspace(2, 1, T5);
    REQUIRE(U.k() == 5);
    const FqSubspace dual = delsarte_dual(U).dual;
    CHECK(dual.r() == 3);
    CHECK(is_h_scattered(dual, 2));
  }
  SUBCASE("precondition") {
    const FqSubspace heavy = FqSubspace::from_basis(T, 2, {{Fe(1), Fe(0)}, {gpow(*T, 1), Fe(0)}, {Fe(0), Fe(1)}});
    CHECK(code_of([&] { delsarte_dual(heavy); }) == ErrorCode::PreconditionHyperplaneWeight);
  }
  SUBCASE("random subspaces satisfying the precondition") {
    std::mt19937 rng(31);
    int tried = 0;
    for (int i = 0; i < 40 && tried < 10; ++i) {
      const FqSubspace U = random_subspace(T, 2, 3 + rng() % 3, rng);
      if (max_hyperplane_weight(U) + 1 >= U.k()) continue;
      ++tried;
      const DelsarteDualData d = delsarte_dual(U);
      CHECK(d.dual.k() == U.k());
      CHECK(d.dual.r() == U.k() - 2);
      CHECK(delsarte_double_dual(U).recoversU);
    }
    CHECK(tried > 0);
  }
}

TEST_CASE("characterizations of maximum h-scattered subspaces") {
  auto T = make_tower(2, 1, 4, 1);
  const Characterization pr = characterize_max_h_scattered(pseudoregulus_subspace(2, 1, T), 1);
  CHECK(pr.viaDefinition);
  CHECK(pr.viaHyperplanes);
  CHECK(pr.viaDualPoints);
  CHECK(pr.hypothesisHolds);

  const FqSubspace bad = FqSubspace::from_basis(T, 2, {{Fe(1), Fe(0)}, {gpow(*T, 5), Fe(0)}, {Fe(0), Fe(1)}, {Fe(0), gpow(*T, 1)}});
  const Characterization b = characterize_max_h_scattered(bad, 1);
  CHECK_FALSE(b.viaDefinition);
  CHECK_FALSE(b.viaHyperplanes);
  CHECK_FALSE(b.viaDualPoints);

  std::mt19937 rng(2024);
  int positives = 0, negatives = 0;
  for (int i = 0; i < 200; ++i) {
    const Characterization c = characterize_max_h_scattered(random_subspace(T, 2, 4, rng), 1);
    CHECK(c.agree());
    (c.viaDefinition ? positives : negatives)++;
  }
  CHECK(positives > 0);
  CHECK(negatives > 0);

  SUBCASE("counterexample for non-maximum subspaces") {
    const FqSubspace U = heavy_plane_example(T);
    CHECK(U.k() == 5);
    CHECK(code_of([&] { characterize_max_h_scattered(U, 1); }) == ErrorCode::DimensionMismatch);
    CHECK(is_h_scattered(U, 1));
    // the inequality with its own k: max weight <= k - n + h = 2
    CHECK(max_hyperplane_weight(U) == 4);
    CHECK(max_hyperplane_weight(U) > U.k() - 4 + 1);
  }
}
