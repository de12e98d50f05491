#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"
#include "ranklab/linsets.hpp"

using namespace ranklab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

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

std::map<std::size_t, BigInt> big(const std::map<std::size_t, std::uint64_t>& m) {
  std::map<std::size_t, BigInt> out;
  for (auto [k, v] : m) out[k] = v;
  return out;
}

struct Case {
  std::size_t r, h;
  unsigned n;
};

const Case kCases[] = {{2, 1, 4}, {3, 2, 3}, {4, 1, 4}};

}  // namespace

TEST_CASE("linear sets") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  const LinearSet L = linear_set(pr);
  CHECK(L.rank() == 4);
  CHECK(L.size() == 15);
  CHECK(L.is_scattered_set());
  for (auto& [pt, w] : L.points) CHECK(w == 1);
  const auto expected = oracle::point_weights(pr);
  CHECK(expected.size() == L.size());
  for (auto& [pt, w] : L.points) {
    std::vector<std::uint32_t> c;
    for (Fe x : pt) c.push_back(x.code);
    CHECK(expected.at(c) == w);
  }
  CHECK(point_weight(pr, Vec{Fe(1), Fe(1)}) == 1);
  CHECK(point_weight(pr, Vec{Fe(0), Fe(1)}) == 0);
  CHECK(max_hyperplane_weight(pr) <= pr.k() - 1);

  SUBCASE("point weights partition the nonzero vectors") {
    std::mt19937 rng(3);
    for (int i = 0; i < 25; ++i) {
      auto Tq = i % 2 ? make_tower(2, 1, 3, 1) : make_tower(3, 1, 2, 1);
      const FqSubspace U = random_subspace(Tq, 2 + i % 2, 1 + rng() % 4, rng);
      const LinearSet S = linear_set(U);
      BigInt total = 0;
      for (auto& [pt, w] : S.points) total += big_pow(Tq->q(), w) - 1;
      CHECK(total == big_pow(Tq->q(), U.k()) - 1);
      if (iota(U) == 1) {
        CHECK(S.is_scattered_set());
        CHECK(BigInt(S.size()) == theta(long(U.k()) - 1, Tq->q()));
      }
    }
  }
}

TEST_CASE("hyperplane spectrum matches the formula") {
  for (Case c : kCases) {
    auto T = make_tower(2, 1, c.n, 1);
    const FqSubspace U = pseudoregulus_subspace(c.r, c.h, T);
    const auto spectrum = hyperplane_spectrum(U, c.h);
    CHECK(spectrum.size() == c.h + 1);
    BigInt total = 0;
    for (std::size_t i = 0; i <= c.h; ++i) {
      CHECK(spectrum.at(i) == ti_formula(c.r, c.n, c.h, 2, i));
      CHECK(spectrum.at(i) > 0);
      total += spectrum.at(i);
    }
    CHECK(total == theta(long(c.r) - 1, T->qn()));
    // brute-force oracle over all hyperplanes
    const std::size_t low = c.r * c.n / (c.h + 1) - c.n;
    for (auto [w, count] : oracle::hyperplane_weights(U)) CHECK(spectrum.at(w - low) == count);
  }
  CHECK(hyperplane_spectrum(pseudoregulus_subspace(2, 1, make_tower(2, 1, 4, 1)), 1) ==
        std::map<std::size_t, BigInt>{{0, 2}, {1, 15}});
  CHECK(hyperplane_spectrum(pseudoregulus_subspace(3, 2, make_tower(2, 1, 3, 1)), 2) ==
        std::map<std::size_t, BigInt>{{0, 24}, {1, 42}, {2, 7}});
}

TEST_CASE("hyperplane spectrum gates") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  const FqSubspace U3 = FqSubspace::from_basis(T, 2, std::vector<Vec>(pr.basis().begin(), pr.basis().begin() + 3));
  CHECK(code_of([&] { hyperplane_spectrum(U3, 1); }) == ErrorCode::NotMaxScattered);
  const FqSubspace bad = FqSubspace::from_basis(T, 2, {{Fe(1), Fe(0)}, {Fe(6), Fe(0)}, {Fe(0), Fe(1)}, {Fe(0), Fe(2)}});
  CHECK(code_of([&] { hyperplane_spectrum(bad, 1); }) == ErrorCode::NotMaxScattered);
  CHECK(code_of([&] { hyperplane_spectrum(pr, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("t_i formula") {
  CHECK(ti_formula(2, 4, 1, 2, 0) == 2);
  CHECK(ti_formula(2, 4, 1, 2, 1) == 15);
  const RankDistribution A = mrd_weight_distribution(4, 4, 2, 3);
  CHECK(ti_formula(2, 4, 1, 2, 0) * 15 == A.A[4]);
  CHECK(ti_formula(2, 4, 1, 2, 1) * 15 == A.A[3]);
  CHECK(code_of([] { ti_formula(3, 3, 1, 2, 0); }) == ErrorCode::DivisibilityViolation);
  // sum and positivity over a parameter sweep
  for (std::uint64_t q : {2u, 3u, 4u, 5u})
    for (std::size_t n = 2; n <= 6; ++n)
      for (std::size_t r = 2; r <= 5; ++r)
        for (std::size_t h = 1; h < r && h < n; ++h) {
          if ((r * n) % (h + 1) != 0 || r * n / (h + 1) < n) continue;
          BigInt total = 0;
          for (std::size_t i = 0; i <= h; ++i) {
            const BigInt t = ti_formula(r, n, h, q, i);
            CHECK(t > 0);
            total += t;
          }
          CHECK(total == theta(long(r) - 1, big_pow(q, n).convert_to<std::uint64_t>()));
        }
}

TEST_CASE("t_i equals A_{n-i}/(q^n-1) of the MRD code of the ordinary dual") {
  for (Case c : kCases) {
    auto T = make_tower(2, 1, c.n, 1);
    const FqSubspace U = pseudoregulus_subspace(c.r, c.h, T);
    const CUGCode C = c_ug(ordinary_dual(U));
    CHECK(is_mrd(C.code));
    const RankDistribution A = rank_distribution(C.code);
    const auto spectrum = hyperplane_spectrum(U, c.h);
    for (std::size_t i = 0; i <= c.h; ++i) CHECK(spectrum.at(i) * (T->qn() - 1) == A.A[c.n - i]);
  }
}

TEST_CASE("projective system code") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  const LinearSet L = linear_set(pr);
  const HammingCode C = projective_system_code(L);
  CHECK(C.N == 15);
  CHECK(C.k == 2);
  CHECK(rank(C.generator) == 2);
  for (std::size_t j = 0; j < C.N; ++j) CHECK_FALSE(C.generator.col_vec(j) == Vec(2, Fe(0)));

  const oracle::PolyField P = oracle::PolyField::from_field(T->mid());
  const auto brute = oracle::hamming_weights(P, C.generator);
  CHECK(big(brute) == std::map<std::size_t, BigInt>{{14, 225}, {15, 30}});
  std::uint64_t nonzero = 0;
  for (auto [w, c] : brute) nonzero += c;
  CHECK(nonzero == 255);

  const auto codeword = weight_enumerator(C, EnumeratorConvention::Codeword);
  const auto projective = weight_enumerator(C, EnumeratorConvention::Projective);
  CHECK(codeword == big(brute));
  CHECK(projective == std::map<std::size_t, BigInt>{{14, 15}, {15, 2}});
  CHECK(enumerator_from_hyperplanes(L, EnumeratorConvention::Projective) == projective);
  CHECK(enumerator_from_hyperplanes(L, EnumeratorConvention::Codeword) == codeword);
  CHECK(closed_form_enumerator(2, 4, 1, 2, EnumeratorConvention::Projective) == projective);
  CHECK(closed_form_enumerator(2, 4, 1, 2, EnumeratorConvention::Codeword) == codeword);
  CHECK(hamming_min_distance(C) == 14);
  CHECK(BigInt(hamming_min_distance(C)) == theta(3, 2) - theta(0, 2));

  SUBCASE("contained in a hyperplane") {
    std::vector<Vec> basis;
    for (unsigned a = 0; a < 3; ++a) basis.push_back({T->mid().pow(T->mid().generator(), a), Fe(0)});
    const FqSubspace flat = FqSubspace::from_basis(T, 2, basis);
    CHECK(code_of([&] { projective_system_code(linear_set(flat)); }) == ErrorCode::NotSpanning);
  }
}

TEST_CASE("weight enumerators: brute force against the closed form") {
  for (Case c : kCases) {
    auto T = make_tower(2, 1, c.n, 1);
    const FqSubspace U = pseudoregulus_subspace(c.r, c.h, T);
    const LinearSet L = linear_set(U);
    const HammingCode C = projective_system_code(L);
    CHECK(BigInt(C.N) == theta(long(U.k()) - 1, 2));
    for (auto conv : {EnumeratorConvention::Projective, EnumeratorConvention::Codeword}) {
      const auto closed = closed_form_enumerator(c.r, c.n, c.h, 2, conv);
      CHECK(closed.size() == c.h + 1);
      CHECK(enumerator_from_hyperplanes(L, conv) == closed);
      if (BigInt(C.N) * big_pow(T->qn(), c.r) <= (BigInt(1) << 26)) CHECK(weight_enumerator(C, conv) == closed);
    }
    const std::size_t K = c.r * c.n / (c.h + 1);
    CHECK(BigInt(hamming_min_distance(C)) == theta(long(K) - 1, 2) - theta(long(K - c.n + c.h) - 1, 2));
  }
}

TEST_CASE("q-system code") {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace pr = pseudoregulus_subspace(2, 1, T);
  const HammingCode Q = qsystem_code(pr, 1);
  CHECK(Q.N == 4);
  CHECK(Q.k == 2);
  CHECK(hamming_min_distance(Q) == 3);
  const oracle::PolyField P = oracle::PolyField::from_field(T->mid());
  CHECK(oracle::hamming_weights(P, Q.generator).begin()->first == 3);
  // columns are points of the linear set, i.e. columns of the projective-system code
  const HammingCode C = projective_system_code(linear_set(pr));
  std::set<Vec> cols;
  for (std::size_t j = 0; j < C.N; ++j) cols.insert(C.generator.col_vec(j));
  for (std::size_t j = 0; j < Q.N; ++j) CHECK(cols.count(normalize_projective(T->mid(), Q.generator.col_vec(j))) == 1);

  const FqSubspace U3 = FqSubspace::from_basis(T, 2, std::vector<Vec>(pr.basis().begin(), pr.basis().begin() + 3));
  CHECK(code_of([&] { qsystem_code(U3, 1); }) == ErrorCode::NotMaxScattered);
  CHECK(code_of([&] { qsystem_code(pseudoregulus_subspace(3, 2, make_tower(2, 1, 3, 1)), 2); }) ==
        ErrorCode::HypothesisViolated);
  const HammingCode Q4 = qsystem_code(pseudoregulus_subspace(4, 1, T), 1);
  CHECK(Q4.N == 8);
  CHECK(hamming_min_distance(Q4) == 3);
}

TEST_CASE("convention names") {
  CHECK(std::string(to_string(EnumeratorConvention::Projective)) == "projective");
  CHECK(std::string(to_string(EnumeratorConvention::Codeword)) == "codeword");
}
