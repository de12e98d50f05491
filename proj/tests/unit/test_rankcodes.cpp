#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"
#include "ranklab/rankcodes.hpp"

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

RankCode random_code(std::shared_ptr<const Field> F, std::size_t m, std::size_t n, std::size_t K, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, F->size() - 1);
  while (true) {
    std::vector<Mat> ms;
    for (std::size_t i = 0; i < K; ++i) {
      Mat M(*F, m, n);
      for (auto& x : M.data) x = Fe(pick(rng));
      ms.push_back(M);
    }
    RankCode C = RankCode::from_span(F, m, n, ms);
    if (C.dim() == K) return C;
  }
}

Mat random_full_rank(const Field& F, std::size_t rows, std::size_t cols, std::mt19937& rng) {
  while (true) {
    Mat A(F, rows, cols);
    for (auto& x : A.data) x = Fe(rng() % F.size());
    if (rank(A) == rows) return A;
  }
}

std::vector<std::uint64_t> as_u64(const RankDistribution& D) {
  std::vector<std::uint64_t> out;
  for (const auto& a : D.A) out.push_back(static_cast<std::uint64_t>(a));
  return out;
}

SubspaceBasis span_of(const std::vector<Mat>& ms, const Field& F, std::size_t len) {
  Mat rows(F, 0, len);
  for (const auto& M : ms) rows.append_row(flatten_matrix(M));
  return SubspaceBasis::span(rows);
}

std::vector<Mat> transposed(const std::vector<Mat>& ms) {
  std::vector<Mat> out;
  for (const auto& M : ms) out.push_back(transpose(M));
  return out;
}

}  // namespace

TEST_CASE("rank distributions agree with brute force") {
  auto T = make_tower(2, 1, 4, 1);
  SUBCASE("Gabidulin(4,2,1) over F_2") {
    const RankCode G = gabidulin(4, 2, 1, T);
    CHECK(G.dim() == 8);
    const RankDistribution D = rank_distribution(G);
    CHECK(as_u64(D) == std::vector<std::uint64_t>{1, 0, 0, 225, 30});
    CHECK(as_u64(D) == oracle::rank_distribution(G));
    CHECK(D.min_distance() == 3);
    CHECK(min_distance(G) == 3);
    CHECK(is_mrd(G));
    CHECK(D == mrd_weight_distribution(4, 4, 2, 3));
  }
  SUBCASE("full 2x2 space over F_2") {
    const RankCode C = RankCode::full_space(T->base_ptr(), 2, 2);
    CHECK(as_u64(rank_distribution(C)) == std::vector<std::uint64_t>{1, 9, 6});
    CHECK(min_distance(C) == 1);
    CHECK(is_mrd(C));
  }
  SUBCASE("zero code") {
    const RankCode Z = RankCode::from_basis(T->base_ptr(), 3, 2, {});
    CHECK(as_u64(rank_distribution(Z)) == std::vector<std::uint64_t>{1, 0, 0});
    CHECK(code_of([&] { min_distance(Z); }) == ErrorCode::EmptyCode);
  }
  SUBCASE("span of one invertible matrix") {
    auto T3 = make_tower(3, 1, 1, 1);
    Mat M = Mat::identity(T3->base(), 3);
    M(0, 2) = Fe(2);
    CHECK(min_distance(RankCode::from_basis(T3->base_ptr(), 3, 3, {M})) == 3);
  }
  SUBCASE("random codes over F_2, F_3 and F_4") {
    std::mt19937 rng(12);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
      auto Tq = make_tower(p, e, 1, 1);
      for (int i = 0; i < 8; ++i) {
        const std::size_t m = 2 + rng() % 2, n = 2 + rng() % 2;
        const RankCode C = random_code(Tq->base_ptr(), m, n, 1 + rng() % (p == 2 && e == 1 ? 6 : 3), rng);
        const RankDistribution D = rank_distribution(C);
        if (e == 1) CHECK(as_u64(D) == oracle::rank_distribution(C));
        CHECK(D.total() == big_pow(C.q(), C.dim()));
        CHECK(D.A[0] == 1);
        for (std::size_t i = 1; i < D.min_distance(); ++i) CHECK(D.A[i] == 0);
        CHECK(macwilliams_check(C));
      }
    }
  }
  SUBCASE("a random 2-dim subcode of F_2^{3x3} is not MRD") {
    std::mt19937 rng(5);
    const RankCode C = random_code(T->base_ptr(), 3, 3, 2, rng);
    CHECK_FALSE(is_mrd(C));
  }
  SUBCASE("threads do not change the result") {
    const RankCode G = gabidulin(4, 3, 1, T);
    ScanOptions one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(rank_distribution(G, one) == rank_distribution(G, four));
  }
  SUBCASE("budget") {
    ScanOptions tiny;
    tiny.budget = 100;
    CHECK(code_of([&] { rank_distribution(gabidulin(4, 2, 1, T), tiny); }) == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("MRD weight distribution closed form") {
  CHECK(as_u64(mrd_weight_distribution(4, 4, 2, 3)) == std::vector<std::uint64_t>{1, 0, 0, 225, 30});
  CHECK(as_u64(mrd_weight_distribution(4, 4, 2, 4)) == std::vector<std::uint64_t>{1, 0, 0, 0, 15});
  CHECK(as_u64(mrd_weight_distribution(4, 4, 2, 5)) == std::vector<std::uint64_t>{1, 0, 0, 0, 0});
  CHECK(code_of([] { mrd_weight_distribution(4, 4, 2, 6); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { mrd_weight_distribution(4, 4, 1, 2); }) == ErrorCode::InvalidParams);
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t d = 1; d <= std::min(m, n); ++d) {
          const RankDistribution D = mrd_weight_distribution(m, n, q, d);
          CHECK(D.total() == big_pow(q, std::max(m, n) * (std::min(m, n) - d + 1)));
          CHECK(D.min_distance() == d);
          // every weight from d to min(m,n) occurs
          for (std::size_t i = d; i <= std::min(m, n); ++i) CHECK(D.A[i] > 0);
          CHECK(dual_relations_check(D));
        }
}

TEST_CASE("adjoint and Delsarte dual") {
  auto T = make_tower(2, 1, 4, 1);
  const RankCode G = gabidulin(4, 2, 1, T);
  const RankCode At = adjoint(G);
  CHECK(adjoint(At).same_code(G));
  CHECK(min_distance(At) == 3);
  CHECK(is_mrd(At));
  const RankCode D = delsarte_dual_code(G);
  CHECK(D.dim() == 8);
  CHECK(min_distance(D) == 3);
  CHECK(is_mrd(D));
  CHECK(delsarte_dual_code(D).same_code(G));
  const RankCode Z = RankCode::from_basis(T->base_ptr(), 2, 3, {});
  CHECK(delsarte_dual_code(Z).same_code(RankCode::full_space(T->base_ptr(), 2, 3)));
  // Tr(M N^t) vanishes across
  for (const auto& M : G.basis())
    for (const auto& N : D.basis()) {
      Fe s(0);
      for (std::size_t i = 0; i < M.data.size(); ++i) s = T->base().add(s, T->base().mul(M.data[i], N.data[i]));
      CHECK(s.is_zero());
    }
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    const RankCode C = random_code(T->base_ptr(), 2 + rng() % 3, 2 + rng() % 2, 1 + rng() % 4, rng);
    CHECK(delsarte_dual_code(C).dim() == C.m() * C.n() - C.dim());
    CHECK(delsarte_dual_code(delsarte_dual_code(C)).same_code(C));
    CHECK(adjoint(adjoint(C)).same_code(C));
  }
}

TEST_CASE("MacWilliams identities") {
  auto T = make_tower(2, 1, 4, 1);
  CHECK(macwilliams_check(gabidulin(4, 2, 1, T)));
  CHECK(macwilliams_check(RankCode::full_space(T->base_ptr(), 2, 3)));
  CHECK(macwilliams_check(RankCode::from_basis(T->base_ptr(), 2, 3, {})));
  CHECK(macwilliams_check(c_ug(pseudoregulus_subspace(2, 1, T)).code));
  std::mt19937 rng(44);
  for (int i = 0; i < 20; ++i) CHECK(macwilliams_check(random_code(T->base_ptr(), 3, 3, 1 + rng() % 8, rng)));
  // a perturbed distribution must fail
  const RankCode G = gabidulin(4, 2, 1, T);
  RankDistribution A = rank_distribution(G), B = rank_distribution(delsarte_dual_code(G));
  CHECK(macwilliams_check(A, B));
  B.A[3] += 1;
  B.A[4] -= 1;
  CHECK_FALSE(macwilliams_check(A, B));
}

TEST_CASE("dual relations") {
  auto T = make_tower(2, 1, 4, 1);
  CHECK(dual_relations_check(gabidulin(4, 2, 1, T)));
  CHECK(dual_relations_check(c_ug(pseudoregulus_subspace(2, 1, T)).code));
  std::mt19937 rng(1);
  CHECK(code_of([&] { dual_relations_check(random_code(T->base_ptr(), 3, 3, 2, rng)); }) == ErrorCode::NotMRD);
  RankDistribution A = rank_distribution(gabidulin(4, 2, 1, T));
  A.A[3] -= 1;
  A.A[4] += 1;
  CHECK_FALSE(dual_relations_check(A));
}

TEST_CASE("idealisers") {
  auto T = make_tower(2, 1, 4, 1);
  SUBCASE("full space") {
    const RankCode C = RankCode::full_space(T->base_ptr(), 2, 3);
    CHECK(left_idealiser(C).dim == 4);
    CHECK(right_idealiser(C).dim == 9);
    CHECK_FALSE(right_idealiser(C).isField);
  }
  SUBCASE("Gabidulin and C_{U,G}") {
    const RankCode G = gabidulin(4, 2, 1, T);
    const Idealiser R = right_idealiser(G);
    CHECK(R.order == 16);
    CHECK(R.isField);
    CHECK_FALSE(R.probabilistic);
    CHECK(verify_idealiser(G, R));
    CHECK(verify_idealiser(G, left_idealiser(G)));
    const RankCode cug = c_ug(pseudoregulus_subspace(2, 1, T)).code;
    const Idealiser Rc = right_idealiser(cug);
    CHECK(Rc.dim == 4);
    CHECK(Rc.isField);
  }
  SUBCASE("transposition swaps the sides") {
    std::mt19937 rng(6);
    std::vector<RankCode> codes{gabidulin(4, 2, 1, T), c_ug(pseudoregulus_subspace(2, 1, T)).code};
    for (int i = 0; i < 5; ++i) codes.push_back(random_code(T->base_ptr(), 3, 2, 2 + rng() % 3, rng));
    for (const auto& C : codes) {
      const RankCode At = adjoint(C);
      const Idealiser L = left_idealiser(At), R = right_idealiser(C);
      CHECK(span_of(L.basis, T->base(), L.basis.empty() ? 0 : L.basis[0].data.size()) ==
            span_of(transposed(R.basis), T->base(), R.basis.empty() ? 0 : R.basis[0].data.size()));
      const Idealiser R2 = right_idealiser(At), L2 = left_idealiser(C);
      CHECK(span_of(R2.basis, T->base(), R2.basis[0].data.size()) ==
            span_of(transposed(L2.basis), T->base(), L2.basis[0].data.size()));
    }
  }
  SUBCASE("every nonzero element of a field idealiser is invertible") {
    const Idealiser R = right_idealiser(gabidulin(4, 2, 1, T));
    const RankCode asCode = RankCode::from_basis(T->base_ptr(), 4, 4, R.basis);
    for_each_codeword(asCode, {}, [&](const Mat& M) {
      if (!M.is_zero()) CHECK(rank(M) == 4);
    });
  }
}

TEST_CASE("puncturing") {
  auto T = make_tower(2, 1, 4, 1);
  const RankCode G = gabidulin(4, 2, 1, T);
  CHECK(puncture(G, Mat::identity(T->base(), 4)).same_code(G));
  std::mt19937 rng(10);
  for (int i = 0; i < 5; ++i) {
    const RankCode P = puncture(G, random_full_rank(T->base(), 3, 4, rng));
    CHECK(P.m() == 3);
    CHECK(P.dim() == 8);
    CHECK(as_u64(rank_distribution(P)) == oracle::rank_distribution(P));
    CHECK(min_distance(P) == 2);
    CHECK(is_mrd(P));
  }
  Mat deficient(T->base(), 2, 4);
  deficient(0, 0) = deficient(1, 0) = Fe(1);
  CHECK(code_of([&] { puncture(G, deficient); }) == ErrorCode::RankDeficientA);
  CHECK(code_of([&] { puncture(G, Mat::identity(T->base(), 3)); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { puncture(RankCode::full_space(T->base_ptr(), 2, 3), Mat::identity(T->base(), 2)); }) ==
        ErrorCode::ShapeMismatch);
}

TEST_CASE("inequivalence certificates") {
  auto T = make_tower(2, 1, 4, 1);
  const RankCode G = gabidulin(4, 2, 1, T);
  const InequivalenceCertificate self = inequivalence_certificate(G, G);
  CHECK_FALSE(self.inequivalent);
  CHECK(self.reasons.empty());
  const RankCode cug = c_ug(pseudoregulus_subspace(2, 1, T)).code;
  std::mt19937 rng(77);
  const RankCode other = random_code(T->base_ptr(), 4, 4, 8, rng);
  const InequivalenceCertificate c = inequivalence_certificate(cug, other);
  CHECK(c.inequivalent);
  CHECK(std::find(c.reasons.begin(), c.reasons.end(), "rank-distribution") != c.reasons.end());
  CHECK(std::find(c.reasons.begin(), c.reasons.end(), "right-idealiser-order") != c.reasons.end());
  CHECK(right_idealiser(other).dim < 4);
  CHECK(code_of([&] { inequivalence_certificate(G, RankCode::full_space(T->base_ptr(), 3, 4)); }) ==
        ErrorCode::ParamMismatch);
}

TEST_CASE("Gabidulin family exclusion gates") {
  CodeInvariants inv{9, 6, 18, 5, 2, 6};
  CHECK(gabidulin_family_exclusion(inv, 3, 6, 1) == Exclusion::CertifiedNew);
  inv.rightIdealiserDim = 3;
  CHECK(gabidulin_family_exclusion(inv, 3, 6, 1) == Exclusion::NotApplicable);
  CHECK(gabidulin_family_exclusion(CodeInvariants{4, 4, 8, 3, 2, 4}, 2, 4, 1) == Exclusion::NotApplicable);
  CHECK(code_of([] { gabidulin_family_exclusion(CodeInvariants{6, 4, 12, 3, 2, 4}, 3, 4, 1); }) ==
        ErrorCode::HypothesisViolated);
  CHECK(code_of([] { gabidulin_family_exclusion(CodeInvariants{2, 3, 6, 1, 2, 3}, 2, 3, 2); }) ==
        ErrorCode::HypothesisViolated);
  CHECK(code_of([] { gabidulin_family_exclusion(CodeInvariants{9, 6, 18, 4, 2, 6}, 3, 6, 1); }) ==
        ErrorCode::ParamMismatch);
  CHECK(code_of([] { gabidulin_family_exclusion(CodeInvariants{9, 6, 18, 5, 2, 6}, 3, 5, 1); }) ==
        ErrorCode::ParamMismatch);
  auto T = make_tower(2, 1, 4, 1);
  CHECK(gabidulin_family_exclusion(c_ug(pseudoregulus_subspace(2, 1, T)).code, 2, 4, 1) == Exclusion::NotApplicable);
}
