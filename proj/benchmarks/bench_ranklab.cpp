#include <benchmark/benchmark.h>

#include <random>

#include "ranklab/constructions.hpp"
#include "ranklab/fqlinalg.hpp"
#include "ranklab/linsets.hpp"
#include "ranklab/rankcodes.hpp"
#include "ranklab/subspaces.hpp"

using namespace ranklab;

namespace {

void BM_FieldMul(benchmark::State& state) {
  auto T = make_tower(2, 1, static_cast<unsigned>(state.range(0)), 1);
  const Field& F = T->mid();
  Fe acc(1);
  const Fe g = F.generator();
  for (auto _ : state) {
    acc = F.mul(acc, g);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(8)->Arg(12);

void BM_Rref(benchmark::State& state) {
  auto T = make_tower(2, 1, 1, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  Mat M(T->mid(), n, n);
  for (auto& x : M.data) x = Fe(rng() & 1);
  for (auto _ : state) benchmark::DoNotOptimize(rref(M));
}
BENCHMARK(BM_Rref)->Arg(16)->Arg(64)->Arg(128);

void BM_GabidulinDistribution(benchmark::State& state) {
  auto T = make_tower(2, 1, 4, 1);
  const RankCode C = gabidulin(4, 2, 1, T);
  for (auto _ : state) benchmark::DoNotOptimize(rank_distribution(C, {.threads = 1}));
}
BENCHMARK(BM_GabidulinDistribution);

void BM_RestrictionDistribution(benchmark::State& state) {
  const RankCode C = gabidulin_restriction(1, make_tower(2, 1, 3, 2)).code;
  for (auto _ : state) benchmark::DoNotOptimize(rank_distribution(C, {.threads = 1}));
}
BENCHMARK(BM_RestrictionDistribution);

void BM_RightIdealiser(benchmark::State& state) {
  auto T = make_tower(2, 1, 4, 1);
  const RankCode C = c_ug(pseudoregulus_subspace(2, 1, T)).code;
  for (auto _ : state) benchmark::DoNotOptimize(right_idealiser(C));
}
BENCHMARK(BM_RightIdealiser);

void BM_Iota(benchmark::State& state) {
  auto T = make_tower(2, 1, static_cast<unsigned>(state.range(0)), 1);
  const FqSubspace U = pseudoregulus_subspace(2, 1, T);
  for (auto _ : state) benchmark::DoNotOptimize(iota(U, {.threads = 1}));
}
BENCHMARK(BM_Iota)->Arg(4)->Arg(6);

void BM_HyperplaneSpectrum(benchmark::State& state) {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace U = pseudoregulus_subspace(4, 1, T);
  for (auto _ : state) benchmark::DoNotOptimize(hyperplane_spectrum(U, 1, {.threads = 1}));
}
BENCHMARK(BM_HyperplaneSpectrum)->Unit(benchmark::kMillisecond);

void BM_DelsarteDual(benchmark::State& state) {
  auto T = make_tower(2, 1, 4, 1);
  const FqSubspace U = pseudoregulus_subspace(2, 1, T);
  for (auto _ : state) benchmark::DoNotOptimize(delsarte_dual(U));
}
BENCHMARK(BM_DelsarteDual);

void BM_ScatteredSearch(benchmark::State& state) {
  auto T = make_tower(2, 1, 4, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SearchOptions so;
    so.seed = ++seed;
    so.scan.threads = 1;
    benchmark::DoNotOptimize(random_scattered_search(2, 1, 4, T, so));
  }
}
BENCHMARK(BM_ScatteredSearch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
