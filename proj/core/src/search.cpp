#include <atomic>
#include <cmath>
#include <unordered_map>
#include <mutex>
#include <random>
#include <thread>

#include "ranklab/constructions.hpp"
#include "ranklab/error.hpp"

namespace ranklab {

namespace {

constexpr std::uint64_t kSpanPenalty = 1000;

// For h = 1: sum of (weight - 1) over points, found by walking the nonzero
// vectors of U and counting them per point. Empty when too large to pack.
std::optional<std::uint64_t> point_excess_by_vectors(const FqSubspace& U) {
  const FieldTower& T = U.tower();
  const Field& mid = T.mid();
  const std::size_t r = U.r();
  const std::size_t fpDim = U.k() * T.e();
  const std::uint32_t p = T.p();
  if (fpDim > 24 || std::pow(double(mid.size()), double(r)) >= 1.8e19) return std::nullopt;

  std::vector<Vec> gens;
  for (const Vec& u : U.basis())
    for (unsigned j = 0; j < T.e(); ++j) {
      const Fe lambda = T.base().pow(T.base().generator(), j);
      Vec v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = mid.mul(lambda, u[i]);
      gens.push_back(std::move(v));
    }
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  std::vector<std::uint32_t> digits(fpDim, 0);
  Vec v(r, Fe(0));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < fpDim; ++i) total *= p;
  for (std::uint64_t step = 1; step < total; ++step) {
    std::size_t j = 0;
    while (true) {
      for (std::size_t i = 0; i < r; ++i) v[i] = mid.add(v[i], gens[j][i]);
      if (++digits[j] < p) break;
      digits[j] = 0;
      ++j;
    }
    std::size_t lead = 0;
    while (v[lead].is_zero()) ++lead;
    const Fe inv = mid.inv(v[lead]);
    std::uint64_t key = 0;
    for (std::size_t i = r; i-- > 0;) key = key * mid.size() + (i < lead ? 0 : mid.mul(inv, v[i]).code);
    ++counts[key];
  }
  std::uint64_t excess = 0;
  for (const auto& [key, c] : counts) {
    std::uint64_t size = c + 1;
    std::uint64_t w = 0;
    while (size > 1) {
      size /= T.q();
      ++w;
    }
    if (w > 1) excess += w - 1;
  }
  return excess;
}

// Sum of (weight - h) over h-dimensional subspaces heavier than h, plus a
// penalty per missing F_{q^n}-dimension of the span. Zero iff h-scattered.
std::uint64_t excess(const FqSubspace& U, std::size_t h) {
  const Field& mid = U.tower().mid();
  const std::size_t r = U.r();
  std::uint64_t total = 0;
  if (U.k() > 0) {
    const std::size_t spanRank = rank(Mat::from_rows(mid, r, U.basis()));
    total += kSpanPenalty * (r - spanRank);
  } else {
    total += kSpanPenalty * r;
  }
  if (h == 1) {
    if (auto fast = point_excess_by_vectors(U)) return total + *fast;
  }
  if (h == 1 || h + 1 == r) {
    const std::uint64_t points = projective_point_count(mid, r);
    for (std::uint64_t i = 0; i < points; ++i) {
      const Vec v = projective_point(mid, r, i);
      const std::size_t w = h == 1 ? point_weight(U, v) : hyperplane_weight(U, v);
      if (w > h) total += w - h;
    }
  } else {
    enumerate_subspaces(mid, r, r - h, std::numeric_limits<std::uint64_t>::max(), [&](const Mat& A) {
      const std::size_t w = weight_in_kernel(U, A);
      if (w > h) total += w - h;
      return true;
    });
  }
  return total;
}

Vec random_vector(const Field& mid, std::size_t r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, mid.size() - 1);
  Vec v(r);
  for (auto& x : v) x = Fe(pick(rng));
  return v;
}

std::optional<FqSubspace> random_subspace(const TowerPtr& tower, std::size_t r, std::size_t k, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < k; ++i) basis.push_back(random_vector(tower->mid(), r, rng));
    try {
      return FqSubspace::from_basis(tower, r, std::move(basis));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DependentBasis) throw;
    }
  }
  return std::nullopt;
}

}  // namespace

SearchResult random_scattered_search(std::size_t r, std::size_t h, std::size_t k, const TowerPtr& tower,
                                     const SearchOptions& opts) {
  const FieldTower& T = *tower;
  require(h >= 1 && h + 1 <= r, ErrorCode::InvalidArgument, "h must satisfy 1 <= h <= r-1");
  require(k * (h + 1) <= r * T.n(), ErrorCode::InvalidArgument, "k exceeds rn/(h+1)");
  require(qbinom(static_cast<long>(r), static_cast<long>(h), T.qn()) <= opts.scan.subspaceBudget,
          ErrorCode::BudgetExceeded, "h-subspace scan per candidate exceeds the budget");

  SearchResult result;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::steady_clock::now() - start; };
  if (k == 0) {
    result.seconds = std::chrono::duration<double>(elapsed()).count();
    return result;
  }

  std::atomic<bool> done{false};
  std::atomic<std::uint64_t> iterations{0}, restarts{0};
  std::mutex winnerMutex;
  std::optional<FqSubspace> winner;
  std::size_t winnerChain = 0;
  const unsigned chains = resolve_threads(opts.scan.threads);
  const std::uint64_t stall = 50 * k;

  auto chain = [&](unsigned id) {
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ull + id);
    std::uniform_int_distribution<std::size_t> slot(0, k - 1);
    auto out_of_budget = [&] {
      if (done.load()) return true;
      if (elapsed() >= opts.timeBudget) return true;
      return opts.maxIterations > 0 && iterations.load() >= opts.maxIterations;
    };
    while (!out_of_budget()) {
      auto current = random_subspace(tower, r, k, rng);
      if (!current) return;
      std::uint64_t score = excess(*current, h);
      std::uint64_t sinceImprovement = 0;
      while (score > 0 && sinceImprovement < stall && !out_of_budget()) {
        ++iterations;
        std::vector<Vec> basis = current->basis();
        basis[slot(rng)] = random_vector(T.mid(), r, rng);
        std::optional<FqSubspace> candidate;
        try {
          candidate = FqSubspace::from_basis(tower, r, std::move(basis));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DependentBasis) throw;
          ++sinceImprovement;
          continue;
        }
        const std::uint64_t s = excess(*candidate, h);
        if (s < score) sinceImprovement = 0;
        else ++sinceImprovement;
        if (s <= score) {
          score = s;
          current = std::move(candidate);
        }
      }
      if (score == 0) {
        std::lock_guard<std::mutex> lock(winnerMutex);
        if (!winner || id < winnerChain) {
          winner = current;
          winnerChain = id;
        }
        done = true;
        return;
      }
      ++restarts;
    }
  };

  std::exception_ptr error;
  auto guarded = [&](unsigned id) {
    try {
      chain(id);
    } catch (...) {
      std::lock_guard<std::mutex> lock(winnerMutex);
      if (!error) error = std::current_exception();
      done = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < chains; ++id) pool.emplace_back(guarded, id);
  guarded(0);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  if (winner) {
    ScanOptions single = opts.scan;
    single.threads = 1;
    require(is_h_scattered(*winner, h, single), ErrorCode::InternalError, "search witness failed re-verification");
    result.witness = std::move(winner);
  }
  result.iterations = iterations.load();
  result.restarts = restarts.load();
  result.seconds = std::chrono::duration<double>(elapsed()).count();
  return result;
}

}  // namespace ranklab
