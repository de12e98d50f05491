#include "ranklab/linsets.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

void require_count(const BigInt& count, std::uint64_t budget, const char* what) {
  require(count <= budget, ErrorCode::BudgetExceeded,
          std::string(what) + ": " + count.str() + " items exceed the budget of " + std::to_string(budget));
}

std::size_t log_q(std::uint64_t value, std::uint64_t q) {
  std::size_t w = 0;
  while (value > 1) {
    value /= q;
    ++w;
  }
  return w;
}

std::size_t codeword_weight(const Field& f, const Mat& G, std::span<const Fe> x) {
  std::size_t w = 0;
  for (std::size_t j = 0; j < G.cols; ++j) {
    Fe s(0);
    for (std::size_t i = 0; i < G.rows; ++i) s = f.add(s, f.mul(x[i], G(i, j)));
    if (!s.is_zero()) ++w;
  }
  return w;
}

}  // namespace

bool LinearSet::is_scattered_set() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.second == 1; });
}

LinearSet linear_set(const FqSubspace& U, const ScanOptions& opts) {
  const FieldTower& T = U.tower();
  const Field& base = T.base();
  const Field& mid = T.mid();
  require_count(big_pow(T.q(), U.k()), opts.budget, "linear set");
  const std::uint64_t total = static_cast<std::uint64_t>(big_pow(T.q(), U.k()));
  std::map<Vec, std::uint64_t> counts;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const Vec c = vector_from_index(base, U.k(), idx);
    Vec v(U.r(), Fe(0));
    for (std::size_t j = 0; j < U.k(); ++j) {
      if (c[j].is_zero()) continue;
      for (std::size_t i = 0; i < U.r(); ++i) v[i] = mid.add(v[i], mid.mul(c[j], U.basis()[j][i]));
    }
    ++counts[normalize_projective(mid, std::move(v))];
  }
  LinearSet L{U, {}};
  for (auto& [p, c] : counts) L.points.emplace(p, log_q(c + 1, T.q()));
  return L;
}

BigInt ti_formula(std::size_t r, std::size_t n, std::size_t h, std::uint64_t q, std::size_t i) {
  require(i <= h, ErrorCode::InvalidArgument, "ti_formula: i must lie in 0..h");
  require((r * n) % (h + 1) == 0, ErrorCode::DivisibilityViolation, "ti_formula: h+1 must divide rn");
  const long N = static_cast<long>(n);
  BigInt sum = 0;
  for (std::size_t j = 0; j + i <= h; ++j) {
    const std::size_t e = r * n * (h - i - j + 1) / (h + 1);
    BigInt term = qbinom(N - static_cast<long>(i), static_cast<long>(j), q) * big_pow(q, j == 0 ? 0 : j * (j - 1) / 2) *
                  (big_pow(q, e) - 1);
    sum += (j % 2 == 0) ? term : BigInt(-term);
  }
  const BigInt numerator = qbinom(N, static_cast<long>(i), q) * sum;
  const BigInt denom = big_pow(q, n) - 1;
  require(numerator % denom == 0, ErrorCode::NonIntegral,
          "ti_formula: " + numerator.str() + " is not divisible by " + denom.str());
  return numerator / denom;
}

std::map<std::size_t, BigInt> hyperplane_spectrum(const FqSubspace& U, std::size_t h, const ScanOptions& opts) {
  const std::size_t rn = U.r() * U.n();
  require(h >= 1 && h < U.r(), ErrorCode::InvalidArgument, "hyperplane_spectrum: need 1 <= h <= r-1");
  require(rn % (h + 1) == 0 && U.k() == rn / (h + 1), ErrorCode::NotMaxScattered,
          "hyperplane_spectrum: dimension is not rn/(h+1)");
  require(is_h_scattered(U, h, opts), ErrorCode::NotMaxScattered, "hyperplane_spectrum: subspace is not h-scattered");
  const std::size_t low = rn / (h + 1) - U.n();
  std::map<std::size_t, BigInt> spectrum;
  for (std::size_t i = 0; i <= h; ++i) spectrum[i] = 0;
  for (auto [w, c] : hyperplane_weight_counts(U, opts)) {
    require(w >= low && w <= low + h, ErrorCode::InternalError,
            "hyperplane of weight " + std::to_string(w) + " outside the admissible range");
    spectrum[w - low] += c;
  }
  return spectrum;
}

const char* to_string(EnumeratorConvention c) {
  return c == EnumeratorConvention::Projective ? "projective" : "codeword";
}

HammingCode projective_system_code(const LinearSet& L) {
  require(L.U.spans(), ErrorCode::NotSpanning, "projective_system_code: the linear set lies in a hyperplane");
  const FieldTower& T = L.U.tower();
  HammingCode C;
  C.tower = L.U.tower_ptr();
  C.k = L.U.r();
  C.N = L.points.size();
  C.generator = Mat(T.mid(), C.k, C.N);
  std::size_t j = 0;
  for (const auto& [p, w] : L.points) {
    for (std::size_t i = 0; i < C.k; ++i) C.generator(i, j) = p[i];
    ++j;
  }
  return C;
}

HammingCode qsystem_code(const FqSubspace& U, std::size_t h, const ScanOptions& opts) {
  const std::size_t rn = U.r() * U.n();
  require(rn % (h + 1) == 0 && U.k() == rn / (h + 1), ErrorCode::NotMaxScattered,
          "qsystem_code: dimension is not rn/(h+1)");
  require(U.n() >= h + 3, ErrorCode::HypothesisViolated, "qsystem_code: needs n >= h+3");
  require(is_h_scattered(U, h, opts), ErrorCode::NotMaxScattered, "qsystem_code: subspace is not h-scattered");
  const FieldTower& T = U.tower();
  HammingCode C;
  C.tower = U.tower_ptr();
  C.k = U.r();
  C.N = U.k();
  C.generator = Mat(T.mid(), C.k, C.N);
  for (std::size_t j = 0; j < C.N; ++j)
    for (std::size_t i = 0; i < C.k; ++i) C.generator(i, j) = U.basis()[j][i];
  return C;
}

std::map<std::size_t, BigInt> weight_enumerator(const HammingCode& C, EnumeratorConvention convention,
                                                const ScanOptions& opts) {
  const Field& f = C.field();
  const bool projective = convention == EnumeratorConvention::Projective;
  const BigInt count = projective ? theta(static_cast<long>(C.k) - 1, f.size()) : big_pow(f.size(), C.k) - 1;
  require_count(count, opts.budget, "weight enumerator");
  const std::uint64_t total = static_cast<std::uint64_t>(count);
  std::map<std::size_t, std::uint64_t> acc;
  std::mutex m;
  parallel_chunks(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::map<std::size_t, std::uint64_t> local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const Vec x = projective ? projective_point(f, C.k, i) : vector_from_index(f, C.k, i + 1);
      ++local[codeword_weight(f, C.generator, x)];
    }
    std::lock_guard<std::mutex> lock(m);
    for (auto [w, c] : local) acc[w] += c;
    return true;
  });
  std::map<std::size_t, BigInt> out;
  for (auto [w, c] : acc) out[w] = c;
  return out;
}

std::map<std::size_t, BigInt> enumerator_from_hyperplanes(const LinearSet& L, EnumeratorConvention convention,
                                                          const ScanOptions& opts) {
  const Field& mid = L.U.tower().mid();
  const std::size_t r = L.U.r();
  require_count(theta(static_cast<long>(r) - 1, mid.size()), opts.subspaceBudget, "hyperplane scan");
  std::vector<Vec> pts;
  pts.reserve(L.points.size());
  for (const auto& [p, w] : L.points) pts.push_back(p);
  std::map<std::size_t, std::uint64_t> acc;
  std::mutex m;
  parallel_chunks(projective_point_count(mid, r), opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::map<std::size_t, std::uint64_t> local;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Vec a = projective_point(mid, r, idx);
      std::size_t inside = 0;
      for (const Vec& p : pts) {
        Fe s(0);
        for (std::size_t i = 0; i < r; ++i) s = mid.add(s, mid.mul(a[i], p[i]));
        if (s.is_zero()) ++inside;
      }
      ++local[pts.size() - inside];
    }
    std::lock_guard<std::mutex> lock(m);
    for (auto [w, c] : local) acc[w] += c;
    return true;
  });
  const BigInt factor = convention == EnumeratorConvention::Projective ? BigInt(1) : BigInt(mid.size() - 1);
  std::map<std::size_t, BigInt> out;
  for (auto [w, c] : acc) out[w] = BigInt(c) * factor;
  return out;
}

std::map<std::size_t, BigInt> closed_form_enumerator(std::size_t r, std::size_t n, std::size_t h, std::uint64_t q,
                                                     EnumeratorConvention convention) {
  require((r * n) % (h + 1) == 0, ErrorCode::DivisibilityViolation, "closed_form_enumerator: h+1 must divide rn");
  const long K = static_cast<long>(r * n / (h + 1));
  const BigInt factor = convention == EnumeratorConvention::Projective ? BigInt(1) : big_pow(q, n) - 1;
  std::map<std::size_t, BigInt> out;
  for (std::size_t i = 0; i <= h; ++i) {
    const BigInt w = theta(K - 1, q) - theta(K - static_cast<long>(n) + static_cast<long>(i) - 1, q);
    out[static_cast<std::size_t>(w)] = ti_formula(r, n, h, q, i) * factor;
  }
  return out;
}

std::size_t hamming_min_distance(const HammingCode& C, const ScanOptions& opts) {
  const Field& f = C.field();
  require(C.k > 0, ErrorCode::EmptyCode, "hamming_min_distance: zero code");
  require_count(theta(static_cast<long>(C.k) - 1, f.size()), opts.budget, "minimum distance");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::mutex m;
  parallel_chunks(projective_point_count(f, C.k), opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::size_t local = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::size_t w = codeword_weight(f, C.generator, projective_point(f, C.k, i));
      if (w > 0) local = std::min(local, w);
    }
    std::lock_guard<std::mutex> lock(m);
    best = std::min(best, local);
    return true;
  });
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

}  // namespace ranklab
