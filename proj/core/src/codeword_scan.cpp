#include <algorithm>
#include <mutex>
#include <string>

#include "ranklab/error.hpp"
#include "ranklab/rankcodes.hpp"

namespace ranklab {

namespace {

// The code as an F_p-space: c * B_i for c running over the monomial basis of F_q.
std::vector<Mat> prime_basis(const RankCode& C) {
  const Field& f = C.field();
  std::vector<Mat> out;
  for (const auto& B : C.basis()) {
    std::uint32_t c = 1;
    for (unsigned j = 0; j < f.degree(); ++j, c *= f.characteristic()) out.push_back(scale(B, Fe(c)));
  }
  return out;
}

std::uint64_t checked_total(const RankCode& C, const ScanOptions& opts) {
  const BigInt total = big_pow(C.q(), C.dim());
  require(total <= opts.budget, ErrorCode::BudgetExceeded,
          "scanning " + total.str() + " codewords exceeds the budget of " + std::to_string(opts.budget));
  return static_cast<std::uint64_t>(total);
}

unsigned valuation(std::uint64_t i, unsigned p) {
  unsigned v = 0;
  while (i % p == 0) {
    i /= p;
    ++v;
  }
  return v;
}

// Gray-code digits of index b: g_j = d_j - d_{j+1} mod p.
std::vector<unsigned> gray_digits(std::uint64_t b, unsigned p, std::size_t len) {
  std::vector<unsigned> d(len + 1, 0), g(len);
  for (std::size_t j = 0; j < len; ++j) {
    d[j] = static_cast<unsigned>(b % p);
    b /= p;
  }
  for (std::size_t j = 0; j < len; ++j) g[j] = (d[j] + p - d[j + 1]) % p;
  return g;
}

std::size_t rank_bits(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t x : rows) {
    for (std::uint64_t b : basis) x = std::min(x, x ^ b);
    if (x) {
      basis.push_back(x);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  return basis.size();
}

std::size_t rank_small(const Field& f, std::vector<Fe>& a, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const Fe inv = f.inv(a[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Fe factor = f.mul(a[i * cols + c], inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

}  // namespace

void for_each_codeword(const RankCode& C, const ScanOptions& opts, const std::function<void(const Mat&)>& visit) {
  const std::uint64_t total = checked_total(C, opts);
  const std::vector<Mat> pb = prime_basis(C);
  const Field& f = C.field();
  const unsigned p = f.characteristic();
  parallel_chunks(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
    Mat cur(f, C.m(), C.n());
    const auto g = gray_digits(begin, p, pb.size());
    for (std::size_t j = 0; j < pb.size(); ++j)
      if (g[j]) cur = add(cur, scale(pb[j], Fe(g[j])));
    visit(cur);
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const Mat& step = pb[valuation(i, p)];
      for (std::size_t x = 0; x < cur.data.size(); ++x) cur.data[x] = f.add(cur.data[x], step.data[x]);
      visit(cur);
    }
    return true;
  });
}

RankDistribution rank_distribution(const RankCode& C, const ScanOptions& opts) {
  const std::uint64_t total = checked_total(C, opts);
  const Field& f = C.field();
  const std::size_t m = C.m(), n = C.n(), top = std::min(m, n);
  std::vector<std::uint64_t> counts(top + 1, 0);
  std::mutex mutex;
  const std::vector<Mat> pb = prime_basis(C);
  const unsigned p = f.characteristic();

  if (p == 2 && f.degree() == 1 && n <= 64) {
    std::vector<std::vector<std::uint64_t>> bits(pb.size(), std::vector<std::uint64_t>(m, 0));
    for (std::size_t b = 0; b < pb.size(); ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!pb[b](i, j).is_zero()) bits[b][i] |= std::uint64_t(1) << j;
    parallel_chunks(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
      std::vector<std::uint64_t> local(top + 1, 0), cur(m, 0);
      const auto g = gray_digits(begin, 2, pb.size());
      for (std::size_t j = 0; j < pb.size(); ++j)
        if (g[j])
          for (std::size_t i = 0; i < m; ++i) cur[i] ^= bits[j][i];
      ++local[rank_bits(cur)];
      for (std::uint64_t idx = begin + 1; idx < end; ++idx) {
        const auto& step = bits[valuation(idx, 2)];
        for (std::size_t i = 0; i < m; ++i) cur[i] ^= step[i];
        ++local[rank_bits(cur)];
      }
      std::lock_guard<std::mutex> lock(mutex);
      for (std::size_t i = 0; i <= top; ++i) counts[i] += local[i];
      return true;
    });
  } else {
    parallel_chunks(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
      std::vector<std::uint64_t> local(top + 1, 0);
      Mat cur(f, m, n);
      std::vector<Fe> scratch;
      const auto g = gray_digits(begin, p, pb.size());
      for (std::size_t j = 0; j < pb.size(); ++j)
        if (g[j]) cur = add(cur, scale(pb[j], Fe(g[j])));
      scratch = cur.data;
      ++local[rank_small(f, scratch, m, n)];
      for (std::uint64_t idx = begin + 1; idx < end; ++idx) {
        const Mat& step = pb[valuation(idx, p)];
        for (std::size_t x = 0; x < cur.data.size(); ++x) cur.data[x] = f.add(cur.data[x], step.data[x]);
        scratch = cur.data;
        ++local[rank_small(f, scratch, m, n)];
      }
      std::lock_guard<std::mutex> lock(mutex);
      for (std::size_t i = 0; i <= top; ++i) counts[i] += local[i];
      return true;
    });
  }

  RankDistribution D;
  D.m = m;
  D.n = n;
  D.K = C.dim();
  D.q = C.q();
  for (auto c : counts) D.A.emplace_back(c);
  return D;
}

}  // namespace ranklab
