#include "ranklab/constructions.hpp"

#include <numeric>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

Fe frob_in(const Field& f, std::uint32_t q, Fe x, unsigned s) {
  for (unsigned i = 0; i < s; ++i) x = f.pow(x, q);
  return x;
}

Fe basis_element(const FieldTower& tower, unsigned j) {
  std::uint32_t c = 1;
  for (unsigned i = 0; i < j; ++i) c *= tower.q();
  return Fe(c);
}

Vec coords(const FieldTower& tower, Fe x, unsigned len) {
  Vec out(len);
  to_base_coords(tower, x, out);
  return out;
}

}  // namespace

LinearizedPoly::LinearizedPoly(TowerPtr tower, Level level, std::vector<Fe> coeffs)
    : tower_(std::move(tower)), level_(level), N_(tower_->degree_over_base(level)), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() <= N_, ErrorCode::InvalidArgument, "more q-polynomial coefficients than the field degree");
  for (Fe a : coeffs_) require(tower_->level(level_).contains(a), ErrorCode::WrongLevel, "coefficient outside the field");
  coeffs_.resize(N_, Fe(0));
}

Fe LinearizedPoly::evaluate(Fe x) const {
  const Field& f = tower_->level(level_);
  Fe acc(0), power = x;
  for (unsigned i = 0; i < N_; ++i) {
    if (!coeffs_[i].is_zero()) acc = f.add(acc, f.mul(coeffs_[i], power));
    power = f.pow(power, tower_->q());
  }
  return acc;
}

Mat LinearizedPoly::matrix() const {
  return map_matrix(*tower_, level_, [this](Fe x) { return evaluate(x); });
}

LinearizedPoly LinearizedPoly::scaled(Fe a) const {
  const Field& f = tower_->level(level_);
  std::vector<Fe> c = coeffs_;
  for (auto& x : c) x = f.mul(a, x);
  return LinearizedPoly(tower_, level_, std::move(c));
}

Level level_of_degree(const FieldTower& tower, unsigned N) {
  if (tower.n() == N) return Level::Mid;
  if (tower.n() * tower.t() == N) return Level::Top;
  if (N == 1) return Level::Base;
  fail(ErrorCode::ParamMismatch, "no level of the tower has degree " + std::to_string(N) + " over F_q");
}

RankCode gabidulin(unsigned N, unsigned k, unsigned s, const TowerPtr& tower) {
  require(std::gcd(s, N) == 1, ErrorCode::GcdViolation, "gcd(s, N) must be 1");
  require(k >= 1 && k < N, ErrorCode::KTooLarge, "need 1 <= k < N");
  const FieldTower& T = *tower;
  const Level lv = level_of_degree(T, N);
  const Field& f = T.level(lv);
  std::vector<Mat> basis;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < N; ++j) {
      const Fe gamma = basis_element(T, j);
      basis.push_back(map_matrix(T, lv, [&](Fe x) { return f.mul(gamma, frob_in(f, T.q(), x, (s * i) % N)); }));
    }
  return RankCode::from_basis(T.base_ptr(), N, N, std::move(basis));
}

bool twisted_eta_admissible(const FieldTower& tower, unsigned N, unsigned k, Fe eta) {
  const Field& f = tower.level(level_of_degree(tower, N));
  std::uint64_t qN = 1;
  for (unsigned i = 0; i < N; ++i) qN *= tower.q();
  const Fe norm = f.pow(eta, (qN - 1) / (tower.q() - 1));
  const Fe sign = (static_cast<std::uint64_t>(N) * k) % 2 == 0 ? Fe(1) : f.neg(Fe(1));
  return norm != sign;
}

TwistedGabidulin twisted_gabidulin(unsigned N, unsigned k, unsigned s, Fe eta, unsigned c, const TowerPtr& tower) {
  require(std::gcd(s, N) == 1, ErrorCode::GcdViolation, "gcd(s, N) must be 1");
  require(k >= 1 && k < N, ErrorCode::KTooLarge, "need 1 <= k < N");
  require(c < N, ErrorCode::InvalidArgument, "need 0 <= c < N");
  const FieldTower& T = *tower;
  const Level lv = level_of_degree(T, N);
  const Field& f = T.level(lv);
  require(f.contains(eta), ErrorCode::WrongLevel, "eta outside F_{q^N}");
  require(twisted_eta_admissible(T, N, k, eta), ErrorCode::EtaConditionViolated,
          "eta^{(q^N-1)/(q-1)} equals (-1)^{Nk}");
  std::vector<Mat> basis;
  for (unsigned j = 0; j < N; ++j) {
    const Fe gamma = basis_element(T, j);
    const Fe twist = f.mul(eta, frob_in(f, T.q(), gamma, c));
    basis.push_back(map_matrix(T, lv, [&](Fe x) {
      return f.add(f.mul(gamma, x), f.mul(twist, frob_in(f, T.q(), x, (s * k) % N)));
    }));
  }
  for (unsigned i = 1; i < k; ++i)
    for (unsigned j = 0; j < N; ++j) {
      const Fe gamma = basis_element(T, j);
      basis.push_back(map_matrix(T, lv, [&](Fe x) { return f.mul(gamma, frob_in(f, T.q(), x, (s * i) % N)); }));
    }
  TwistedGabidulin out;
  out.code = RankCode::from_basis(T.base_ptr(), N, N, std::move(basis));
  out.untwisted = eta.is_zero();
  return out;
}

Mat canonical_projection(const FqSubspace& U) {
  const FieldTower& T = U.tower();
  const std::size_t rn = U.r() * T.n();
  const Mat& R = U.flat().basis();
  const auto& piv = U.flat().pivots();
  std::vector<bool> isPivot(rn, false);
  for (auto p : piv) isPivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < rn; ++c)
    if (!isPivot[c]) rest.push_back(c);
  Mat G(T.base(), rest.size(), rn);
  for (std::size_t l = 0; l < rest.size(); ++l) {
    G(l, rest[l]) = Fe(1);
    for (std::size_t j = 0; j < piv.size(); ++j) G(l, piv[j]) = T.base().neg(R(j, rest[l]));
  }
  return G;
}

CUGCode c_ug(const FqSubspace& U, const ScanOptions& opts) { return c_ug(U, canonical_projection(U), opts); }

CUGCode c_ug(const FqSubspace& U, const Mat& G, const ScanOptions& opts) {
  const FieldTower& T = U.tower();
  const unsigned n = T.n();
  const std::size_t rn = U.r() * n;
  require(G.cols == rn && G.rows == rn - U.k(), ErrorCode::ShapeMismatch, "G must be (rn-k) x rn");
  require(kernel(G) == U.flat(), ErrorCode::KernelMismatch, "kernel of G is not U");
  CUGCode out;
  out.U = U;
  out.G = G;
  out.iota = iota(U, opts);
  require(out.iota < n, ErrorCode::IotaFull, "U contains a full F_{q^n}-line (iota = n)");
  const Field& mid = T.mid();
  std::vector<Fe> gpow(n);
  for (unsigned a = 0; a < n; ++a) gpow[a] = mid.pow(mid.generator(), a);
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < U.r(); ++i)
    for (unsigned b = 0; b < n; ++b) {
      Mat M(T.base(), G.rows, n);
      for (unsigned a = 0; a < n; ++a) {
        Vec v(U.r());
        v[i] = mid.mul(gpow[a], gpow[b]);
        const Vec col = multiply(G, flatten(T, v));
        for (std::size_t x = 0; x < G.rows; ++x) M(x, a) = col[x];
      }
      basis.push_back(std::move(M));
    }
  try {
    out.code = RankCode::from_basis(T.base_ptr(), G.rows, n, std::move(basis));
  } catch (const Error& e) {
    fail(ErrorCode::InternalError, std::string("C_{U,G} basis is dependent although iota < n: ") + e.what());
  }
  return out;
}

bool c_ug_mrd_predicate(const FqSubspace& U, const ScanOptions& opts) {
  const std::size_t n = U.n(), rn = U.r() * n;
  const std::size_t i = iota(U, opts);
  require(i < n, ErrorCode::IotaFull, "U contains a full F_{q^n}-line (iota = n)");
  return rn % (i + 1) == 0 && U.k() == i * rn / (i + 1) && U.k() <= (U.r() - 1) * n;
}

RankDistribution c_ug_distribution_from_points(const FqSubspace& U, const ScanOptions& opts) {
  const FieldTower& T = U.tower();
  const std::size_t n = T.n(), m = U.r() * n - U.k();
  const auto counts = point_weight_counts(U, opts);
  require(counts.empty() || counts.rbegin()->first < n, ErrorCode::IotaFull, "U contains a full F_{q^n}-line");
  RankDistribution D;
  D.m = m;
  D.n = n;
  D.q = T.q();
  D.K = U.r() * n;
  D.A.assign(std::min(m, n) + 1, 0);
  D.A[0] = 1;
  BigInt weightZero = theta(static_cast<long>(U.r()) - 1, T.qn());
  const BigInt scale = BigInt(T.qn()) - 1;
  for (auto [w, c] : counts) {
    weightZero -= c;
    require(n - w < D.A.size(), ErrorCode::InternalError, "codeword rank exceeds min(m, n)");
    D.A[n - w] += scale * c;
  }
  if (weightZero > 0) {
    require(n < D.A.size(), ErrorCode::InternalError, "codeword rank exceeds min(m, n)");
    D.A[n] += scale * weightZero;
  }
  return D;
}

RankDistribution c_ug_mrd_distribution(std::size_t r, std::size_t n, std::size_t iota, std::uint32_t q) {
  require(iota < n && (r * n) % (iota + 1) == 0, ErrorCode::InvalidParams, "need iota < n and (iota+1) | rn");
  const std::size_t m = r * n / (iota + 1);
  require(m >= n, ErrorCode::InvalidParams, "k = iota rn/(iota+1) exceeds (r-1)n");
  RankDistribution D;
  D.m = m;
  D.n = n;
  D.q = q;
  D.K = r * n;
  D.A.assign(n + 1, 0);
  D.A[0] = 1;
  for (std::size_t s = 0; s <= iota; ++s) {
    BigInt sum = 0;
    for (std::size_t j = 0; j + s <= iota; ++j) {
      BigInt term = qbinom(static_cast<long>(n - s), static_cast<long>(j), q) * big_pow(q, j * (j - 1) / 2) *
                    (big_pow(q, m * (iota - s - j + 1)) - 1);
      if (j % 2) sum -= term;
      else sum += term;
    }
    D.A[n - s] = qbinom(static_cast<long>(n), static_cast<long>(s), q) * sum;
  }
  return D;
}

GIndependence c_ug_g_independence(const FqSubspace& U, const Mat& G1, const Mat& G2) {
  require(kernel(G1) == U.flat() && kernel(G2) == U.flat(), ErrorCode::KernelMismatch, "kernels differ from U");
  const std::size_t rn = U.r() * U.n();
  std::vector<bool> isPivot(rn, false);
  for (auto p : U.flat().pivots()) isPivot[p] = true;
  Mat A(U.tower().base(), G1.rows, G1.rows), B(U.tower().base(), G2.rows, G2.rows);
  std::size_t l = 0;
  for (std::size_t c = 0; c < rn; ++c) {
    if (isPivot[c]) continue;
    for (std::size_t x = 0; x < G1.rows; ++x) {
      A(x, l) = G1(x, c);
      B(x, l) = G2(x, c);
    }
    ++l;
  }
  GIndependence out;
  out.L = multiply(B, inverse(A));
  out.verified = multiply(out.L, G1) == G2;
  if (out.verified) {
    const CUGCode c1 = c_ug(U, G1), c2 = c_ug(U, G2);
    std::vector<Mat> mapped;
    for (const auto& M : c1.code.basis()) mapped.push_back(multiply(out.L, M));
    out.verified = RankCode::from_span(c1.code.field_ptr(), c1.code.m(), c1.code.n(), mapped).same_code(c2.code);
  }
  return out;
}

SheekeyCode sheekey_code(const std::vector<LinearizedPoly>& fs) {
  require(!fs.empty(), ErrorCode::InvalidArgument, "no q-polynomials given");
  const FieldTower& T = fs.front().tower();
  const Level lv = fs.front().level();
  for (const auto& f : fs)
    require(f.tower().same_as(T) && f.level() == lv, ErrorCode::TowerMismatch, "q-polynomials over different fields");
  const unsigned n = fs.front().degree();
  std::vector<Mat> mats;
  for (const auto& f : fs)
    for (unsigned j = 0; j < n; ++j) mats.push_back(f.scaled(basis_element(T, j)).matrix());
  SheekeyCode out;
  out.code = RankCode::from_span(T.base_ptr(), n, n, mats);
  out.degenerate = out.code.dim() < fs.size() * n;
  return out;
}

FqSubspace subspace_of_polys(const std::vector<LinearizedPoly>& fs) {
  require(!fs.empty(), ErrorCode::InvalidArgument, "no q-polynomials given");
  const TowerPtr& tower = fs.front().tower_ptr();
  for (const auto& f : fs)
    require(f.tower().same_as(*tower) && f.level() == Level::Mid, ErrorCode::TowerMismatch,
            "q-polynomials must live on F_{q^n} of one tower");
  std::vector<Vec> vectors;
  for (unsigned a = 0; a < tower->n(); ++a) {
    Vec v;
    for (const auto& f : fs) v.push_back(f.evaluate(basis_element(*tower, a)));
    vectors.push_back(std::move(v));
  }
  return FqSubspace::from_span(tower, fs.size(), vectors);
}

GabidulinRestriction gabidulin_restriction(unsigned iotaValue, const TowerPtr& tower) {
  const FieldTower& T = *tower;
  const unsigned n = T.n(), t = T.t(), nt = n * t;
  require(iotaValue < n, ErrorCode::InvalidArgument, "need iota < n");
  const std::size_t r = static_cast<std::size_t>(t) * (iotaValue + 1);
  const Field& top = T.top();
  const Field& mid = T.mid();
  std::vector<Fe> gpow(n);
  for (unsigned a = 0; a < n; ++a) gpow[a] = mid.pow(mid.generator(), a);

  GabidulinRestriction out;
  std::vector<Mat> basis;
  for (unsigned j = 0; j <= iotaValue; ++j)
    for (unsigned c = 0; c < nt; ++c) {
      const Fe beta = basis_element(T, c);
      Mat M(T.base(), nt, n);
      for (unsigned a = 0; a < n; ++a) {
        const Vec col = coords(T, top.mul(beta, frob_in(top, T.q(), gpow[a], j)), nt);
        for (unsigned x = 0; x < nt; ++x) M(x, a) = col[x];
      }
      basis.push_back(std::move(M));
    }
  out.code = RankCode::from_basis(T.base_ptr(), nt, n, std::move(basis));

  // f(1) for f = sum f_{j,i} o omega_{alpha_{j,i}}, coordinate index (j t + i) n + a
  Mat G(T.base(), nt, r * n);
  for (unsigned j = 0; j <= iotaValue; ++j)
    for (unsigned i = 0; i < t; ++i) {
      const Fe xi = top.pow(top.generator(), i);
      for (unsigned a = 0; a < n; ++a) {
        const Vec col = coords(T, top.mul(xi, frob_in(top, T.q(), gpow[a], j)), nt);
        for (unsigned x = 0; x < nt; ++x) G(x, (j * t + i) * n + a) = col[x];
      }
    }
  out.U = FqSubspace::from_flat(tower, r, kernel(G));
  out.Udual = ordinary_dual(out.U);

  std::vector<Vec> expected;
  for (unsigned i = 0; i < t; ++i)
    for (unsigned a = 0; a < n; ++a) {
      Vec v(r);
      v[i] = gpow[a];
      for (unsigned j = 1; j <= iotaValue; ++j) v[j * t + i] = frob_in(mid, T.q(), gpow[a], n - j);
      expected.push_back(std::move(v));
    }
  out.expectedDual = FqSubspace::from_basis(tower, r, std::move(expected));
  out.dualMatches = out.Udual == out.expectedDual;
  return out;
}

FqSubspace pseudoregulus_subspace(std::size_t r, std::size_t h, const TowerPtr& tower) {
  const FieldTower& T = *tower;
  require(r % (h + 1) == 0, ErrorCode::DivisibilityViolation, "(h+1) must divide r");
  require(h < T.n(), ErrorCode::InvalidArgument, "need h < n");
  const Field& mid = T.mid();
  std::vector<Vec> basis;
  for (std::size_t block = 0; block < r / (h + 1); ++block)
    for (unsigned a = 0; a < T.n(); ++a) {
      Vec v(r);
      Fe z = mid.pow(mid.generator(), a);
      for (std::size_t j = 0; j <= h; ++j) {
        v[block * (h + 1) + j] = z;
        z = mid.pow(z, T.q());
      }
      basis.push_back(std::move(v));
    }
  return FqSubspace::from_basis(tower, r, std::move(basis));
}

}  // namespace ranklab
