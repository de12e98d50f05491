#include "ranklab/fields.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ranklab/error.hpp"

namespace ranklab {

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

void trim(FieldPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

// Remainder of a modulo a monic f.
FieldPoly poly_mod(const Field& k, FieldPoly a, const FieldPoly& f) {
  trim(a);
  const std::size_t d = f.size() - 1;
  while (a.size() > d) {
    const Fe lead = a.back();
    const std::size_t shift = a.size() - 1 - d;
    for (std::size_t j = 0; j < d; ++j) a[shift + j] = k.sub(a[shift + j], k.mul(lead, f[j]));
    a.pop_back();
    trim(a);
  }
  return a;
}

FieldPoly poly_mulmod(const Field& k, const FieldPoly& a, const FieldPoly& b, const FieldPoly& f) {
  if (a.empty() || b.empty()) return {};
  FieldPoly prod(a.size() + b.size() - 1, Fe(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = k.add(prod[i + j], k.mul(a[i], b[j]));
  }
  return poly_mod(k, std::move(prod), f);
}

FieldPoly poly_powmod(const Field& k, FieldPoly a, std::uint64_t e, const FieldPoly& f) {
  FieldPoly result{Fe(1)};
  a = poly_mod(k, std::move(a), f);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(k, result, a, f);
    e >>= 1;
    if (e) a = poly_mulmod(k, a, a, f);
  }
  return result;
}

FieldPoly poly_gcd(const Field& k, FieldPoly a, FieldPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic, then a mod b
    const Fe inv = k.inv(b.back());
    for (auto& c : b) c = k.mul(c, inv);
    a = poly_mod(k, std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const Fe inv = k.inv(a.back());
    for (auto& c : a) c = k.mul(c, inv);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d)
    if (value % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) {
      out.push_back(d);
      while (value % d == 0) value /= d;
    }
  }
  if (value > 1) out.push_back(value);
  return out;
}

std::shared_ptr<const Field> Field::prime(std::uint32_t p, std::uint64_t tableLimit) {
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->degree_ = 1;
  f->relDegree_ = 1;
  f->size_ = p;
  f->modulus_ = {Fe(0), Fe(1)};
  f->build_tables(tableLimit);
  return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> sub, std::vector<Fe> modulus,
                                              std::uint64_t tableLimit) {
  require(sub != nullptr, ErrorCode::InvalidArgument, "extension of a null field");
  require(modulus.size() >= 2 && modulus.back() == Fe(1), ErrorCode::InvalidArgument,
          "extension modulus must be monic of degree >= 1");
  const unsigned d = static_cast<unsigned>(modulus.size() - 1);
  const std::uint64_t size = checked_pow(sub->size(), d, std::numeric_limits<std::uint32_t>::max());
  require(size <= std::numeric_limits<std::uint32_t>::max(), ErrorCode::BudgetExceeded,
          "field too large for 32-bit element codes");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = sub->characteristic();
  f->degree_ = sub->degree() * d;
  f->relDegree_ = d;
  f->size_ = static_cast<std::uint32_t>(size);
  f->sub_ = std::move(sub);
  f->modulus_ = std::move(modulus);
  f->build_tables(tableLimit);
  return f;
}

Fe Field::generator() const {
  if (!sub_) return Fe(1);
  if (relDegree_ == 1) return sub_->neg(modulus_[0]);
  return Fe(sub_->size());
}

Fe Field::add_digits(Fe a, Fe b) const {
  std::uint32_t x = a.code, y = b.code, out = 0, place = 1;
  while (x != 0 || y != 0) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return Fe(out);
}

Fe Field::neg(Fe a) const {
  if (p_ == 2) return a;
  if (!negTable_.empty()) return Fe(negTable_[a.code]);
  std::uint32_t x = a.code, out = 0, place = 1;
  while (x != 0) {
    out += ((p_ - x % p_) % p_) * place;
    x /= p_;
    place *= p_;
  }
  return Fe(out);
}

Fe Field::mul_slow(Fe a, Fe b) const {
  if (!sub_) return Fe(static_cast<std::uint32_t>((std::uint64_t(a.code) * b.code) % p_));
  const Field& k = *sub_;
  const std::uint32_t s = k.size();
  const unsigned d = relDegree_;
  std::vector<Fe> ca(d), cb(d);
  std::uint32_t x = a.code, y = b.code;
  for (unsigned i = 0; i < d; ++i) {
    ca[i] = Fe(x % s);
    cb[i] = Fe(y % s);
    x /= s;
    y /= s;
  }
  std::vector<Fe> prod(2 * d - 1, Fe(0));
  for (unsigned i = 0; i < d; ++i) {
    if (ca[i].is_zero()) continue;
    for (unsigned j = 0; j < d; ++j) prod[i + j] = k.add(prod[i + j], k.mul(ca[i], cb[j]));
  }
  for (unsigned top = 2 * d - 2; top >= d && top < 2 * d; --top) {
    const Fe lead = prod[top];
    if (lead.is_zero()) continue;
    for (unsigned j = 0; j < d; ++j) prod[top - d + j] = k.sub(prod[top - d + j], k.mul(lead, modulus_[j]));
    prod[top] = Fe(0);
  }
  std::uint32_t out = 0;
  for (unsigned i = d; i-- > 0;) out = out * s + prod[i].code;
  return Fe(out);
}

Fe Field::pow_slow(Fe a, std::uint64_t e) const {
  Fe result(1);
  while (e > 0) {
    if (e & 1) result = mul_slow(result, a);
    e >>= 1;
    if (e) a = mul_slow(a, a);
  }
  return result;
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  if (e == 0) return Fe(1);
  if (a.is_zero()) return Fe(0);
  if (!log_.empty()) {
    const std::uint64_t order = size_ - 1;
    return Fe(exp_[(std::uint64_t(log_[a.code]) * (e % order)) % order]);
  }
  return pow_slow(a, e);
}

Fe Field::inv(Fe a) const {
  require(!a.is_zero(), ErrorCode::InvalidArgument, "inverse of zero");
  if (!log_.empty()) return Fe(exp_[(size_ - 1 - log_[a.code]) % (size_ - 1)]);
  return pow_slow(a, size_ - 2);
}

Fe Field::scale_int(Fe a, std::uint64_t k) const {
  const std::uint32_t c = static_cast<std::uint32_t>(k % p_);
  if (c == 0) return Fe(0);
  return mul(a, Fe(c));
}

std::uint64_t Field::multiplicative_order(Fe a) const {
  require(!a.is_zero(), ErrorCode::InvalidArgument, "order of zero");
  std::uint64_t order = size_ - 1;
  for (std::uint64_t ell : prime_divisors(size_ - 1)) {
    while (order % ell == 0 && pow(a, order / ell) == Fe(1)) order /= ell;
  }
  return order;
}

void Field::build_tables(std::uint64_t tableLimit) {
  if (p_ != 2 && size_ <= 1024) {
    std::vector<std::uint32_t> addTable(std::size_t(size_) * size_), negTable(size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
      negTable[a] = neg(Fe(a)).code;
      for (std::uint32_t b = 0; b < size_; ++b) addTable[std::size_t(a) * size_ + b] = add_digits(Fe(a), Fe(b)).code;
    }
    addTable_ = std::move(addTable);
    negTable_ = std::move(negTable);
  }
  // primitive element by the prime-divisor test
  const std::uint64_t order = size_ - 1;
  const auto divisors = prime_divisors(order);
  for (std::uint32_t c = 1; c < size_; ++c) {
    bool ok = true;
    for (std::uint64_t ell : divisors) {
      if (pow_slow(Fe(c), order / ell) == Fe(1)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = Fe(c);
      break;
    }
  }
  if (size_ > tableLimit || size_ < 2) return;
  exp_.assign(2 * order, 0);
  log_.assign(size_, 0);
  Fe x(1);
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x.code;
    log_[x.code] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, primitive_);
  }
  require(x == Fe(1), ErrorCode::InternalError, "primitive element cycle did not close");
  for (std::uint64_t i = order; i < 2 * order; ++i) exp_[i] = exp_[i - order];
}

bool is_irreducible(const Field& k, const FieldPoly& fIn) {
  FieldPoly f = fIn;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  {
    const Fe inv = k.inv(f.back());
    for (auto& c : f) c = k.mul(c, inv);
  }
  if (d == 1) return true;
  const FieldPoly x{Fe(0), Fe(1)};
  const auto divisors = prime_divisors(d);
  FieldPoly h = x;
  for (unsigned i = 1; i <= d; ++i) {
    h = poly_powmod(k, h, k.size(), f);
    for (std::uint64_t ell : divisors) {
      if (i == d / ell) {
        FieldPoly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), Fe(0));
        diff[1] = k.sub(diff[1], Fe(1));
        trim(diff);
        if (diff.empty()) return false;
        const FieldPoly g = poly_gcd(k, f, diff);
        if (g.size() != 1) return false;
      }
    }
  }
  FieldPoly diff = h;
  diff.resize(std::max<std::size_t>(diff.size(), 2), Fe(0));
  diff[1] = k.sub(diff[1], Fe(1));
  trim(diff);
  return diff.empty();
}

FieldPoly least_irreducible(const Field& k, unsigned degree) {
  require(degree >= 1, ErrorCode::InvalidArgument, "degree must be positive");
  const std::uint64_t count = checked_pow(k.size(), degree, std::uint64_t(1) << 40);
  for (std::uint64_t c = 0; c < count; ++c) {
    FieldPoly f(degree + 1);
    std::uint64_t x = c;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = Fe(static_cast<std::uint32_t>(x % k.size()));
      x /= k.size();
    }
    f[degree] = Fe(1);
    if (is_irreducible(k, f)) return f;
  }
  fail(ErrorCode::InternalError, "no irreducible polynomial found");
}

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::Base: return "base";
    case Level::Mid: return "mid";
    case Level::Top: return "top";
  }
  return "?";
}

Level level_from_string(std::string_view name) {
  if (name == "base") return Level::Base;
  if (name == "mid") return Level::Mid;
  if (name == "top") return Level::Top;
  fail(ErrorCode::ParseError, "unknown field level '" + std::string(name) + "'");
}

const Field& FieldTower::level(Level l) const {
  switch (l) {
    case Level::Base: return *base_;
    case Level::Mid: return *mid_;
    case Level::Top: return *top_;
  }
  return *top_;
}

unsigned FieldTower::degree_over_base(Level l) const {
  switch (l) {
    case Level::Base: return 1;
    case Level::Mid: return n_;
    case Level::Top: return n_ * t_;
  }
  return 1;
}

TowerPtr make_tower(std::uint32_t p, unsigned e, unsigned n, unsigned t, const TowerOptions& options) {
  require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  require(e >= 1 && n >= 1 && t >= 1, ErrorCode::InvalidArgument, "tower degrees must be positive");
  const std::uint64_t cap = std::numeric_limits<std::uint32_t>::max();
  const std::uint64_t topSize = checked_pow(p, e * n * t, cap);
  require(topSize <= cap, ErrorCode::BudgetExceeded, "top field exceeds 32-bit element codes");
  if (options.logTables)
    require(topSize <= options.budget, ErrorCode::BudgetExceeded,
            "top field size " + std::to_string(topSize) + " exceeds the enumeration budget");
  const std::uint64_t tableLimit = options.logTables ? options.tableLimit : 0;

  auto tower = std::shared_ptr<FieldTower>(new FieldTower());
  tower->p_ = p;
  tower->e_ = e;
  tower->n_ = n;
  tower->t_ = t;
  tower->prime_ = Field::prime(p, tableLimit);
  const FieldPoly linear{Fe(0), Fe(1)};

  auto extend = [&](const std::shared_ptr<const Field>& below, unsigned degree, FieldPoly& modOut) {
    if (degree == 1) {
      modOut = linear;
      return below;
    }
    modOut = least_irreducible(*below, degree);
    return Field::extension(below, modOut, tableLimit);
  };
  tower->base_ = extend(tower->prime_, e, tower->modBase_);
  tower->mid_ = extend(tower->base_, n, tower->modMid_);
  tower->top_ = extend(tower->mid_, t, tower->modTop_);

  // x^q = x has exactly q solutions in F_{q^n}
  const Field& mid = *tower->mid_;
  if (mid.size() <= (1u << 16)) {
    std::uint32_t fixed = 0;
    for (std::uint32_t c = 0; c < mid.size(); ++c)
      if (mid.pow(Fe(c), tower->q()) == Fe(c)) ++fixed;
    require(fixed == tower->q(), ErrorCode::InternalError, "Frobenius fixed field has the wrong size");
  }
  return tower;
}

Fe relative_trace(const Field& ext, const Field& sub, Fe x) {
  require(ext.contains(x), ErrorCode::WrongLevel, "element outside the extension field");
  const unsigned d = ext.degree() / sub.degree();
  Fe acc(0), y = x;
  for (unsigned i = 0; i < d; ++i) {
    acc = ext.add(acc, y);
    y = ext.pow(y, sub.size());
  }
  return acc;
}

Fe trace_to_base(const FieldTower& tower, Fe x) {
  require(tower.mid().contains(x), ErrorCode::WrongLevel, "trace_to_base expects an element of F_{q^n}");
  const Fe tr = relative_trace(tower.mid(), tower.base(), x);
  require(tower.base().contains(tr), ErrorCode::InternalError, "trace left the base field");
  return tr;
}

Fe frobenius(const FieldTower& tower, Fe x, long s) {
  const Field& top = tower.top();
  require(top.contains(x), ErrorCode::WrongLevel, "element outside the tower");
  const long d = static_cast<long>(tower.n() * tower.t());
  long shift = s % d;
  if (shift < 0) shift += d;
  Fe y = x;
  for (long i = 0; i < shift; ++i) y = top.pow(y, tower.q());
  return y;
}

FieldPoly minimal_polynomial(const FieldTower& tower, Fe x) {
  const Field& top = tower.top();
  require(top.contains(x), ErrorCode::WrongLevel, "element outside the tower");
  std::vector<Fe> conjugates{x};
  for (Fe y = top.pow(x, tower.q()); y != x; y = top.pow(y, tower.q())) conjugates.push_back(y);
  FieldPoly poly{Fe(1)};
  for (Fe c : conjugates) {
    FieldPoly next(poly.size() + 1, Fe(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = top.add(next[i + 1], poly[i]);
      next[i] = top.sub(next[i], top.mul(poly[i], c));
    }
    poly = std::move(next);
  }
  for (Fe c : poly) require(tower.base().contains(c), ErrorCode::InternalError, "minimal polynomial not over F_q");
  return poly;
}

void to_base_coords(const FieldTower& tower, Fe x, std::span<Fe> out) {
  const std::uint32_t q = tower.q();
  std::uint32_t v = x.code;
  for (auto& c : out) {
    c = Fe(v % q);
    v /= q;
  }
  require(v == 0, ErrorCode::WrongLevel, "element does not fit the requested coordinate length");
}

Fe from_base_coords(const FieldTower& tower, std::span<const Fe> coords) {
  const std::uint32_t q = tower.q();
  std::uint32_t v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) v = v * q + coords[i].code;
  return Fe(v);
}

std::vector<std::uint32_t> prime_coefficients(const Field& field, Fe x) {
  std::vector<std::uint32_t> out(field.degree());
  std::uint32_t v = x.code;
  for (auto& c : out) {
    c = v % field.characteristic();
    v /= field.characteristic();
  }
  return out;
}

Fe from_prime_coefficients(const Field& field, std::span<const std::uint32_t> coeffs) {
  require(coeffs.size() == field.degree(), ErrorCode::ParseError, "coefficient vector has the wrong length");
  std::uint32_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    require(coeffs[i] < field.characteristic(), ErrorCode::ParseError, "coefficient not reduced mod p");
    v = v * field.characteristic() + coeffs[i];
  }
  return Fe(v);
}

}  // namespace ranklab
