#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace ranklab {

// A field element, packed as its coefficient vector over the prime field
// written in base p (constant term in the least significant digit). Which
// field it belongs to is carried by context, never by the value.
struct Fe {
  std::uint32_t code = 0;

  constexpr Fe() = default;
  constexpr explicit Fe(std::uint32_t c) : code(c) {}

  constexpr bool is_zero() const { return code == 0; }
  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

// Finite field F_{p^D}. A prime field, or an extension of a subfield K by a
// monic irreducible modulus f over K. Extension elements are polynomials
// sum c_i x^i (c_i in K) packed as sum code(c_i) * |K|^i, so subfield elements
// keep their codes when embedded.
class Field {
 public:
  static std::shared_ptr<const Field> prime(std::uint32_t p, std::uint64_t tableLimit = 1u << 20);
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> sub, std::vector<Fe> modulus,
                                                std::uint64_t tableLimit = 1u << 20);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  std::uint32_t size() const { return size_; }
  unsigned relative_degree() const { return relDegree_; }
  const Field* subfield() const { return sub_.get(); }
  const std::shared_ptr<const Field>& subfield_ptr() const { return sub_; }
  std::span<const Fe> modulus() const { return modulus_; }
  bool has_log_tables() const { return !log_.empty(); }

  bool contains(Fe a) const { return a.code < size_; }
  // The adjoined root x of the modulus (the polynomial-basis generator).
  Fe generator() const;

  Fe add(Fe a, Fe b) const {
    if (p_ == 2) return Fe(a.code ^ b.code);
    if (!addTable_.empty()) return Fe(addTable_[a.code * size_ + b.code]);
    return add_digits(a, b);
  }
  Fe neg(Fe a) const;
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const {
    if (a.code == 0 || b.code == 0) return Fe(0);
    if (!log_.empty()) return Fe(exp_[log_[a.code] + log_[b.code]]);
    return mul_slow(a, b);
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, std::uint64_t e) const;
  // Multiplication by an integer (the image of k in the prime field).
  Fe scale_int(Fe a, std::uint64_t k) const;

  // Discrete logarithm to the table base; requires log tables and a != 0.
  std::uint32_t log(Fe a) const { return log_[a.code]; }
  Fe primitive_element() const { return primitive_; }
  std::uint64_t multiplicative_order(Fe a) const;

 private:
  Field() = default;
  Fe add_digits(Fe a, Fe b) const;
  Fe mul_slow(Fe a, Fe b) const;
  Fe pow_slow(Fe a, std::uint64_t e) const;
  void build_tables(std::uint64_t tableLimit);

  std::uint32_t p_ = 0;
  unsigned degree_ = 1;
  unsigned relDegree_ = 1;
  std::uint32_t size_ = 0;
  std::shared_ptr<const Field> sub_;
  std::vector<Fe> modulus_;
  Fe primitive_{};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> addTable_;
  std::vector<std::uint32_t> negTable_;
};

// Monic polynomials over a field, coefficients low to high.
using FieldPoly = std::vector<Fe>;

bool is_irreducible(const Field& field, const FieldPoly& f);
// Least monic irreducible polynomial of the given degree, ordered by the
// packed integer sum c_i |K|^i of its non-leading coefficients.
FieldPoly least_irreducible(const Field& field, unsigned degree);

enum class Level { Base, Mid, Top };
std::string_view to_string(Level level) noexcept;
Level level_from_string(std::string_view name);

struct TowerOptions {
  bool logTables = true;
  std::uint64_t tableLimit = 1u << 20;
  std::uint64_t budget = 1u << 24;
};

// F_q within F_{q^n} within F_{q^{nt}}, q = p^e. Immutable after construction.
// Degenerate levels (e, n or t equal to 1) alias the level below and carry the
// modulus X.
class FieldTower {
 public:
  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned n() const { return n_; }
  unsigned t() const { return t_; }
  std::uint32_t q() const { return base_->size(); }
  std::uint32_t qn() const { return mid_->size(); }

  const Field& prime_field() const { return *prime_; }
  const Field& base() const { return *base_; }
  const Field& mid() const { return *mid_; }
  const Field& top() const { return *top_; }
  const Field& level(Level l) const;
  const std::shared_ptr<const Field>& base_ptr() const { return base_; }
  const std::shared_ptr<const Field>& mid_ptr() const { return mid_; }
  const std::shared_ptr<const Field>& top_ptr() const { return top_; }
  unsigned degree_over_base(Level l) const;

  const FieldPoly& modulus_base() const { return modBase_; }
  const FieldPoly& modulus_mid() const { return modMid_; }
  const FieldPoly& modulus_top() const { return modTop_; }

  // Same parameters imply identical encodings, moduli being deterministic.
  bool same_as(const FieldTower& other) const {
    return p_ == other.p_ && e_ == other.e_ && n_ == other.n_ && t_ == other.t_;
  }

 private:
  friend std::shared_ptr<const FieldTower> make_tower(std::uint32_t, unsigned, unsigned, unsigned,
                                                      const TowerOptions&);
  std::uint32_t p_ = 0;
  unsigned e_ = 1, n_ = 1, t_ = 1;
  std::shared_ptr<const Field> prime_, base_, mid_, top_;
  FieldPoly modBase_, modMid_, modTop_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

TowerPtr make_tower(std::uint32_t p, unsigned e, unsigned n, unsigned t, const TowerOptions& options = {});

bool is_prime(std::uint64_t value);
std::vector<std::uint64_t> prime_divisors(std::uint64_t value);

// Relative trace sum_{i<d} x^{|sub|^i} from `ext` down to `sub`.
Fe relative_trace(const Field& ext, const Field& sub, Fe x);
// Tr_{q^n/q}; x must lie in F_{q^n}.
Fe trace_to_base(const FieldTower& tower, Fe x);
// x^{q^s}, s reduced modulo the degree of the top level over F_q.
Fe frobenius(const FieldTower& tower, Fe x, long s);
// Monic minimal polynomial of x over F_q, coefficients (in F_q) low to high.
FieldPoly minimal_polynomial(const FieldTower& tower, Fe x);

// Coordinates of x over F_q in the polynomial basis of its level (base-q
// digits of the packed code), and the inverse.
void to_base_coords(const FieldTower& tower, Fe x, std::span<Fe> out);
Fe from_base_coords(const FieldTower& tower, std::span<const Fe> coords);

// Coefficients of x over the prime field, low to high (length = degree).
std::vector<std::uint32_t> prime_coefficients(const Field& field, Fe x);
Fe from_prime_coefficients(const Field& field, std::span<const std::uint32_t> coeffs);

}  // namespace ranklab
