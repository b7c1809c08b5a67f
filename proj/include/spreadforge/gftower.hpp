#pragma once

// Finite-field tower F_p ⊂ F_q ⊂ F_{q^k}, plus the degree-t primitive
// modulus over F_{q^k} that realizes F_{q^{kt}} as F_{q^k}[M_t].
//
// Every element is stored as a single integer: the coefficient vector over
// the previous level, written little-endian in base |previous level|. Since
// each level has p^w elements this is the same as the flattened base-p digit
// string of the element, so canonical equality is integer equality and
// addition is digit-wise addition mod p at every level.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spreadforge {

struct Elem {
  std::uint32_t v = 0;

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  /// Largest level cardinality for which arithmetic tables are built.
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 20;

  static FieldPtr prime(std::uint32_t p);

  /// Extension of `base` by a monic primitive modulus, coefficients constant
  /// term first with the leading 1 included. Throws InvalidModulus when the
  /// class of x does not generate the multiplicative group.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint64_t size() const noexcept { return size_; }
  /// Number of base-p digits per element.
  unsigned width() const noexcept { return width_; }
  /// Degree of this level over its base (1 for the prime field).
  unsigned degree() const noexcept { return degree_; }
  /// 0 for the prime field, 1 for its first extension, ...
  unsigned level() const noexcept { return level_; }
  const FieldPtr& base() const noexcept { return base_; }
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return {0}; }
  Elem one() const noexcept { return {1}; }
  /// Primitive element: the class of x (a primitive root for the prime field).
  Elem generator() const noexcept { return generator_; }

  bool contains(Elem x) const noexcept { return x.v < size_; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// Discrete logarithm to the base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t e) const noexcept { return exp_[e % (size_ - 1)]; }

  /// Coefficients over base(), length degree(). For the prime field: {a}.
  std::vector<Elem> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const Elem> coeffs) const;

  /// Flattened base-p digits, little-endian, length width().
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  /// Characters per base-p digit in digit_string: 1 for p ≤ 36 (0-9a-z),
  /// otherwise the decimal length of p−1, zero-padded. Either way string
  /// order agrees with digit order.
  unsigned symbols_per_digit() const noexcept;
  std::string digit_string(Elem a) const;

  /// Position of a in the lexicographic order of digit strings.
  std::uint32_t lex_rank(Elem a) const noexcept { return lex_rank_[a.v]; }

  /// True when both describe the same level of the same tower.
  bool same_as(const Field& other) const noexcept;

 private:
  Field() = default;

  void build_tables();

  std::uint32_t p_ = 0;
  std::uint64_t size_ = 0;
  unsigned width_ = 1;
  unsigned degree_ = 1;
  unsigned level_ = 0;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  Elem generator_{};
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> lex_rank_;
};

/// Least m ≥ 1 with x^m = 1, by exponent descent over the prime factors of
/// the group order.
std::uint64_t element_order(const Field& field, Elem x);

/// Smallest primitive polynomial of the given degree over `base`, comparing
/// coefficient vectors lexicographically from the constant term. Returned
/// constant term first, leading 1 included.
std::vector<Elem> find_primitive_polynomial(const Field& base, unsigned degree);

/// True when the monic polynomial is primitive over `base`.
bool is_primitive_polynomial(const Field& base, std::span<const Elem> modulus);

/// Evaluates a polynomial (constant term first) at a point.
Elem evaluate_polynomial(const Field& field, std::span<const Elem> poly, Elem x);

struct TowerStep {
  unsigned degree = 1;
  std::vector<Elem> modulus;
  bool primitive = true;
  /// The t-step carries no arithmetic tables; it only fixes M_t.
  bool auxiliary = false;
};

/// F_p ⊂ F_q ⊂ F_{q^k} together with the degree-t step. Immutable.
class FieldTower {
 public:
  static FieldTower build(std::uint32_t p, unsigned e, unsigned k, unsigned t);
  /// Same shape with caller-chosen moduli (constant term first, leading 1
  /// included); each must be primitive over its base.
  static FieldTower from_moduli(std::uint32_t p, std::vector<Elem> mod_q, std::vector<Elem> mod_qk,
                                std::vector<Elem> mod_aux);

  std::uint32_t p() const noexcept { return prime_->characteristic(); }
  unsigned e() const noexcept { return e_; }
  unsigned k() const noexcept { return k_; }
  unsigned t() const noexcept { return t_; }

  const FieldPtr& prime_field() const noexcept { return prime_; }
  const FieldPtr& fq() const noexcept { return fq_; }
  const FieldPtr& fqk() const noexcept { return fqk_; }
  /// Degree-t primitive modulus over F_{q^k}.
  const std::vector<Elem>& aux_modulus() const noexcept { return steps_[2].modulus; }
  const std::vector<TowerStep>& steps() const noexcept { return steps_; }

  /// `p=<p>; step=<degree>:<c0>,<c1>,...; ...` with each coefficient as the
  /// digit string of its level.
  std::string describe() const;

 private:
  unsigned e_ = 1, k_ = 1, t_ = 1;
  FieldPtr prime_, fq_, fqk_;
  std::vector<TowerStep> steps_;
};

/// (gcd(ℓ, q−1) = 1, gcd((q^ℓ−1)/(q−1), q−1) = 1).
std::pair<bool, bool> coprime_transfer_holds(std::uint64_t ell, std::uint64_t q);

// Integer helpers shared across modules.
bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// Throws ParameterOutOfRange on overflow of 64 bits.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

}  // namespace spreadforge
