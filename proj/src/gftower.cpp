#include "spreadforge/gftower.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "spreadforge/error.hpp"

namespace spreadforge {

namespace {

using Poly = std::vector<Elem>;

// (a * b) mod f over `base`; a and b are residues of length deg f.
Poly poly_mulmod(const Field& base, const Poly& a, const Poly& b, std::span<const Elem> f) {
  const std::size_t d = f.size() - 1;
  Poly prod(2 * d - 1, base.zero());
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == base.zero()) continue;
    for (std::size_t j = 0; j < d; ++j)
      prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
  }
  for (std::size_t top = prod.size(); top-- > d;) {
    const Elem c = prod[top];
    if (c == base.zero()) continue;
    // x^d ≡ -(f_0 + ... + f_{d-1} x^{d-1})
    for (std::size_t i = 0; i < d; ++i)
      prod[top - d + i] = base.sub(prod[top - d + i], base.mul(c, f[i]));
  }
  prod.resize(d);
  return prod;
}

Poly poly_powmod(const Field& base, Poly x, std::uint64_t e, std::span<const Elem> f) {
  Poly result(f.size() - 1, base.zero());
  result[0] = base.one();
  while (e > 0) {
    if (e & 1) result = poly_mulmod(base, result, x, f);
    e >>= 1;
    if (e) x = poly_mulmod(base, x, x, f);
  }
  return result;
}

// The class of x modulo f, reduced when deg f = 1.
Poly poly_x(const Field& base, std::span<const Elem> f) {
  const std::size_t d = f.size() - 1;
  Poly x(d, base.zero());
  if (d == 1)
    x[0] = base.neg(f[0]);
  else
    x[1] = base.one();
  return x;
}

bool poly_is_one(const Field& base, const Poly& a) {
  if (a[0] != base.one()) return false;
  return std::all_of(a.begin() + 1, a.end(), [&](Elem c) { return c == base.zero(); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Integer helpers

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      throw Error(Errc::ParameterOutOfRange, "integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

std::pair<bool, bool> coprime_transfer_holds(std::uint64_t ell, std::uint64_t q) {
  const std::uint64_t m = q - 1;
  // (q^ℓ - 1)/(q - 1) = 1 + q + ... + q^{ℓ-1}, reduced mod q - 1.
  std::uint64_t sum = 0, power = 1 % m;
  for (std::uint64_t i = 0; i < ell; ++i) {
    sum = (sum + power) % m;
    power = (power * (q % m)) % m;
  }
  return {std::gcd(ell, m) == 1, std::gcd(sum, m) == 1};
}

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (p > kMaxSize) throw Error(Errc::FieldTooLarge, "characteristic exceeds table limit");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->size_ = p;
  f->width_ = 1;
  f->degree_ = 1;
  f->level_ = 0;
  // Smallest primitive root.
  const auto factors = prime_factors(p - 1);
  for (std::uint32_t g = 1; g < p; ++g) {
    bool ok = true;
    for (auto l : factors) {
      std::uint64_t acc = 1, b = g, e = (p - 1) / l;
      while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      f->generator_ = Elem{g};
      break;
    }
  }
  f->build_tables();
  return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus) {
  if (modulus.size() < 2) throw Error(Errc::InvalidModulus, "modulus degree must be at least 1");
  if (modulus.back() != base->one()) throw Error(Errc::NonMonicModulus, "modulus must be monic");
  const unsigned d = static_cast<unsigned>(modulus.size() - 1);
  const std::uint64_t size = checked_pow(base->size(), d);
  if (size > kMaxSize)
    throw Error(Errc::FieldTooLarge, "level of size " + std::to_string(size) + " exceeds table limit");
  if (!is_primitive_polynomial(*base, modulus))
    throw Error(Errc::InvalidModulus, "modulus is not primitive over its base");

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->p_;
  f->size_ = size;
  f->width_ = base->width_ * d;
  f->degree_ = d;
  f->level_ = base->level_ + 1;
  f->base_ = base;
  f->modulus_ = std::move(modulus);
  f->generator_ = f->from_coefficients(poly_x(*base, f->modulus_));
  f->build_tables();
  return f;
}

void Field::build_tables() {
  exp_.assign(size_ - 1, Elem{});
  log_.assign(size_, 0);
  lex_rank_.assign(size_, 0);

  // Powers of the generator by repeated multiplication in the polynomial
  // representation; a premature return to 1 means the generator is not
  // primitive.
  Elem cur = one();
  for (std::uint64_t i = 0; i + 1 < size_; ++i) {
    if (i > 0 && cur == one())
      throw Error(Errc::InvalidModulus, "generator order is smaller than the group order");
    exp_[i] = cur;
    log_[cur.v] = static_cast<std::uint32_t>(i);
    if (level_ == 0) {
      cur = Elem{static_cast<std::uint32_t>(std::uint64_t{cur.v} * generator_.v % p_)};
    } else {
      const Field& b = *base_;
      const auto c = coefficients(cur);
      cur = from_coefficients(poly_mulmod(b, c, poly_x(b, modulus_), modulus_));
    }
  }
  if (cur != one()) throw Error(Errc::InvalidModulus, "generator does not close its cycle");

  for (std::uint64_t v = 0; v < size_; ++v) {
    std::uint64_t rev = 0, x = v;
    for (unsigned i = 0; i < width_; ++i) {
      rev = rev * p_ + x % p_;
      x /= p_;
    }
    lex_rank_[v] = static_cast<std::uint32_t>(rev);
  }
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (p_ == 2) return Elem{a.v ^ b.v};
  if (level_ == 0) return Elem{(a.v + b.v) % p_};
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < width_; ++i) {
    out += ((a.v % p_ + b.v % p_) % p_) * scale;
    a.v /= p_;
    b.v /= p_;
    scale *= p_;
  }
  return Elem{out};
}

Elem Field::neg(Elem a) const noexcept {
  if (p_ == 2) return a;
  if (level_ == 0) return Elem{(p_ - a.v) % p_};
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < width_; ++i) {
    out += ((p_ - a.v % p_) % p_) * scale;
    a.v /= p_;
    scale *= p_;
  }
  return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (a.v == 0 || b.v == 0) return zero();
  if (level_ == 0) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % p_)};
  std::uint64_t l = std::uint64_t{log_[a.v]} + log_[b.v];
  if (l >= size_ - 1) l -= size_ - 1;
  return exp_[l];
}

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::uint32_t l = log_[a.v];
  return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

std::uint32_t Field::log(Elem a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "logarithm of zero");
  return log_[a.v];
}

std::vector<Elem> Field::coefficients(Elem a) const {
  if (level_ == 0) return {a};
  std::vector<Elem> out(degree_);
  const auto bs = static_cast<std::uint32_t>(base_->size());
  for (unsigned i = 0; i < degree_; ++i) {
    out[i] = Elem{a.v % bs};
    a.v /= bs;
  }
  return out;
}

Elem Field::from_coefficients(std::span<const Elem> coeffs) const {
  if (level_ == 0) return coeffs.empty() ? zero() : Elem{coeffs[0].v % p_};
  const auto bs = static_cast<std::uint32_t>(base_->size());
  std::uint32_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * bs + coeffs[i].v;
  return Elem{v};
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> out(width_);
  for (unsigned i = 0; i < width_; ++i) {
    out[i] = a.v % p_;
    a.v /= p_;
  }
  return out;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  std::uint32_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p_ + digits[i];
  return Elem{v};
}

unsigned Field::symbols_per_digit() const noexcept {
  if (p_ <= 36) return 1;
  return static_cast<unsigned>(std::to_string(p_ - 1).size());
}

std::string Field::digit_string(Elem a) const {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  const unsigned w = symbols_per_digit();
  std::string s;
  s.reserve(std::size_t{width_} * w);
  for (auto d : digits(a)) {
    if (w == 1) {
      s.push_back(kDigits[d]);
    } else {
      const std::string dec = std::to_string(d);
      s.append(w - dec.size(), '0');
      s += dec;
    }
  }
  return s;
}

bool Field::same_as(const Field& other) const noexcept {
  if (this == &other) return true;
  if (p_ != other.p_ || size_ != other.size_ || level_ != other.level_ || modulus_ != other.modulus_)
    return false;
  if (!base_) return !other.base_;
  return other.base_ && base_->same_as(*other.base_);
}

// ---------------------------------------------------------------------------
// Orders and primitive polynomials

std::uint64_t element_order(const Field& field, Elem x) {
  if (x == field.zero()) throw Error(Errc::DivisionByZero, "order of zero");
  std::uint64_t order = field.size() - 1;
  for (auto l : prime_factors(order)) {
    while (order % l == 0 && field.pow(x, order / l) == field.one()) order /= l;
  }
  return order;
}

bool is_primitive_polynomial(const Field& base, std::span<const Elem> modulus) {
  if (modulus.size() < 2 || modulus.back() != base.one()) return false;
  if (modulus.front() == base.zero()) return false;
  const std::size_t d = modulus.size() - 1;
  const std::uint64_t group = checked_pow(base.size(), d) - 1;
  // x has order exactly |F|^d - 1 in F[x]/(f) only when that ring is a field,
  // so this also certifies irreducibility.
  const Poly x = poly_x(base, modulus);
  if (!poly_is_one(base, poly_powmod(base, x, group, modulus))) return false;
  for (auto l : prime_factors(group))
    if (poly_is_one(base, poly_powmod(base, x, group / l, modulus))) return false;
  return true;
}

std::vector<Elem> find_primitive_polynomial(const Field& base, unsigned degree) {
  if (degree == 0) throw Error(Errc::InvalidModulus, "degree must be positive");
  const std::uint64_t q = base.size();
  const std::uint64_t count = checked_pow(q, degree);
  std::vector<Elem> candidate(degree + 1, base.zero());
  candidate[degree] = base.one();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // Constant term is the most significant digit so the scan is
    // lexicographic from the constant term.
    std::uint64_t rest = idx;
    for (unsigned j = degree; j-- > 0;) {
      candidate[j] = Elem{static_cast<std::uint32_t>(rest % q)};
      rest /= q;
    }
    if (is_primitive_polynomial(base, candidate)) return candidate;
  }
  throw Error(Errc::NoPrimitivePolynomialFound,
              "no primitive polynomial of degree " + std::to_string(degree));
}

Elem evaluate_polynomial(const Field& field, std::span<const Elem> poly, Elem x) {
  Elem acc = field.zero();
  for (std::size_t i = poly.size(); i-- > 0;) acc = field.add(field.mul(acc, x), poly[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// FieldTower

FieldTower FieldTower::build(std::uint32_t p, unsigned e, unsigned k, unsigned t) {
  if (e == 0 || k == 0 || t == 0) throw Error(Errc::ParameterOutOfRange, "e, k, t must be positive");
  FieldTower tower;
  tower.e_ = e;
  tower.k_ = k;
  tower.t_ = t;
  tower.prime_ = Field::prime(p);

  auto mod_q = find_primitive_polynomial(*tower.prime_, e);
  tower.steps_.push_back({e, mod_q, true, false});
  tower.fq_ = Field::extension(tower.prime_, std::move(mod_q));

  auto mod_qk = find_primitive_polynomial(*tower.fq_, k);
  tower.steps_.push_back({k, mod_qk, true, false});
  tower.fqk_ = Field::extension(tower.fq_, std::move(mod_qk));

  tower.steps_.push_back({t, find_primitive_polynomial(*tower.fqk_, t), true, true});
  return tower;
}

FieldTower FieldTower::from_moduli(std::uint32_t p, std::vector<Elem> mod_q, std::vector<Elem> mod_qk,
                                   std::vector<Elem> mod_aux) {
  if (mod_q.size() < 2 || mod_qk.size() < 2 || mod_aux.size() < 2)
    throw Error(Errc::InvalidModulus, "every modulus needs degree at least 1");
  FieldTower tower;
  tower.e_ = static_cast<unsigned>(mod_q.size() - 1);
  tower.k_ = static_cast<unsigned>(mod_qk.size() - 1);
  tower.t_ = static_cast<unsigned>(mod_aux.size() - 1);
  tower.prime_ = Field::prime(p);
  tower.steps_.push_back({tower.e_, mod_q, true, false});
  tower.fq_ = Field::extension(tower.prime_, std::move(mod_q));
  tower.steps_.push_back({tower.k_, mod_qk, true, false});
  tower.fqk_ = Field::extension(tower.fq_, std::move(mod_qk));
  for (Elem c : mod_aux)
    if (!tower.fqk_->contains(c)) throw Error(Errc::LevelMismatch, "auxiliary coefficient outside F_{q^k}");
  if (mod_aux.back() != tower.fqk_->one()) throw Error(Errc::NonMonicModulus, "modulus must be monic");
  if (!is_primitive_polynomial(*tower.fqk_, mod_aux))
    throw Error(Errc::InvalidModulus, "auxiliary modulus is not primitive over F_{q^k}");
  tower.steps_.push_back({tower.t_, std::move(mod_aux), true, true});
  return tower;
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "p=" << p();
  const Field* levels[] = {prime_.get(), fq_.get(), fqk_.get()};
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    os << "; step=" << steps_[i].degree << ':';
    for (std::size_t j = 0; j < steps_[i].modulus.size(); ++j) {
      if (j) os << ',';
      os << levels[i]->digit_string(steps_[i].modulus[j]);
    }
  }
  return os.str();
}

}  // namespace spreadforge
