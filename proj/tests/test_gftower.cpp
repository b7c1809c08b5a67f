#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "spreadforge/error.hpp"
#include "spreadforge/gftower.hpp"

using namespace spreadforge;

namespace {

std::vector<std::uint32_t> values(const std::vector<Elem>& poly) {
  std::vector<std::uint32_t> out;
  for (Elem c : poly) out.push_back(c.v);
  return out;
}

struct Shape {
  std::uint32_t p;
  unsigned e, k, t;
};

// Towers small enough for exhaustive or dense sampling.
const std::vector<Shape> kTowers = {{2, 1, 1, 2}, {2, 1, 2, 2}, {2, 2, 1, 2}, {2, 1, 3, 2}, {2, 2, 2, 1},
                                    {3, 1, 1, 3}, {3, 2, 1, 1}, {3, 1, 2, 1}, {5, 1, 2, 1}, {7, 1, 1, 2},
                                    {2, 3, 2, 1}, {2, 1, 1, 1}};

std::vector<FieldPtr> levels(const FieldTower& tw) { return {tw.prime_field(), tw.fq(), tw.fqk()}; }

}  // namespace

TEST_CASE("prime field arithmetic agrees with integers mod p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u, 31u}) {
    const auto f = Field::prime(p);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f->add({a}, {b}).v == (a + b) % p);
        CHECK(f->sub({a}, {b}).v == (a + p - b) % p);
        CHECK(f->mul({a}, {b}).v == a * b % p);
        if (b != 0) CHECK(f->div({a}, {b}).v == a * oracle::inv_mod(b, p) % p);
      }
  }
}

TEST_CASE("F_4 multiplication table matches hand-derived formula") {
  const auto tw = FieldTower::build(2, 2, 1, 2);
  const Field& f4 = *tw.fq();
  REQUIRE(f4.size() == 4);
  CHECK(values(f4.modulus()) == std::vector<std::uint32_t>{1, 1, 1});
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) CHECK(f4.mul({a}, {b}).v == oracle::f4_mul(a, b));
  const Elem alpha = f4.generator();
  CHECK(alpha.v == 2);
  CHECK(f4.mul(alpha, alpha) == f4.add(alpha, f4.one()));
  CHECK(f4.pow(alpha, 3) == f4.one());
}

TEST_CASE("chosen moduli are the first primitive polynomials") {
  SUBCASE("degree 2 over F_2 for the t-step of (2,1,1,2)") {
    const auto tw = FieldTower::build(2, 1, 1, 2);
    CHECK(values(tw.aux_modulus()) == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(values(tw.aux_modulus()) == oracle::first_primitive(2, 2));
  }
  SUBCASE("prime bases, several degrees") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
      for (unsigned d = 1; d <= 4 && oracle::ipow(p, d) <= 2401; ++d) {
        const auto f = Field::prime(p);
        CAPTURE(p);
        CAPTURE(d);
        CHECK(values(find_primitive_polynomial(*f, d)) == oracle::first_primitive(p, d));
      }
  }
  SUBCASE("every degree-2 candidate over F_2 classified as the oracle does") {
    const auto f2 = Field::prime(2);
    for (std::uint32_t c0 = 0; c0 < 2; ++c0)
      for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
        const std::vector<Elem> poly = {{c0}, {c1}, {1}};
        const bool expected = oracle::x_order({c0, c1, 1}, 2, 3) == 3;
        CHECK(is_primitive_polynomial(*f2, poly) == expected);
      }
  }
}

TEST_CASE("trivial tower has F_2 at every level") {
  const auto tw = FieldTower::build(2, 1, 1, 1);
  CHECK(tw.fq()->size() == 2);
  CHECK(tw.fqk()->size() == 2);
  CHECK(tw.aux_modulus().size() == 2);
  CHECK(tw.describe() == "p=2; step=1:1,1; step=1:1,1; step=1:1,1");
}

TEST_CASE("tower descriptor text") {
  CHECK(FieldTower::build(2, 1, 1, 2).describe() == "p=2; step=1:1,1; step=1:1,1; step=2:1,1,1");
  // F_4 over F_2 by x²+x+1, then x + α, then x² + x + α; F_4 entries are
  // two-digit strings ("01" = α, "10" = 1).
  CHECK(FieldTower::build(2, 2, 1, 2).describe() == "p=2; step=2:1,1,1; step=1:01,10; step=2:01,10,10");
  // Deterministic across builds.
  CHECK(FieldTower::build(3, 2, 2, 1).describe() == FieldTower::build(3, 2, 2, 1).describe());
}

TEST_CASE("element_order") {
  const auto tw = FieldTower::build(2, 2, 1, 2);
  CHECK(element_order(*tw.fq(), tw.fq()->one()) == 1);
  CHECK(element_order(*tw.fq(), tw.fq()->generator()) == 3);
  CHECK_THROWS_AS(element_order(*tw.fq(), tw.fq()->zero()), Error);

  for (const auto& s : kTowers) {
    const auto t = FieldTower::build(s.p, s.e, s.k, s.t);
    for (const auto& f : levels(t)) {
      CHECK(element_order(*f, f->generator()) == f->size() - 1);
      // Every element against naive powering.
      for (std::uint32_t x = 1; x < f->size(); ++x) {
        std::uint64_t m = 1;
        for (Elem cur{x}; cur != f->one(); cur = f->mul(cur, Elem{x})) ++m;
        CHECK(element_order(*f, Elem{x}) == m);
      }
    }
  }
}

TEST_CASE("coprime transfer lemma") {
  CHECK(coprime_transfer_holds(2, 4) == std::pair{true, true});
  CHECK(coprime_transfer_holds(3, 4) == std::pair{false, false});
  for (std::uint64_t q = 2; q <= 64; ++q) {
    const auto f = prime_factors(q);
    if (f.size() != 1) continue;  // prime powers only
    CHECK(coprime_transfer_holds(1, q) == std::pair{true, true});
    const std::uint64_t m = q - 1;
    for (std::uint64_t ell = 1; ell <= 50; ++ell) {
      // (q^ℓ−1)/(q−1) mod (q−1), read off q^ℓ−1 mod (q−1)².
      std::uint64_t x = 0;
      if (m > 0) {
        const std::uint64_t mm = m * m;
        std::uint64_t pw = 1;
        for (std::uint64_t i = 0; i < ell; ++i) pw = pw * q % mm;
        x = ((pw + mm - 1) % mm) / m;
      }
      const bool first = std::gcd(ell, m) == 1;
      const bool second = std::gcd(x, m) == 1;
      const auto got = coprime_transfer_holds(ell, q);
      CAPTURE(q);
      CAPTURE(ell);
      CHECK(got.first == first);
      CHECK(got.second == second);
      CHECK(got.first == got.second);
    }
  }
}

TEST_CASE("field axioms on random samples at every level") {
  std::mt19937 rng(7);
  for (const auto& s : kTowers) {
    const auto tw = FieldTower::build(s.p, s.e, s.k, s.t);
    for (const auto& f : levels(tw)) {
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(f->size() - 1));
      for (int n = 0; n < 300; ++n) {
        const Elem x{pick(rng)}, y{pick(rng)}, z{pick(rng)};
        CHECK(f->add(f->add(x, y), z) == f->add(x, f->add(y, z)));
        CHECK(f->mul(f->mul(x, y), z) == f->mul(x, f->mul(y, z)));
        CHECK(f->add(x, y) == f->add(y, x));
        CHECK(f->mul(x, y) == f->mul(y, x));
        CHECK(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
        CHECK(f->add(x, f->zero()) == x);
        CHECK(f->mul(x, f->one()) == x);
        CHECK(f->add(x, f->neg(x)) == f->zero());
        if (x != f->zero()) CHECK(f->mul(x, f->inv(x)) == f->one());
        // Frobenius is additive.
        const std::uint64_t p = f->characteristic();
        CHECK(f->pow(f->add(x, y), p) == f->add(f->pow(x, p), f->pow(y, p)));
      }
    }
  }
}

TEST_CASE("coefficient and digit encodings round-trip") {
  const auto tw = FieldTower::build(3, 2, 2, 1);
  const Field& f = *tw.fqk();
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    CHECK(f.from_coefficients(f.coefficients(Elem{x})) == Elem{x});
    CHECK(f.from_digits(f.digits(Elem{x})) == Elem{x});
    CHECK(f.digit_string(Elem{x}).size() == f.width());
  }
  // Digit strings sort like lex_rank.
  for (std::uint32_t x = 0; x + 1 < f.size(); ++x)
    CHECK((f.digit_string(Elem{x}) < f.digit_string(Elem{x + 1})) ==
          (f.lex_rank(Elem{x}) < f.lex_rank(Elem{x + 1})));
  // Large characteristic: zero-padded decimal digits.
  const auto big = Field::prime(101);
  CHECK(big->symbols_per_digit() == 3);
  CHECK(big->digit_string(Elem{7}) == "007");
}

TEST_CASE("field errors") {
  CHECK_THROWS_AS(Field::prime(4), Error);
  try {
    FieldTower::build(6, 1, 1, 1);
    FAIL("expected NonPrimeCharacteristic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrimeCharacteristic);
  }
  const auto f2 = Field::prime(2);
  try {
    f2->inv(f2->zero());
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
  try {
    Field::extension(f2, {{1}, {1}, {0}});
    FAIL("expected NonMonicModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonMonicModulus);
  }
  try {
    Field::extension(f2, {{1}, {0}, {1}});  // x²+1 = (x+1)²
    FAIL("expected InvalidModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidModulus);
  }
  std::vector<Elem> wide(22, Elem{0});
  wide[0] = wide[21] = Elem{1};
  try {
    Field::extension(f2, wide);
    FAIL("expected FieldTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FieldTooLarge);
  }
}

TEST_CASE("towers from explicit moduli") {
  const auto canonical = FieldTower::build(2, 1, 2, 2);
  const auto same = FieldTower::from_moduli(2, {{1}, {1}}, {{1}, {1}, {1}}, canonical.aux_modulus());
  CHECK(same.describe() == canonical.describe());
  // x² + x + (α+1) is the other primitive choice with linear coefficient 1.
  std::vector<Elem> other = {Elem{3}, Elem{1}, Elem{1}};
  REQUIRE(is_primitive_polynomial(*canonical.fqk(), other));
  const auto alt = FieldTower::from_moduli(2, {{1}, {1}}, {{1}, {1}, {1}}, other);
  CHECK(alt.aux_modulus() == other);
  try {
    FieldTower::from_moduli(2, {{1}, {1}}, {{1}, {1}, {1}}, {Elem{1}, Elem{0}, Elem{1}});
    FAIL("expected InvalidModulus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidModulus);
  }
}

TEST_CASE("integer helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(4093));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4095));
  CHECK(prime_factors(4095) == std::vector<std::uint64_t>{3, 5, 7, 13});
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS_AS(checked_pow(2, 64), Error);
}
