#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "scheme_forge/error.hpp"
#include "scheme_forge/finite_field.hpp"

using namespace scheme_forge;

namespace {

oracle::Poly modulus_of(const FieldSpec& F) {
  return {F.modulus().begin(), F.modulus().end()};
}

}  // namespace

TEST(FiniteField, Orders) {
  EXPECT_EQ(FieldSpec::build(37, 3)->order(), 50653u);
  EXPECT_EQ(FieldSpec::build(3, 5)->order(), 243u);
  EXPECT_EQ(FieldSpec::build(11, 3)->order(), 1331u);
}

// Least primitive modulus, constant term first. Frozen from the brute-force
// scan below (every lexicographically smaller monic polynomial is rejected by
// the x-powers oracle).
TEST(FiniteField, FrozenModuli) {
  EXPECT_EQ(FieldSpec::build(3, 5)->modulus(), (std::vector<std::uint32_t>{1, 0, 0, 0, 2, 1}));
  EXPECT_EQ(FieldSpec::build(37, 3)->modulus(), (std::vector<std::uint32_t>{2, 0, 3, 1}));
  EXPECT_EQ(FieldSpec::build(11, 3)->modulus(), (std::vector<std::uint32_t>{3, 0, 1, 1}));
  EXPECT_EQ(FieldSpec::build(3, 2)->modulus(), (std::vector<std::uint32_t>{2, 1, 1}));
}

TEST(FiniteField, ModulusIsLeastPrimitiveByOracle) {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, std::size_t>>{{3, 2}, {3, 4}, {3, 5}, {5, 3}, {11, 2}}) {
    const auto F = FieldSpec::build(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(f));
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < f; ++i) q *= p;
    // Enumerate monic polynomials in lexicographic order, c0 most significant.
    oracle::Poly first_primitive;
    for (std::uint64_t code = 0; code < q && first_primitive.empty(); ++code) {
      oracle::Poly m(f + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = f; i-- > 0;) {
        m[i] = static_cast<std::int64_t>(c % p);
        c /= p;
      }
      m[f] = 1;
      if (m[0] == 0) continue;
      const auto pw = oracle::powers_of_x(m, p);
      std::vector<bool> seen(q, false);
      bool ok = true;
      for (auto x : pw) {
        if (x == 0 || seen[x]) {
          ok = false;
          break;
        }
        seen[x] = true;
      }
      if (ok) first_primitive = m;
    }
    EXPECT_EQ(modulus_of(*F), first_primitive) << p << "^" << f;
  }
}

TEST(FiniteField, TablesAgreeWithPolynomialOracle) {
  for (auto [p, f] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 5}, {11, 2}, {7, 3}, {2, 6}}) {
    const auto F = FieldSpec::build(p, f);
    const auto m = modulus_of(*F);
    const auto pw = oracle::powers_of_x(m, p);
    ASSERT_EQ(pw.size(), F->group_order());
    for (std::uint32_t e = 0; e < pw.size(); ++e) {
      ASSERT_EQ(F->exp(e), pw[e]);
      ASSERT_EQ(F->discrete_log(pw[e]), e);
    }
    std::mt19937_64 rng(17);
    for (int t = 0; t < 400; ++t) {
      const Element a = rng() % F->order(), b = rng() % F->order();
      const auto prod = oracle::poly_mulmod(oracle::decode(a, p, f), oracle::decode(b, p, f), m, p);
      ASSERT_EQ(F->mul(a, b), oracle::encode(prod, p));
      ASSERT_EQ(F->sub(F->add(a, b), b), a);
      if (a != 0) ASSERT_EQ(F->mul(a, F->inv(a)), 1u);
      ASSERT_EQ(static_cast<std::int64_t>(F->trace(a)), oracle::trace(oracle::decode(a, p, f), m, p));
    }
  }
}

TEST(FiniteField, TraceAndLogExamples) {
  const auto F = FieldSpec::build(3, 5);
  EXPECT_EQ(F->trace(0), 0u);
  EXPECT_EQ(F->trace(1), 2u);
  EXPECT_EQ(F->discrete_log(F->gamma()), 1u);
  EXPECT_EQ(F->discrete_log(1), 0u);
  EXPECT_EQ(F->discrete_log(F->mul(F->exp(5), F->exp(7))), 12u);
  EXPECT_EQ(F->exp(F->minus_one_log()), F->neg(1));
}

TEST(FiniteField, ZechTable) {
  const auto F = FieldSpec::build(5, 3);
  for (std::uint32_t e = 0; e < F->group_order(); ++e) {
    const Element v = F->sub(1, F->exp(e));
    if (v == 0) {
      EXPECT_EQ(F->one_minus_log(e), kNoLog);
    } else {
      EXPECT_EQ(F->exp(F->one_minus_log(e)), v);
    }
  }
}

TEST(FiniteField, FrobeniusIsAutomorphism) {
  const auto F = FieldSpec::build(7, 3);
  for (Element a = 0; a < F->order(); a += 5) {
    for (Element b = 0; b < F->order(); b += 37) {
      EXPECT_EQ(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b)));
      EXPECT_EQ(F->frobenius(F->mul(a, b)), F->mul(F->frobenius(a), F->frobenius(b)));
    }
  }
}

TEST(FiniteField, Errors) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of([] { FieldSpec::build(4, 2); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { FieldSpec::build(3, 0); }), ErrorCode::DegreeZero);
  EXPECT_EQ(code_of([] { FieldSpec::build(3, 40); }), ErrorCode::FieldTooLarge);
  const auto F = FieldSpec::build(3, 2);
  EXPECT_EQ(code_of([&] { F->discrete_log(0); }), ErrorCode::ZeroElement);
  EXPECT_EQ(code_of([&] { F->trace(9); }), ErrorCode::InvalidElement);
  EXPECT_EQ(code_of([] { FieldSpec::from_modulus(3, {1, 0, 1}); }), ErrorCode::PreconditionViolated);
}

TEST(FiniteField, SeedSkipsEarlierModuli) {
  const auto a = FieldSpec::build(3, 4);
  const auto b = FieldSpec::build(3, 4, 1);
  EXPECT_NE(a->modulus(), b->modulus());
  EXPECT_TRUE(is_primitive_polynomial(3, b->modulus()));
  EXPECT_EQ(FieldSpec::build(3, 4, 0)->modulus(), a->modulus());
}
