#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scheme_forge/cyclotomy.hpp"
#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

using namespace scheme_forge;

namespace {

// psi(gamma^a D) by brute force: walk the powers of x with the polynomial
// oracle and take absolute traces by Frobenius summation.
std::complex<double> brute_character_sum(const FieldSpec& F, std::uint32_t N, const IndexSet& I, std::int64_t a) {
  const std::int64_t p = F.characteristic();
  const oracle::Poly m(F.modulus().begin(), F.modulus().end());
  const auto pw = oracle::powers_of_x(m, p);
  std::vector<bool> in(N, false);
  for (auto i : I) in[i] = true;
  std::complex<double> sum = 0.0;
  for (std::size_t e = 0; e < pw.size(); ++e) {
    if (!in[e % N]) continue;
    const auto x = pw[(e + static_cast<std::size_t>(a)) % pw.size()];
    sum += oracle::root_of_unity(oracle::trace(oracle::decode(x, p, F.degree()), m, p), p);
  }
  return sum;
}

}  // namespace

TEST(Cyclotomy, F9QuadraticPeriods) {
  CyclotomicSystem sys(FieldSpec::build(3, 2), 2);
  ASSERT_TRUE(sys.period(0).is_rational());
  ASSERT_TRUE(sys.period(1).is_rational());
  EXPECT_EQ(sys.period(0).rational_value(), 1);
  EXPECT_EQ(sys.period(1).rational_value(), -2);
}

TEST(Cyclotomy, PeriodSums) {
  EXPECT_EQ(CyclotomicSystem(FieldSpec::build(5, 2), 1).period(0), CycInt::integer(5, -1));
  CyclotomicSystem sys(FieldSpec::build(37, 1), 4);
  CycInt total = sys.zero();
  for (auto& e : sys.periods()) total += e;
  EXPECT_EQ(total, CycInt::integer(37, -1));
}

TEST(Cyclotomy, QuadraticPeriodDifference) {
  CyclotomicSystem sys(FieldSpec::build(37, 1), 2);
  EXPECT_NEAR(std::abs((sys.period(0) - sys.period(1)).embed()), std::sqrt(37.0), 1e-9);
}

TEST(Cyclotomy, CharacterSumMatchesBruteForce) {
  const auto F = FieldSpec::build(3, 5);
  const auto sys = build_cyclotomy(F, 11);
  const IndexSet I = {1, 3, 4, 5, 9};
  for (std::int64_t a : {0, 1, 2, 7}) {
    const auto exact = sys->character_sum(I, a).embed();
    EXPECT_NEAR(std::abs(exact - brute_character_sum(*F, 11, I, a)), 0.0, 1e-8) << a;
  }
  const auto F2 = FieldSpec::build(11, 2);
  const auto sys2 = build_cyclotomy(F2, 8);
  for (std::int64_t a = 0; a < 8; ++a) {
    EXPECT_NEAR(std::abs(sys2->character_sum(IndexSet{0, 3, 6}, a).embed() - brute_character_sum(*F2, 8, {0, 3, 6}, a)), 0.0,
                1e-8);
  }
}

TEST(Cyclotomy, CharacterSumEdgeCases) {
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 10);
  IndexSet all(10);
  for (std::uint32_t i = 0; i < 10; ++i) all[i] = i;
  for (std::int64_t a = 0; a < 10; ++a) EXPECT_EQ(sys->character_sum(all, a), CycInt::integer(3, -1));
  EXPECT_TRUE(sys->character_sum(IndexSet{}, 3).is_zero());
  EXPECT_THROW(sys->character_sum(IndexSet{10}, 0), Error);
}

TEST(Cyclotomy, ClassOf) {
  const auto F = FieldSpec::build(7, 2);
  CyclotomicSystem sys(F, 6);
  EXPECT_EQ(sys.class_of(F->gamma()), 1u);
  EXPECT_EQ(sys.class_of(F->exp(6)), 0u);
  EXPECT_EQ(sys.class_of(F->neg(1)), (F->order() - 1) / 2 % 6);
  EXPECT_THROW(sys.class_of(0), Error);
  EXPECT_THROW(CyclotomicSystem(F, 5), Error);
}

// Multiplication by p (Frobenius) fixes every period: eta_{p i} = eta_i.
TEST(Cyclotomy, FrobeniusInvariance) {
  for (auto [p, f, N] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{3, 5, 22}, {11, 3, 14}}) {
    CyclotomicSystem sys(FieldSpec::build(p, f), N);
    for (std::uint32_t i = 0; i < N; ++i) EXPECT_EQ(sys.period(i), sys.period(static_cast<std::uint32_t>(i * p % N)));
  }
}

// sigma_s(psi(x)) = psi(s x) for s in F_p, so sigma_s shifts class indices by log(s).
TEST(Cyclotomy, GaloisShiftsPeriods) {
  const auto F = FieldSpec::build(3, 5);
  CyclotomicSystem sys(F, 22);
  // 2 = -1 in F_3 and -1 = gamma^121.
  for (std::uint32_t i = 0; i < 22; ++i) EXPECT_EQ(sys.period(i).conjugate(2), sys.period((i + 121) % 22));
}
