#include <gtest/gtest.h>

#include "support.hpp"

using namespace wittc;
using namespace wittc::testing;

namespace {

std::map<std::uint64_t, unsigned> trial_factor(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  if (n > 1) ++out[n];
  return out;
}

std::uint64_t count_divisors(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

}  // namespace

TEST(Factor, Examples) {
  EXPECT_TRUE(factor(1).is_unit());
  EXPECT_EQ(factor(12).exponents(), (std::map<std::uint64_t, unsigned>{{2, 2}, {3, 1}}));
  EXPECT_EQ(factor(510).exponents(), (std::map<std::uint64_t, unsigned>{{2, 1}, {3, 1}, {5, 1}, {17, 1}}));
  EXPECT_THROW(factor(std::uint64_t{0}), std::invalid_argument);
  EXPECT_THROW(factor(BigInt(-3)), std::invalid_argument);
}

TEST(Factor, AgreesWithTrialDivision) {
  for (std::uint64_t n = 1; n <= 20000; ++n) ASSERT_EQ(factor(n).exponents(), trial_factor(n)) << n;
}

TEST(Factor, LargeSemiprimes) {
  const std::uint64_t p = 1'000'000'007ULL, q = 998'244'353ULL;
  EXPECT_EQ(factor(p * q).exponents(), (std::map<std::uint64_t, unsigned>{{q, 1}, {p, 1}}));
  EXPECT_EQ(factor(p * q).value(), BigInt(p) * q);
  EXPECT_THROW(factor(ipow(BigInt(2), 70)), std::out_of_range);
}

TEST(Factor, MonoidIsomorphism) {
  auto g = rng(20);
  std::uniform_int_distribution<std::uint64_t> d(1, 1'000'000);
  for (int k = 0; k < 500; ++k) {
    const std::uint64_t m = d(g), n = d(g);
    ASSERT_EQ(factor(m * n), factor(m) * factor(n));
    ASSERT_EQ(factor(m).value(), m);
  }
}

TEST(Factor, WordIsAscending) {
  EXPECT_EQ(factor(360).word(), (std::vector<std::uint64_t>{2, 2, 2, 3, 3, 5}));
  EXPECT_TRUE(factor(1).word().empty());
}

TEST(DivisorCount, Examples) {
  EXPECT_EQ(divisor_count(IdealQ()), 1u);
  EXPECT_EQ(divisor_count(factor(4)), 3u);
  EXPECT_EQ(divisor_count(factor(12)), 6u);
  EXPECT_EQ(divisors(factor(12)).size(), 6u);
}

TEST(DivisorCount, AgreesWithEnumeration) {
  for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_EQ(divisor_count(factor(n)), count_divisors(n)) << n;
}

TEST(DivisorCount, MultiplicativeOnCoprimeSupport) {
  auto g = rng(21);
  std::uniform_int_distribution<std::uint64_t> d(1, 5000);
  for (int k = 0; k < 500; ++k) {
    const std::uint64_t m = d(g), n = d(g);
    if (std::gcd(m, n) != 1) continue;
    ASSERT_EQ(divisor_count(factor(m * n)), divisor_count(factor(m)) * divisor_count(factor(n)));
  }
}

TEST(IdealQ, Divisibility) {
  EXPECT_TRUE(factor(4).divides(factor(12)));
  EXPECT_FALSE(factor(8).divides(factor(12)));
  EXPECT_EQ(factor(360).valuation(3), 2u);
}

TEST(NormIdeal, Examples) {
  const PrimeOfL P2 = split_prime(2, Gauss())[0];
  const PrimeOfL P3 = split_prime(3, Gauss())[0];
  const PrimeOfL P5 = split_prime(5, Gauss())[0];
  EXPECT_TRUE(norm_ideal(IdealL(Gauss(), {})).is_unit());
  EXPECT_EQ(norm_ideal(IdealL::prime(P3)).value(), 9);
  EXPECT_EQ(norm_ideal(IdealL::prime(P2) * IdealL::prime(P5)).value(), 10);
}

TEST(NormIdeal, Multiplicative) {
  auto g = rng(22);
  std::vector<PrimeOfL> primes;
  for (std::uint64_t p : {2, 3, 5, 7, 13, 17})
    for (const auto& P : split_prime(p, Gauss())) primes.push_back(P);
  auto random_ideal = [&] {
    std::map<PrimeOfL, unsigned> m;
    for (const auto& P : primes) m[P] = static_cast<unsigned>(g() % 3);
    return IdealL(Gauss(), m);
  };
  for (int k = 0; k < 200; ++k) {
    const IdealL A = random_ideal(), B = random_ideal();
    ASSERT_EQ(norm_ideal(A * B), norm_ideal(A) * norm_ideal(B));
    // The norm of a principal ideal is the absolute norm of its generator.
    QuadInt gen = gi(1, 0);
    for (const auto& [P, e] : A.exponents()) gen = gen * P.generator.pow(e);
    ASSERT_EQ(norm_ideal(A).value(), abs(gen.norm()));
  }
}

TEST(IdealL, PrimeOfGenerator) {
  EXPECT_EQ(prime_of_generator(gi(1, -1)).generator, gi(1, 1));
  EXPECT_EQ(prime_of_generator(gi(-1, 2)).generator, gi(2, 1));
  EXPECT_EQ(prime_of_generator(gi(3, 0)).inertia_degree, 2u);
  EXPECT_THROW(prime_of_generator(gi(5, 0)), std::invalid_argument);
  EXPECT_THROW(prime_of_generator(gi(1, 0)), std::invalid_argument);
}

TEST(IdealL, Labels) {
  const IdealL A = IdealL::prime(split_prime(2, Gauss())[0], 2) * IdealL::prime(split_prime(3, Gauss())[0]);
  EXPECT_EQ(A.labels(), (std::vector<std::string>{"1+1*w", "1+1*w", "3"}));
}
