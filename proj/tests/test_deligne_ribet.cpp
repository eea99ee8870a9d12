#include <gtest/gtest.h>

#include "support.hpp"

using namespace wittc;
using namespace wittc::testing;

namespace {

WittVector gaussian() { return WittVector::geometric(Gauss(), {{gi(1, 0), gi(0, 1)}}); }
WittVector trace() { return WittVector::geometric(Gauss(), {{gi(1, 0), gi(0, 1)}, {gi(1, 0), gi(0, -1)}}); }

}  // namespace

TEST(Congruence, Examples) {
  EXPECT_TRUE(dr_congruent(BigInt(5), BigInt(11), BigInt(3)));
  EXPECT_TRUE(t_search(5, 11, 3));
  EXPECT_TRUE(dr_congruent(BigInt(17), BigInt(17), BigInt(9)));
  EXPECT_FALSE(dr_congruent(BigInt(2), BigInt(3), BigInt(4)));
  EXPECT_TRUE(dr_congruent(factor(10), factor(4), 6));
}

TEST(Congruence, AgreesWithTSearchExhaustively) {
  for (std::int64_t f = 1; f <= 24; ++f)
    for (std::int64_t a = 1; a <= 200; ++a)
      for (std::int64_t b = 1; b <= 200; ++b)
        ASSERT_EQ(dr_congruent(BigInt(a), BigInt(b), BigInt(f)), t_search(a, b, f)) << a << " " << b << " " << f;
}

TEST(Congruence, IsMonoidCongruence) {
  auto g = rng(60);
  std::uniform_int_distribution<std::uint64_t> d(1, 100000);
  for (int k = 0; k < 5000; ++k) {
    const std::uint64_t f = 1 + g() % 60;
    const std::uint64_t a = d(g), c = d(g);
    const std::uint64_t b = a + f * (g() % 50), e = c + f * (g() % 50);
    ASSERT_TRUE(dr_congruent(factor(a), factor(b), f));
    ASSERT_TRUE(dr_congruent(factor(a) * factor(c), factor(b) * factor(e), f));
  }
}

TEST(Congruence, Coarsening) {
  for (std::uint64_t f = 1; f <= 36; ++f)
    for (const auto& dv : divisors(factor(f))) {
      const std::uint64_t f2 = to_u64(dv.value());
      for (std::uint64_t a = 1; a <= 60; ++a)
        for (std::uint64_t b = 1; b <= 60; ++b)
          if (dr_congruent(BigInt(a), BigInt(b), BigInt(f))) ASSERT_TRUE(dr_congruent(BigInt(a), BigInt(b), BigInt(f2)));
    }
}

TEST(Quotient, Examples) {
  const DrQuotient one = dr_quotient(1);
  EXPECT_EQ(one.table, (std::vector<std::vector<std::uint64_t>>{{0}}));
  const DrQuotient six = dr_quotient(6);
  EXPECT_EQ(six.table[2][3], 0u);
  EXPECT_EQ(six.table[5][5], 1u);
  EXPECT_EQ(six.table[4][4], 4u);
  const DrQuotient four = dr_quotient(4);
  EXPECT_EQ(four.table.size(), 4u);
  EXPECT_EQ(four.table[2][2], 0u);
  EXPECT_EQ(four.to_csv(), "*,0,1,2,3\n0,0,0,0,0\n1,0,1,2,3\n2,0,2,0,2\n3,0,3,2,1\n");
}

TEST(Quotient, TableMatchesRepresentativeProducts) {
  for (std::uint64_t f : {1, 4, 6, 12}) {
    const DrQuotient q = dr_quotient(f);
    std::vector<std::vector<std::optional<std::uint64_t>>> seen(f, std::vector<std::optional<std::uint64_t>>(f));
    for (std::uint64_t m = 1; m <= 10000; m += 7)
      for (std::uint64_t n = 1; n <= 10000; n += 13) {
        const std::uint64_t cls = q.class_of(BigInt(m) * n);
        auto& slot = seen[q.class_of(m)][q.class_of(n)];
        ASSERT_TRUE(!slot || *slot == cls);
        slot = cls;
      }
    for (std::uint64_t r = 0; r < f; ++r)
      for (std::uint64_t s = 0; s < f; ++s) {
        ASSERT_TRUE(seen[r][s].has_value());
        ASSERT_EQ(q.table[r][s], *seen[r][s]);
      }
    // Identity and commutativity.
    for (std::uint64_t r = 0; r < f; ++r) {
      ASSERT_EQ(q.table[1 % f][r], r);
      for (std::uint64_t s = 0; s < f; ++s) ASSERT_EQ(q.table[r][s], q.table[s][r]);
    }
  }
}

TEST(Periodicity, Examples) {
  EXPECT_TRUE(periodicity_check(gaussian(), 4, 0).holds);
  const auto two = periodicity_check(gaussian(), 2, 0);
  EXPECT_FALSE(two.holds);
  EXPECT_TRUE(two.exact);
  EXPECT_EQ(two.a, 1u);
  EXPECT_EQ(two.b, 3u);
  EXPECT_TRUE(periodicity_check(WittVector::constant(Z(), zi(3)), 1, 0).holds);
}

TEST(Periodicity, ExactAgreesWithScan) {
  const std::vector<WittVector> vs{gaussian(), trace(), canonical_witt(6, 1), canonical_witt(3, 2),
                                   WittVector::periodic(Z(), 6, {zi(1), zi(0), zi(0), zi(1), zi(0), zi(0)})};
  for (const auto& xi : vs)
    for (std::uint64_t f = 1; f <= 30; ++f) {
      bool scan = true;
      for (std::uint64_t a = 1; a <= 200; ++a) scan = scan && coefficient(xi, a) == coefficient(xi, a + f);
      ASSERT_EQ(periodicity_check(xi, f, 0).holds, scan) << f;
    }
}

TEST(Periodicity, TableScan) {
  std::vector<QuadInt> v;
  for (int n = 1; n <= 100; ++n) v.push_back(zi(n % 3));
  const WittVector t = WittVector::table(Z(), v);
  const auto r = periodicity_check(t, 3, 100);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.exact);
  EXPECT_FALSE(periodicity_check(t, 2, 100).holds);
}

TEST(MinimalModulus, Examples) {
  EXPECT_EQ(minimal_modulus(gaussian()).modulus, 4u);
  EXPECT_EQ(minimal_modulus(trace()).modulus, 4u);
  EXPECT_EQ(minimal_modulus(WittVector::constant(Z(), zi(8))).modulus, 1u);
  EXPECT_EQ(minimal_modulus(WittVector::geometric(Z(), {{zi(1), zi(2)}})).status, ModulusStatus::none);
  EXPECT_EQ(minimal_modulus(WittVector::table(Z(), {zi(1)})).status, ModulusStatus::inconclusive);
}

TEST(MinimalModulus, PeriodicAtAllMultiples) {
  for (const auto& xi : {gaussian(), trace(), canonical_witt(6, 1), canonical_witt(3, 1), load("gaussian_periodic.json"),
                         load("trace_periodic.json"), load("const_7.json")}) {
    const auto m = minimal_modulus(xi);
    ASSERT_EQ(m.status, ModulusStatus::found);
    for (std::uint64_t k = 1; k <= 12; ++k) ASSERT_TRUE(periodicity_check(xi, k * m.modulus, 0).holds);
    for (std::uint64_t f = 1; f < m.modulus; ++f) ASSERT_FALSE(periodicity_check(xi, f, 0).holds);
  }
}

TEST(MinimalModulus, MatchesReportAcrossFixtures) {
  for (const char* name : {"gaussian.json", "gaussian_periodic.json", "trace.json", "trace_periodic.json", "pow_2.json", "pow_3.json",
                           "pow_5.json", "pow_10.json", "two_plus_three.json", "two_pow_plus_i.json", "const_7.json", "const_0.json"}) {
    const WittVector xi = load(name);
    const bool has_modulus = minimal_modulus(xi).status == ModulusStatus::found;
    const bool proven = integrality_report(xi).overall() == Verdict::proven;
    EXPECT_EQ(has_modulus, proven) << name;
  }
}
