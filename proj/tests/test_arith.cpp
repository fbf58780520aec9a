#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "properties.hpp"
#include "vos/arith.hpp"

using namespace vos;

namespace {

std::vector<std::pair<u64, unsigned>> pairs(const Factorization& f) {
  std::vector<std::pair<u64, unsigned>> out;
  for (const auto& pp : f.factors) out.push_back({pp.prime, pp.exponent});
  return out;
}

void expect_factorization_invariants(const Factorization& f) {
  u64 product = 1;
  u64 prev = 0;
  for (const auto& pp : f.factors) {
    EXPECT_GT(pp.prime, prev);
    EXPECT_GE(pp.exponent, 1u);
    EXPECT_TRUE(is_prime(pp.prime)) << pp.prime;
    product *= pp.value();
    prev = pp.prime;
  }
  EXPECT_EQ(product, f.value);
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors.empty());
  EXPECT_EQ(pairs(factorize(49)), (std::vector<std::pair<u64, unsigned>>{{7, 2}}));
  EXPECT_EQ(pairs(factorize(174990)),
            (std::vector<std::pair<u64, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {19, 1}, {307, 1}}));
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, MatchesTrialDivisionOracle) {
  for (u64 n = 1; n <= 20000; ++n) ASSERT_EQ(pairs(factorize(n)), oracle::factorize(n)) << n;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const u64 n = 1 + rng() % 1'000'000'000'000ull;
    ASSERT_EQ(pairs(factorize(n)), oracle::factorize(n)) << n;
  }
}

TEST(Factorize, LargeSemiprimesAndPrimePowers) {
  const u64 p = 4294967291ull, q = 4294967279ull;  // largest primes below 2^32
  const auto f = factorize(p * q);
  EXPECT_EQ(pairs(f), (std::vector<std::pair<u64, unsigned>>{{q, 1}, {p, 1}}));
  expect_factorization_invariants(factorize(248407ull * 248407ull));
  u64 big = 73;
  for (int i = 0; i < 14; ++i) big *= 7;
  EXPECT_EQ(pairs(factorize(big)), (std::vector<std::pair<u64, unsigned>>{{7, 14}, {73, 1}}));
  expect_factorization_invariants(factorize((u64{1} << 63) - 25));
  expect_factorization_invariants(factorize(9223372036854775783ull));  // prime below 2^63
}

TEST(IsPrime, MatchesOracle) {
  for (u64 n = 0; n <= 100000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_TRUE(is_prime(18446744073709551557ull));
}

TEST(ArithmeticFunctions, Examples) {
  const auto a12 = arithmetic_functions(12);
  EXPECT_EQ(a12.phi, 4u);
  EXPECT_EQ(a12.moebius, 0);
  EXPECT_EQ(a12.omega, 2u);
  EXPECT_EQ(a12.omega1, 1u);
  EXPECT_EQ(a12.nu(2), 2u);
  EXPECT_EQ(a12.nu(5), 0u);
  const auto a1 = arithmetic_functions(1);
  EXPECT_EQ(a1.phi, 1u);
  EXPECT_EQ(a1.moebius, 1);
  EXPECT_EQ(a1.omega, 0u);
  EXPECT_EQ(a1.omega1, 0u);
  const auto a105 = arithmetic_functions(105);
  EXPECT_EQ(a105.moebius, -1);
  EXPECT_EQ(a105.omega, 3u);
  EXPECT_EQ(a105.omega1, 3u);
}

TEST(ArithmeticFunctions, MatchOracles) {
  for (u64 n = 1; n <= 3000; ++n) {
    const auto a = arithmetic_functions(n);
    ASSERT_EQ(a.phi, oracle::phi(n)) << n;
    ASSERT_EQ(a.moebius, oracle::moebius(n)) << n;
    ASSERT_LE(a.omega1, a.omega);
  }
}

TEST(MultOrder, Examples) {
  EXPECT_EQ(mult_order(2, 7), 3u);
  EXPECT_EQ(mult_order(2, 23), 11u);
  EXPECT_EQ(mult_order(2, 17), 8u);
  EXPECT_EQ(mult_order(2, 1), 1u);
  EXPECT_THROW(mult_order(2, 12), DomainError);
  EXPECT_THROW(mult_order(6, 9), DomainError);
}

TEST(MultOrder, MatchesRepeatedMultiplicationUpTo10k) {
  for (u64 m = 1; m <= 10000; m += 2) ASSERT_EQ(mult_order(2, m), oracle::order(2, m)) << m;
  for (u64 a : {3ull, 5ull, 10ull}) {
    for (u64 m = 1; m <= 3000; ++m) {
      if (std::gcd(a, m) != 1) continue;
      ASSERT_EQ(mult_order(a, m), oracle::order(a, m)) << a << " mod " << m;
    }
  }
}

TEST(OrderRecord, Invariants) {
  for (u64 m = 1; m <= 2000; m += 2) {
    const auto r = order_record(2, m);
    EXPECT_EQ(r.order * r.index, euler_phi(factorize(m)));
    EXPECT_EQ(pow_mod(2, r.order, m), 1 % m);
    for (const auto& pp : factorize(r.order).factors) EXPECT_NE(pow_mod(2, r.order / pp.prime, m), 1 % m);
  }
}

TEST(ResidualIndex, Examples) {
  EXPECT_EQ(residual_index(2, 7), 2u);
  EXPECT_EQ(residual_index(2, 73), 8u);
  EXPECT_EQ(residual_index(2, 1), 1u);
  EXPECT_THROW(residual_index(2, 6), DomainError);
}

TEST(IrreducibleCount, Examples) {
  EXPECT_EQ(irreducible_count(2, 7), 3u);
  EXPECT_EQ(irreducible_count(2, 49), 5u);
  EXPECT_EQ(irreducible_count(2, 79ull * 991 * 1721), 601u);
  EXPECT_EQ(irreducible_count(2, 1), 1u);
  EXPECT_THROW(irreducible_count(2, 10), DomainError);
  EXPECT_THROW(irreducible_count(6, 5), DomainError);
}

TEST(IrreducibleCount, MatchesDivisorSumOracle) {
  for (u64 n = 1; n <= 1500; n += 2) ASSERT_EQ(irreducible_count(2, n), oracle::i_q(2, n)) << n;
  for (u64 q : {3ull, 4ull, 9ull}) {
    for (u64 n = 1; n <= 600; ++n) {
      if (std::gcd(n, q) != 1) continue;
      ASSERT_EQ(irreducible_count(q, n), oracle::i_q(q, n)) << q << " " << n;
    }
  }
}

TEST(IrreducibleCount, OddWhenOrderOdd) {
  for (u64 m = 3; m <= 20000; m += 2)
    if (mult_order(2, m) % 2 == 1) { ASSERT_EQ(irreducible_count(2, m) % 2, 1u) << m; }
}

TEST(UlmerRank, Examples) {
  const auto r25 = ulmer_rank(2, 5);
  EXPECT_EQ(r25.rank, 2u);
  EXPECT_TRUE(r25.divides_p_power_plus_one);
  EXPECT_EQ(ulmer_rank(4, 5).rank, 3u);
  EXPECT_EQ(ulmer_rank(2, 1).rank, 1u);
  EXPECT_THROW(ulmer_rank(2, 3), DomainError);
  EXPECT_THROW(ulmer_rank(5, 25), DomainError);
  EXPECT_THROW(ulmer_rank(6, 5), DomainError);
}

TEST(UlmerRank, DivisibilityFlagMatchesSearch) {
  for (u64 d = 1; d <= 400; d += 2) {
    if (d % 3 == 0) continue;
    bool found = d == 1;
    u64 pk = 2 % d;
    for (u64 k = 1; k <= 2 * d && !found; ++k, pk = pk * 2 % d) found = (pk + 1) % d == 0;
    EXPECT_EQ(ulmer_rank(2, d).divides_p_power_plus_one, found) << d;
  }
}

TEST(Stufe, Examples) {
  EXPECT_EQ(stufe_level(12), 1u);
  EXPECT_EQ(stufe_level(7), 4u);
  EXPECT_EQ(stufe_level(5), 2u);
  EXPECT_FALSE(stufe_level(1).has_value());
  EXPECT_FALSE(stufe_level(2).has_value());
  EXPECT_EQ(stufe_level(14), 4u);  // K_14 = K_7
  EXPECT_EQ(stufe_level(10), 2u);
}

TEST(Stufe, FourExactlyWhenOrderOdd) {
  for (u64 m = 3; m <= 10000; m += 2)
    ASSERT_EQ(*stufe_level(m) == 4, oracle::order(2, m) % 2 == 1) << m;
}

TEST(Properties, ResidualIndexDivisibilityAndOrderLifting) {
  const auto r = props::residual_index_divisibility();
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Properties, IrreducibleCountInequalities) {
  const auto r = props::irreducible_count_inequalities();
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.checked, 500u);
}

TEST(CrtHelpers, ModInverse) {
  for (u64 m = 2; m <= 300; ++m)
    for (u64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) { ASSERT_EQ(mul_mod(a, mod_inverse(a, m), m), 1u); }
}
