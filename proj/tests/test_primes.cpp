#include <gtest/gtest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "vos/primes.hpp"

using namespace vos;

namespace {

SearchSpec spec_p2_mod3() {
  SearchSpec s;
  s.index_m = 2;
  s.required = {{1, 3}};
  return s;
}

SearchSpec spec_p2_mod15() {
  SearchSpec s;
  s.index_m = 2;
  s.required = {{1, 15}};
  s.forbidden = {{1, 13}};
  return s;
}

SearchSpec spec_p8() {
  SearchSpec s;
  s.index_m = 8;
  s.required = {{2, 3}, {1, 5}};
  s.forbidden = {{1, 11}, {1, 13}};
  return s;
}

}  // namespace

TEST(ForEachPrime, MatchesOracle) {
  std::vector<u64> got;
  for_each_prime(1, 200000, [&](u64 p) { got.push_back(p); });
  std::vector<u64> want;
  for (u64 n = 0; n <= 200000; ++n)
    if (oracle::is_prime(n)) want.push_back(n);
  EXPECT_EQ(got, want);
  std::vector<u64> window;
  for_each_prime(1000000, 1000100, [&](u64 p) { window.push_back(p); });
  EXPECT_EQ(window, (std::vector<u64>{1000003, 1000033, 1000037, 1000039, 1000081, 1000099}));
}

TEST(ClassifyPrime, Examples) {
  const auto c7 = classify_prime(7);
  EXPECT_TRUE(c7.in_P);
  EXPECT_EQ(c7.ord2, 3u);
  EXPECT_EQ(c7.index_m, 2u);
  EXPECT_TRUE(c7.in_Pm_prime);
  const auto c1093 = classify_prime(1093);
  EXPECT_TRUE(c1093.wieferich);
  EXPECT_FALSE(c1093.in_P);
  EXPECT_EQ(c1093.ord2, 364u);
  const auto c3511 = classify_prime(3511);
  EXPECT_TRUE(c3511.in_Pm);
  EXPECT_EQ(c3511.index_m, 2u);
  EXPECT_FALSE(c3511.in_Pm_prime);
  EXPECT_THROW(classify_prime(91), DomainError);
  EXPECT_THROW(classify_prime(2), DomainError);
}

TEST(ClassifyPrime, InvariantsUpTo1e6) {
  for (u64 p : primes_up_to(1'000'000)) {
    if (p == 2) continue;
    const auto c = classify_prime(p);
    ASSERT_EQ(c.ord2 * c.index_m, p - 1);
    if (c.in_Pm) { ASSERT_EQ(((p - 1) / c.index_m) % 2, 1u); }
    if (c.in_Pm_prime) { ASSERT_TRUE(c.in_Pm); }
    if (c.in_Pm && !c.in_Pm_prime) { ASSERT_TRUE(c.wieferich) << p; }
    if (p <= 20000) { ASSERT_EQ(c.ord2, oracle::order(2, p)); }
  }
}

TEST(ClassifyPrime, MembersOfPAreCongruentToPlusMinusOneMod8) {
  for (u64 p : primes_up_to(100'000))
    if (p > 2 && classify_prime(p).in_P) { ASSERT_TRUE(p % 8 == 1 || p % 8 == 7) << p; }
}

TEST(PmMembers, Examples) {
  EXPECT_EQ(pm_members(2, 100), (std::vector<u64>{7, 23, 47, 71, 79}));
  EXPECT_TRUE(pm_members(3, 100'000).empty());
  EXPECT_TRUE(pm_members(4, 100'000).empty());
  EXPECT_THROW(pm_members(0, 10), DomainError);
}

TEST(PmMembers, PartitionOfP) {
  std::set<u64> in_p;
  for (u64 p : primes_up_to(100'000))
    if (p > 2 && classify_prime(p).in_P) in_p.insert(p);
  std::set<u64> joined;
  std::size_t total = 0;
  for (u64 m = 2; m <= 100'000; m += 2) {
    if (nu2(m) == 2) {
      ASSERT_TRUE(pm_members(m, 2000).empty()) << m;
      continue;
    }
    if (m > 400) break;  // larger indices are covered by the classification below
    const auto v = pm_members(m, 100'000);
    total += v.size();
    joined.insert(v.begin(), v.end());
  }
  EXPECT_EQ(total, joined.size());  // pairwise disjoint
  std::size_t high_index = 0;
  for (u64 p : in_p)
    if (classify_prime(p).index_m > 400) ++high_index;
  EXPECT_EQ(joined.size() + high_index, in_p.size());
  for (u64 p : joined) EXPECT_TRUE(in_p.count(p));
}

TEST(WieferichScan, Examples) {
  EXPECT_EQ(wieferich_scan(1'000'000), (std::vector<u64>{1093, 3511}));
  EXPECT_TRUE(wieferich_scan(1000).empty());
  EXPECT_EQ(wieferich_scan(1093), std::vector<u64>{1093});
}

TEST(CrtMerge, Basic) {
  const auto c = crt_merge({2, 3}, {1, 5});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->modulus, 15u);
  EXPECT_EQ(c->residue, 11u);
  EXPECT_FALSE(crt_merge({1, 4}, {2, 6}));
  const auto d = crt_merge({1, 4}, {5, 6});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->modulus, 12u);
  EXPECT_EQ(d->residue, 5u);
}

TEST(ConstrainedSearch, SmallestMatchesAndExampleWitnesses) {
  // the smallest solutions; the witnesses quoted in the literature are larger members
  EXPECT_EQ(constrained_prime_search(spec_p2_mod3()), 7u);
  EXPECT_EQ(constrained_prime_search(spec_p2_mod15()), 271u);
  EXPECT_EQ(constrained_prime_search(spec_p8()), 1721u);
  auto s1 = spec_p2_mod3();
  s1.lower = 7;
  EXPECT_EQ(constrained_prime_search(s1), 79u);
  const auto all = constrained_primes(spec_p2_mod15(), 3);
  EXPECT_EQ(all, (std::vector<u64>{271, 751, 991}));
}

TEST(ConstrainedSearch, ResultsMatchFilteredScan) {
  const auto got = constrained_primes(spec_p8());
  std::vector<u64> want;
  for (u64 p : primes_up_to(spec_p8().bound)) {
    if (p < 3 || p % 3 != 2 || p % 5 != 1 || p % 11 == 1 || p % 13 == 1) continue;
    const auto c = classify_prime(p);
    if (c.in_P && c.index_m == 8) want.push_back(p);
  }
  EXPECT_EQ(got, want);
}

TEST(ConstrainedSearch, NotFoundAndInconsistent) {
  SearchSpec s = spec_p8();
  s.bound = 1000;
  EXPECT_FALSE(constrained_prime_search(s).has_value());
  SearchSpec bad;
  bad.index_m = 2;
  bad.required = {{1, 4}, {2, 6}};
  EXPECT_THROW(constrained_prime_search(bad), DomainError);
}

TEST(ConstrainedSearch, DiscoveryIndex114) {
  SearchSpec s;
  s.index_m = 114;
  s.non_wieferich_at_m = true;
  s.bound = 300'000;
  EXPECT_EQ(constrained_prime_search(s), 248407u);
}

TEST(ExchangePrinciple, Sampled) {
  const auto r = props::exchange_principle(50);
  EXPECT_TRUE(r.ok) << r.detail;
}

TEST(ExchangePrinciple, GeneralizedSampled) {
  const auto r = props::generalized_exchange(30);
  EXPECT_TRUE(r.ok) << r.detail;
}
