#include <gtest/gtest.h>

#include <map>
#include <set>

#include "vos/codes.hpp"

using namespace vos;

namespace {

std::vector<u64> quadratic_residues(u64 p) {
  std::set<u64> r;
  for (u64 x = 1; x < p; ++x) r.insert(x * x % p);
  return {r.begin(), r.end()};
}

std::size_t weight_count(const CodeProperties& p, std::size_t w) {
  auto it = p.weight_enumerator.find(w);
  return it == p.weight_enumerator.end() ? 0 : it->second;
}

}  // namespace

TEST(SelfDualCode, GolayFromLength12) {
  for (const auto& s : enumerate_vos(12)) {
    const auto c = build_self_dual_code(s);
    EXPECT_EQ(c.length(), 24u);
    EXPECT_EQ(c.dimension(), 12u);
    const auto p = code_properties(c);
    EXPECT_TRUE(p.self_dual);
    EXPECT_TRUE(p.doubly_even);
    EXPECT_EQ(p.min_distance, 8u);
    EXPECT_EQ(weight_count(p, 8), 759u);
    EXPECT_EQ(weight_count(p, 12), 2576u);
  }
}

TEST(SelfDualCode, ExtendedHammingFromLength4) {
  const auto c = build_self_dual_code(BitSequence::from_string("1101"));
  const auto p = code_properties(c);
  EXPECT_TRUE(p.self_dual);
  EXPECT_EQ(p.min_distance, 4u);
  EXPECT_EQ(p.weight_enumerator, (std::map<std::size_t, u64>{{0, 1}, {4, 14}, {8, 1}}));
}

TEST(SelfDualCode, Length16IsDoublyEven) {
  for (const auto& s : enumerate_vos(16)) {
    const auto p = code_properties(build_self_dual_code(s));
    EXPECT_TRUE(p.self_dual);
    EXPECT_TRUE(p.doubly_even);
  }
}

TEST(SelfDualCode, SelfOrthogonalForAllSmallLengths) {
  for (u64 n = 1; n <= 16; ++n)
    for (const auto& s : enumerate_vos(n)) {
      const auto c = build_self_dual_code(s);
      ASSERT_EQ(2 * c.dimension(), c.length());
      ASSERT_TRUE(is_self_orthogonal(c)) << s.to_string();
    }
}

TEST(SelfDualCode, SampledDoublyEvenAtLengths24And40) {
  for (u64 n : {24ull, 40ull}) {
    const auto c = build_self_dual_code(*first_vos(n));
    const auto sp = sample_code_weights(c, 100000, 42);
    EXPECT_TRUE(sp.all_weights_divisible_by_4) << n;
    EXPECT_FALSE(sp.exhaustive);
  }
}

TEST(SelfDualCode, RejectsNonVeryOdd) { EXPECT_THROW(build_self_dual_code(BitSequence::from_string("11")), DomainError); }

TEST(CodeProperties, TrivialCodeIsNotSelfDual) {
  // one generator of length 2 with the second coordinate zero
  const BinaryLinearCode c(2, {CodeRow{1}});
  const auto p = code_properties(c);
  EXPECT_FALSE(p.self_dual);
  EXPECT_EQ(p.min_distance, 1u);
}

TEST(CodeProperties, DimensionLimit) {
  const auto c = build_self_dual_code(*first_vos(36));  // dimension 36
  EXPECT_THROW(code_properties(c), SizeError);
}

TEST(BinaryLinearCode, RejectsDependentRows) { EXPECT_THROW(BinaryLinearCode(4, {CodeRow{3}, CodeRow{3}}), DomainError); }

TEST(DifferenceSet, Examples) {
  const auto qr = verify_difference_set(quadratic_residues(23), 23);
  EXPECT_EQ(qr.k, 11u);
  EXPECT_EQ(qr.lambda, 5u);
  const auto fano = verify_difference_set({1, 2, 4}, 7);
  EXPECT_EQ(fano.k, 3u);
  EXPECT_EQ(fano.lambda, 1u);
  try {
    verify_difference_set({0, 1}, 5);
    FAIL() << "expected NotADifferenceSet";
  } catch (const NotADifferenceSet& e) {
    EXPECT_EQ(e.residue(), 2u);
  }
  EXPECT_THROW(verify_difference_set({1, 8}, 7), DomainError);
}

TEST(DifferenceSet, SequenceExamples) {
  const auto s23 = difference_set_sequence(verify_difference_set(quadratic_residues(23), 23));
  EXPECT_EQ(s23.size(), 12u);
  EXPECT_TRUE(is_very_odd(s23));
  const auto s7 = difference_set_sequence(verify_difference_set({1, 2, 4}, 7));
  EXPECT_EQ(s7.size(), 4u);
  EXPECT_TRUE(is_very_odd(s7));
  const auto biplane = verify_difference_set(quadratic_residues(11), 11);
  EXPECT_EQ(biplane.lambda, 2u);
  EXPECT_THROW(difference_set_sequence(biplane), DomainError);
}

// Every cyclic difference set with N <= 40 and K, lambda odd (normalized to
// contain 0 and 1). Whenever the gcd construction returns, the sequence is very
// odd of length (N+1)/2. With ord_2(N) even no such sequence exists, so it must
// refuse, as for (15,7,3) and (21,5,1). With ord_2(N) odd it can still refuse:
// for 42 of the 56 (31,15,7) sets both D(a) and D(1/a) vanish for some root a.
TEST(DifferenceSet, ExhaustiveUpTo40) {
  std::map<std::string, std::pair<int, int>> tally;  // (returned, refused)
  for (u64 n = 3; n <= 40; n += 2)
    for (u64 k = 3; k < n; k += 2) {
      if ((k * (k - 1)) % (n - 1)) continue;
      const u64 lambda = k * (k - 1) / (n - 1);
      if (lambda % 2 == 0) continue;
      const bool odd_order = mult_order(2, n) % 2 == 1;
      ASSERT_EQ(s_count((n + 1) / 2).positive, odd_order);
      const std::string key = std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(lambda);
      for (const auto& set : find_cyclic_difference_sets(n, k, true)) {
        const auto w = verify_difference_set(set, n);
        ASSERT_EQ(w.lambda, lambda);
        try {
          const auto s = difference_set_sequence(w);
          ASSERT_TRUE(odd_order) << key;
          ASSERT_EQ(s.size(), (n + 1) / 2);
          ASSERT_TRUE(is_very_odd(s));
          ++tally[key].first;
        } catch (const DomainError&) {
          ++tally[key].second;
        }
      }
    }
  const std::map<std::string, std::pair<int, int>> expected = {
      {"7,3,1", {2, 0}}, {"15,7,3", {0, 6}}, {"21,5,1", {0, 2}}, {"23,11,5", {10, 0}}, {"31,15,7", {14, 42}}};
  EXPECT_EQ(tally, expected);
}

TEST(DifferenceSet, SearchFindsKnownFamilies) {
  EXPECT_EQ(find_cyclic_difference_sets(7, 3, true).size(), 2u);  // {0,1,3} and {0,1,5}
  for (const auto& set : find_cyclic_difference_sets(31, 6, true)) EXPECT_EQ(verify_difference_set(set, 31).lambda, 1u);
  EXPECT_TRUE(find_cyclic_difference_sets(39, 19, true).empty());
  EXPECT_THROW(find_cyclic_difference_sets(41, 5), SizeError);
  for (const auto& set : find_cyclic_difference_sets(29, 21, true)) {
    (void)set;
    FAIL() << "no (29,21,15) difference set exists";
  }
}

TEST(Codes, GeneratorHexRows) {
  const auto c = build_self_dual_code(BitSequence::from_string("1101"));
  const auto rows = c.generator_hex();
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "000000000000008b");  // 1 + X + X^3 plus parity bit at position 7
}
