#pragma once

// Binary linear codes from very odd sequences, and cyclic difference sets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vos/errors.hpp"
#include "vos/gf2poly.hpp"
#include "vos/parallel.hpp"
#include "vos/sequences.hpp"

namespace vos {

using CodeRow = std::vector<u64>;  // bit j of the row is coordinate j

class BinaryLinearCode {
 public:
  // Rows must be linearly independent over F_2.
  BinaryLinearCode(std::size_t length, std::vector<CodeRow> rows) : length_(length), rows_(std::move(rows)) {
    if (length == 0 || rows_.empty()) throw DomainError("BinaryLinearCode: empty code");
    const std::size_t words = (length + 63) / 64;
    for (auto& r : rows_) {
      if (r.size() > words) throw DomainError("BinaryLinearCode: row longer than code length");
      r.resize(words, 0);
      if (length % 64 && (r.back() >> (length % 64)) != 0)
        throw DomainError("BinaryLinearCode: row has bits beyond code length");
    }
    if (rank() != rows_.size()) throw DomainError("BinaryLinearCode: generator rows are dependent");
  }

  std::size_t length() const { return length_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<CodeRow>& generator() const { return rows_; }

  // Each row as lowercase hex words, least-significant word first.
  std::vector<std::string> generator_hex() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(Gf2Poly::from_words(r).to_hex());
    return out;
  }

 private:
  std::size_t rank() const {
    std::vector<CodeRow> m = rows_;
    std::size_t r = 0;
    for (std::size_t col = 0; col < length_ && r < m.size(); ++col) {
      const std::size_t w = col / 64;
      const u64 bit = u64{1} << (col % 64);
      auto pivot = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(r), m.end(),
                                [&](const CodeRow& row) { return row[w] & bit; });
      if (pivot == m.end()) continue;
      std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(r), pivot);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (i != r && (m[i][w] & bit))
          for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] ^= m[r][k];
      ++r;
    }
    return r;
  }

  std::size_t length_;
  std::vector<CodeRow> rows_;
};

inline std::size_t row_weight(const CodeRow& r) {
  std::size_t w = 0;
  for (u64 x : r) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

inline bool inner_product(const CodeRow& a, const CodeRow& b) {
  u64 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

// G G^T = 0 over F_2.
inline bool is_self_orthogonal(const BinaryLinearCode& c) {
  const auto& g = c.generator();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j)
      if (inner_product(g[i], g[j])) return false;
  return true;
}

// Cyclic code of length 2n-1 generated by b(X), extended by an overall parity bit.
inline BinaryLinearCode build_self_dual_code(const BitSequence& s) {
  if (!is_very_odd(s)) throw DomainError("build_self_dual_code: sequence is not very odd");
  const std::size_t n = s.size();
  const std::size_t cyclic_length = 2 * n - 1;
  const Gf2Poly b = s.to_poly();
  std::vector<CodeRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    CodeRow row((2 * n + 63) / 64, 0);
    Gf2Poly::xor_shifted(row, b.words(), i);
    // deg b + i <= 2n - 2, so no wrap-around is needed
    if (row_weight(row) % 2) row[cyclic_length / 64] |= u64{1} << (cyclic_length % 64);
    rows.push_back(std::move(row));
  }
  return BinaryLinearCode(2 * n, std::move(rows));
}

inline constexpr std::size_t kMaxExhaustiveDimension = 28;

struct CodeProperties {
  bool self_dual = false;
  bool doubly_even = false;
  std::size_t min_distance = 0;
  std::map<std::size_t, u64> weight_enumerator;  // weight -> number of codewords
};

// Exact weight distribution by a Gray-code walk over all 2^k codewords. The
// walk is split on the top generator bits so each worker covers a coset.
inline CodeProperties code_properties(const BinaryLinearCode& c) {
  const std::size_t k = c.dimension();
  if (k > kMaxExhaustiveDimension)
    throw SizeError("code_properties: dimension " + std::to_string(k) + " exceeds exhaustive limit", k);
  const auto& g = c.generator();
  const std::size_t words = g.front().size();
  const std::size_t split_bits = std::min<std::size_t>(k, 6);
  const std::size_t low_bits = k - split_bits;
  auto chunks = parallel_chunks<std::vector<u64>>(u64{1} << split_bits, [&](u64 begin, u64 end) {
    std::vector<u64> hist(c.length() + 1, 0);
    CodeRow word(words, 0);
    for (u64 high = begin; high < end; ++high) {
      std::fill(word.begin(), word.end(), 0);
      for (std::size_t j = 0; j < split_bits; ++j)
        if ((high >> j) & 1)
          for (std::size_t w = 0; w < words; ++w) word[w] ^= g[low_bits + j][w];
      ++hist[row_weight(word)];
      for (u64 step = 1; step < (u64{1} << low_bits); ++step) {
        const auto& row = g[static_cast<std::size_t>(std::countr_zero(step))];
        for (std::size_t w = 0; w < words; ++w) word[w] ^= row[w];
        ++hist[row_weight(word)];
      }
    }
    return hist;
  });
  CodeProperties props;
  std::vector<u64> hist(c.length() + 1, 0);
  for (const auto& h : chunks)
    for (std::size_t w = 0; w < h.size(); ++w) hist[w] += h[w];
  props.doubly_even = true;
  for (std::size_t w = 0; w < hist.size(); ++w) {
    if (!hist[w]) continue;
    props.weight_enumerator[w] = hist[w];
    if (w % 4) props.doubly_even = false;
    if (w > 0 && props.min_distance == 0) props.min_distance = w;
  }
  props.self_dual = 2 * k == c.length() && is_self_orthogonal(c);
  return props;
}

// Non-exhaustive check for codes too large to enumerate: random codewords only.
struct SampledProperties {
  u64 samples = 0;
  std::size_t min_weight_upper_bound = 0;  // smallest nonzero weight seen; 0 if none
  bool all_weights_divisible_by_4 = true;
  bool exhaustive = false;
};

inline SampledProperties sample_code_weights(const BinaryLinearCode& c, u64 samples, u64 seed = 1) {
  const auto& g = c.generator();
  std::mt19937_64 rng(seed);
  SampledProperties out;
  out.samples = samples;
  CodeRow word(g.front().size());
  for (u64 s = 0; s < samples; ++s) {
    std::fill(word.begin(), word.end(), 0);
    for (const auto& row : g)
      if (rng() & 1)
        for (std::size_t w = 0; w < word.size(); ++w) word[w] ^= row[w];
    const std::size_t wt = row_weight(word);
    if (wt % 4) out.all_weights_divisible_by_4 = false;
    if (wt && (out.min_weight_upper_bound == 0 || wt < out.min_weight_upper_bound)) out.min_weight_upper_bound = wt;
  }
  return out;
}

struct DifferenceSetWitness {
  u64 modulus;
  std::vector<u64> set;  // sorted distinct residues
  u64 k;
  u64 lambda;
};

class NotADifferenceSet : public DomainError {
 public:
  NotADifferenceSet(const std::string& what, u64 residue) : DomainError(what), residue_(residue) {}
  u64 residue() const noexcept { return residue_; }

 private:
  u64 residue_;
};

// Checks that every nonzero residue occurs equally often as d - d' (mod N).
inline DifferenceSetWitness verify_difference_set(std::vector<u64> set, u64 modulus) {
  if (modulus == 0) throw DomainError("verify_difference_set: modulus must be positive");
  if (set.empty()) throw DomainError("verify_difference_set: set must be nonempty");
  for (auto& d : set) d %= modulus;
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end())
    throw DomainError("verify_difference_set: residues must be distinct");
  std::vector<u64> counts(modulus, 0);
  for (u64 a : set)
    for (u64 b : set)
      if (a != b) ++counts[(a + modulus - b) % modulus];
  const u64 lambda = modulus > 1 ? counts[1] : 0;
  for (u64 r = 2; r < modulus; ++r)
    if (counts[r] != lambda)
      throw NotADifferenceSet("not a difference set: residue " + std::to_string(r) + " occurs " +
                                  std::to_string(counts[r]) + " times, residue 1 occurs " + std::to_string(lambda),
                              r);
  const u64 k = set.size();
  return {modulus, std::move(set), k, lambda};
}

// The generator b(X) = gcd(D(X), X^N + 1) of the cyclic code spanned by the
// indicator polynomial of D, read as a sequence of length (N+1)/2. Reduction
// mod 2 gives D(X) D(X^{-1}) = 1 + X + ... + X^{N-1} when K and lambda are odd.
// When some root of X^N + 1 and its inverse are both roots of D(X), b has the
// wrong degree and the construction fails. That happens for every (15,7,3) and
// (21,5,1) set, and for most (31,15,7) sets even though ord_2(31) is odd.
inline BitSequence difference_set_sequence(const DifferenceSetWitness& w) {
  if (w.k % 2 == 0 || w.lambda % 2 == 0)
    throw DomainError("difference_set_sequence: K and lambda must both be odd");
  if (w.modulus % 2 == 0) throw DomainError("difference_set_sequence: N must be odd");
  Gf2Poly indicator;
  for (u64 d : w.set) indicator.set_coefficient(d, true);
  const Gf2Poly cyclic = Gf2Poly::from_exponents({static_cast<std::size_t>(w.modulus), 0});
  const Gf2Poly b = gcd(indicator, cyclic);
  const std::size_t n = (w.modulus + 1) / 2;
  if (*b.degree() != n - 1)
    throw DomainError("difference_set_sequence: gcd(D(X), X^N+1) has degree " + std::to_string(*b.degree()) +
                      ", expected " + std::to_string(n - 1) + "; no very odd sequence arises");
  BitSequence s = BitSequence::from_poly(b, n);
  if (!is_very_odd(s)) throw DomainError("difference_set_sequence: construction did not yield a very odd sequence");
  return s;
}

namespace detail {

// Necessary condition from the image of D in Z_m for m | N: the multiplicities
// a_0..a_{m-1} (each <= N/m) satisfy sum a_i = K and, for every shift j != 0,
// sum_i a_i a_{i+j} = lambda N / m. Returns false when no such vector exists.
inline bool contraction_feasible(u64 modulus, u64 k, u64 lambda, u64 m) {
  const u64 cap = modulus / m;
  const u64 target = lambda * modulus / m;
  std::vector<u64> a(m, 0);
  std::function<bool(u64, u64)> fill = [&](u64 i, u64 left) -> bool {
    if (i + 1 == m) {
      if (left > cap) return false;
      a[i] = left;
      for (u64 j = 1; j < m; ++j) {
        u64 sum = 0;
        for (u64 t = 0; t < m; ++t) sum += a[t] * a[(t + j) % m];
        if (sum != target) return false;
      }
      return true;
    }
    for (u64 v = 0; v <= std::min(cap, left); ++v) {
      a[i] = v;
      if (fill(i + 1, left - v)) return true;
    }
    return false;
  };
  return fill(0, k);
}

// All translates of `set` that contain 0, and 1 as well when requested.
inline std::vector<std::vector<u64>> normalized_translates(const std::vector<u64>& set, u64 modulus,
                                                           bool contain_one) {
  std::vector<std::vector<u64>> out;
  for (u64 a : set) {
    std::vector<u64> t;
    for (u64 d : set) t.push_back((d + modulus - a) % modulus);
    std::sort(t.begin(), t.end());
    if (contain_one && !std::binary_search(t.begin(), t.end(), u64{1})) continue;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

// Exhaustive backtracking search for cyclic (N, K, lambda) difference sets,
// normalized to contain 0; every difference set has such a translate. With
// `contain_one` they are also normalized to contain 1, which a translate always
// achieves because 1 occurs lambda >= 1 times as a difference. Parameters with
// 2K > N are searched through complements, and parameters failing the Z_m
// contraction test for a small divisor m of N are rejected outright.
// Intended for N <= 40.
inline std::vector<std::vector<u64>> find_cyclic_difference_sets(u64 modulus, u64 k, bool contain_one = false) {
  if (modulus < 2 || modulus > 40) throw SizeError("find_cyclic_difference_sets: N must be in [2, 40]", modulus);
  if (k < 2 || k >= modulus || (k * (k - 1)) % (modulus - 1) != 0) return {};
  const u64 lambda = k * (k - 1) / (modulus - 1);
  if (contain_one && lambda == 0) return {};
  for (u64 m = 2; m <= 10 && m < modulus; ++m)
    if (modulus % m == 0 && !detail::contraction_feasible(modulus, k, lambda, m)) return {};

  if (2 * k > modulus && modulus - k >= 2) {
    std::vector<std::vector<u64>> found;
    for (const auto& c : find_cyclic_difference_sets(modulus, modulus - k, false)) {
      std::vector<u64> comp;
      for (u64 x = 0, i = 0; x < modulus; ++x) {
        if (i < c.size() && c[i] == x)
          ++i;
        else
          comp.push_back(x);
      }
      for (auto& t : detail::normalized_translates(comp, modulus, contain_one)) found.push_back(std::move(t));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  }

  std::vector<std::vector<u64>> found;
  std::vector<u64> set{0};
  std::vector<u64> counts(modulus, 0);
  std::function<void(u64)> extend = [&](u64 next) {
    if (set.size() == k) {
      found.push_back(set);
      return;
    }
    for (u64 x = next; x + (k - set.size()) <= modulus; ++x) {
      bool ok = true;
      std::size_t added = 0;
      for (; added < set.size(); ++added) {
        const u64 y = set[added];
        const u64 d1 = (x + modulus - y) % modulus, d2 = (y + modulus - x) % modulus;
        ++counts[d1];
        ++counts[d2];
        if (counts[d1] > lambda || counts[d2] > lambda) {
          ok = false;
          ++added;
          break;
        }
      }
      if (ok) {
        set.push_back(x);
        extend(x + 1);
        set.pop_back();
      }
      for (std::size_t i = 0; i < added; ++i) {
        const u64 y = set[i];
        --counts[(x + modulus - y) % modulus];
        --counts[(y + modulus - x) % modulus];
      }
      if (contain_one && set.size() == 1) break;  // second element pinned to 1
    }
  };
  extend(1);
  return found;
}

}  // namespace vos
