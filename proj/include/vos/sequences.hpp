#pragma once

// Very odd sequences: 0/1 sequences a_1..a_n whose aperiodic autocorrelations
// A_k = sum_i a_i a_{i+k} are odd for every 0 <= k <= n-1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vos/arith.hpp"
#include "vos/errors.hpp"
#include "vos/gf2poly.hpp"
#include "vos/parallel.hpp"

namespace vos {

// a_1..a_n; a_{i+1} is stored at bit i, which makes the bit vector the
// coefficient vector of the associated polynomial b(X) = sum a_{k+1} X^k.
class BitSequence {
 public:
  explicit BitSequence(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {
    if (length == 0) throw DomainError("BitSequence: length must be >= 1");
  }

  // Leftmost character is a_1.
  static BitSequence from_string(std::string_view bits) {
    BitSequence s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw DomainError("BitSequence: expected only '0' and '1'");
      s.set(i, bits[i] == '1');
    }
    return s;
  }

  static BitSequence from_poly(const Gf2Poly& b, std::size_t length) {
    if (b.degree() && *b.degree() >= length) throw DomainError("BitSequence: polynomial degree exceeds length");
    BitSequence s(length);
    const auto& w = b.words();
    std::copy(w.begin(), w.end(), s.words_.begin());
    return s;
  }

  std::string to_string() const {
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
      if (get(i)) out[i] = '1';
    return out;
  }

  Gf2Poly to_poly() const { return Gf2Poly::from_words(words_); }

  std::size_t size() const { return length_; }

  // 0-based: get(i) is a_{i+1}.
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  void set(std::size_t i, bool v) {
    if (v)
      words_[i / 64] |= u64{1} << (i % 64);
    else
      words_[i / 64] &= ~(u64{1} << (i % 64));
  }

  const std::vector<u64>& words() const { return words_; }

  friend bool operator==(const BitSequence&, const BitSequence&) = default;
  friend auto operator<=>(const BitSequence& a, const BitSequence& b) { return a.to_string() <=> b.to_string(); }

 private:
  std::size_t length_;
  std::vector<u64> words_;
};

// A_k = popcount(a AND (a >> k)), computed word-wise.
inline std::vector<u64> autocorrelation_profile(const BitSequence& s) {
  const auto& w = s.words();
  const std::size_t n = s.size();
  std::vector<u64> profile(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t ws = k / 64, bs = k % 64;
    u64 total = 0;
    for (std::size_t i = 0; i + ws < w.size(); ++i) {
      u64 shifted = w[i + ws] >> bs;
      if (bs && i + ws + 1 < w.size()) shifted |= w[i + ws + 1] << (64 - bs);
      total += static_cast<u64>(std::popcount(w[i] & shifted));
    }
    profile[k] = total;
  }
  return profile;
}

inline bool is_very_odd(const BitSequence& s) {
  const auto profile = autocorrelation_profile(s);
  return std::all_of(profile.begin(), profile.end(), [](u64 a) { return a % 2 == 1; });
}

// S(n) is either 0 or 2^exponent. The exponent is kept separately because it
// can exceed 63 long before 2n-1 leaves 64-bit range.
struct SCount {
  bool positive = false;
  u64 exponent = 0;

  std::optional<u64> value() const {
    if (!positive) return 0;
    if (exponent >= 64) return std::nullopt;
    return u64{1} << exponent;
  }
  std::string to_string() const {
    if (auto v = value()) return std::to_string(*v);
    return "2^" + std::to_string(exponent);
  }
};

// S(n) = 0 if ord_2(2n-1) is even, else 2^{(i_2(2n-1)-1)/2}.
inline SCount s_count(u64 n) {
  if (n == 0) throw DomainError("s_count: n must be >= 1");
  if (n > (u64{1} << 62)) throw DomainError("s_count: 2n-1 exceeds 2^63");
  const u64 m = 2 * n - 1;
  if (m == 1) return {true, 0};
  const Factorization f = factorize(m);
  if (mult_order(2, f) % 2 == 0) return {false, 0};
  return {true, (irreducible_count(2, f) - 1) / 2};
}

inline constexpr u64 kDefaultEnumerationCap = u64{1} << 20;

namespace detail {

// The nontrivial irreducible factors of X^m + 1 (m odd) grouped into reciprocal
// pairs (f, f*), each pair listed with its smaller member first.
inline std::vector<std::pair<Gf2Poly, Gf2Poly>> reciprocal_pairs(u64 m) {
  std::vector<Gf2Poly> factors;
  for (const auto& group : factor_cyclic(m))
    if (group.divisor != 1) factors.insert(factors.end(), group.factors.begin(), group.factors.end());
  std::sort(factors.begin(), factors.end());
  std::vector<std::pair<Gf2Poly, Gf2Poly>> pairs;
  std::vector<bool> used(factors.size(), false);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (used[i]) continue;
    const Gf2Poly rec = reciprocal(factors[i]);
    const auto it = std::lower_bound(factors.begin(), factors.end(), rec);
    if (it == factors.end() || *it != rec || it - factors.begin() == static_cast<std::ptrdiff_t>(i))
      throw DomainError("enumerate_vos: factor without distinct reciprocal partner");
    used[i] = used[static_cast<std::size_t>(it - factors.begin())] = true;
    pairs.emplace_back(factors[i], rec);
  }
  return pairs;
}

}  // namespace detail

// One very odd sequence of length n (the first one enumerate_vos lists), built
// without enumerating the rest; nullopt when S(n) = 0.
inline std::optional<BitSequence> first_vos(u64 n) {
  if (!s_count(n).positive) return std::nullopt;
  Gf2Poly b = Gf2Poly::monomial(0);
  for (const auto& [f, g] : detail::reciprocal_pairs(2 * n - 1)) b = b * f;
  return BitSequence::from_poly(b, n);
}

// All very odd sequences of length n. X^{2n-1}+1 = (X+1) prod (f_i f_i^*) and
// each sequence corresponds to choosing one member of every reciprocal pair.
// Pairs are ordered canonically and choices follow a Gray code, so each step
// swaps one factor for its reciprocal.
inline std::vector<BitSequence> enumerate_vos(u64 n, u64 cap = kDefaultEnumerationCap) {
  const SCount count = s_count(n);
  if (!count.positive) return {};
  if (count.exponent >= 64 || (u64{1} << count.exponent) > cap)
    throw SizeError("enumerate_vos: S(" + std::to_string(n) + ") = " + count.to_string() + " exceeds the cap",
                    count.exponent, true);
  const auto pairs = detail::reciprocal_pairs(2 * n - 1);

  Gf2Poly b = Gf2Poly::monomial(0);
  for (const auto& [f, g] : pairs) b = b * f;
  std::vector<bool> chosen_second(pairs.size(), false);
  std::vector<BitSequence> out;
  const u64 total = u64{1} << pairs.size();
  out.reserve(total);
  out.push_back(BitSequence::from_poly(b, n));
  for (u64 step = 1; step < total; ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    const auto& [f, g] = pairs[bit];
    b = chosen_second[bit] ? divmod(b, g).first * f : divmod(b, f).first * g;
    chosen_second[bit] = !chosen_second[bit];
    out.push_back(BitSequence::from_poly(b, n));
  }
  return out;
}

inline constexpr u64 kBruteForceMaxLength = 25;

// Exhaustive scan of all 2^n sequences (n <= 25), ascending by bit pattern.
inline std::vector<BitSequence> brute_force_vos(u64 n) {
  if (n == 0) throw DomainError("brute_force_vos: n must be >= 1");
  if (n > kBruteForceMaxLength)
    throw SizeError("brute_force_vos: n > 25 is beyond the exhaustive scan", n);
  const u64 total = u64{1} << n;
  const u64 ends = n == 1 ? 1 : (u64{1} | (u64{1} << (n - 1)));
  auto chunks = parallel_chunks<std::vector<u64>>(total, [&](u64 begin, u64 end) {
    std::vector<u64> hits;
    for (u64 x = begin; x < end; ++x) {
      if ((x & ends) != ends) continue;  // A_{n-1} = a_1 a_n must be 1
      bool ok = true;
      for (u64 k = 0; k < n && ok; ++k) ok = std::popcount(x & (x >> k)) & 1;
      if (ok) hits.push_back(x);
    }
    return hits;
  });
  std::vector<BitSequence> out;
  for (const auto& chunk : chunks)
    for (u64 x : chunk) out.push_back(BitSequence::from_poly(Gf2Poly::from_words({x}), n));
  return out;
}

// a (x) b: the sequence of a(X) b(X^{2n-1}), of length 2mn - n - m + 1.
inline BitSequence tensor(const BitSequence& a, const BitSequence& b) {
  if (!is_very_odd(a) || !is_very_odd(b)) throw DomainError("tensor: both inputs must be very odd");
  const std::size_t n = a.size(), m = b.size();
  const std::size_t stride = 2 * n - 1;
  BitSequence out(2 * m * n - n - m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    if (!b.get(j)) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (a.get(i)) out.set(j * stride + i, !out.get(j * stride + i));
  }
  return out;
}

// True iff s is two or more copies of a strictly shorter block.
inline bool is_periodic(const BitSequence& s) {
  const std::size_t n = s.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool match = true;
    for (std::size_t i = p; i < n && match; ++i) match = s.get(i) == s.get(i % p);
    if (match) return true;
  }
  return false;
}

}  // namespace vos
