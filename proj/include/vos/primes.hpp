#pragma once

// Primes classified by the multiplicative order of 2: the set P of primes with
// ord_2(p) odd, its slices P_m = {p : (p-1)/m odd and ord_2(p) = (p-1)/m}, the
// non-Wieferich subsets P'_m, and searches for primes in arithmetic progressions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vos/arith.hpp"
#include "vos/errors.hpp"
#include "vos/parallel.hpp"

namespace vos {

// Calls fn(p) for every prime p in [lo, hi], ascending. Odd-only segmented
// sieve of Eratosthenes with 2^18-number segments.
inline void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) fn(2);
  lo = std::max<u64>(lo, 3);
  if (lo % 2 == 0) ++lo;
  if (lo > hi) return;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<u64> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (u64 i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(i);
      for (u64 j = i * i; j <= root; j += 2 * i) composite[j] = true;
    }
  }
  constexpr u64 kSegmentOdds = u64{1} << 18;
  std::vector<std::uint8_t> segment(kSegmentOdds);
  for (u64 start = lo; start <= hi; start += 2 * kSegmentOdds) {
    const u64 end = std::min(hi, start + 2 * kSegmentOdds - 2);  // inclusive, odd or hi
    const u64 count = (end - start) / 2 + 1;
    std::fill(segment.begin(), segment.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (u64 p : base) {
      if (p * p > end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      for (u64 j = first; j <= end; j += 2 * p) segment[(j - start) / 2] = 0;
    }
    for (u64 i = 0; i < count; ++i)
      if (segment[i]) fn(start + 2 * i);
  }
}

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  for_each_prime(2, limit, [&](u64 p) { out.push_back(p); });
  return out;
}

struct PrimeClass {
  u64 p = 0;
  u64 ord2 = 0;
  u64 index_m = 0;          // r_2(p) = (p-1)/ord2
  bool in_P = false;        // ord2 odd
  bool wieferich = false;   // 2^{p-1} = 1 (mod p^2)
  bool in_Pm = false;       // p in P_m for m = index_m
  bool in_Pm_prime = false; // additionally 2^{(p-1)/m} != 1 (mod p^2)
};

// ord_2(p) = q exactly, given 2^q = 1 (mod p) must be checked too.
inline bool order_of_two_is(u64 p, u64 q) {
  if (pow_mod(2, q, p) != 1) return false;
  for (const auto& r : factorize(q).factors)
    if (pow_mod(2, q / r.prime, p) == 1) return false;
  return true;
}

inline PrimeClass classify_prime(u64 p) {
  if (p < 3 || !is_prime(p)) throw DomainError("classify_prime: " + std::to_string(p) + " is not an odd prime");
  PrimeClass c;
  c.p = p;
  c.ord2 = order_mod_prime(2, p);
  c.index_m = (p - 1) / c.ord2;
  c.in_P = c.ord2 % 2 == 1;
  if (p >= (u64{1} << 32)) throw DomainError("classify_prime: p must be below 2^32 for mod p^2 arithmetic");
  const u64 p2 = p * p;
  c.wieferich = pow_mod(2, p - 1, p2) == 1;
  c.in_Pm = c.in_P;  // ord2 = (p-1)/index_m, so p in P_m exactly for m = index_m when ord2 is odd
  c.in_Pm_prime = c.in_Pm && pow_mod(2, c.ord2, p2) != 1;
  return c;
}

// Primes p <= x in P_m, ascending. Every prime is tested; nothing is skipped
// on the strength of known emptiness results for P_m.
inline std::vector<u64> pm_members(u64 m, u64 x) {
  if (m == 0) throw DomainError("pm_members: m must be positive");
  std::vector<u64> out;
  for_each_prime(3, x, [&](u64 p) {
    if ((p - 1) % m) return;
    const u64 q = (p - 1) / m;
    if (q % 2 == 1 && order_of_two_is(p, q)) out.push_back(p);
  });
  return out;
}

inline std::vector<u64> wieferich_scan(u64 x) {
  const auto primes = primes_up_to(x);
  auto chunks = parallel_chunks<std::vector<u64>>(primes.size(), [&](u64 begin, u64 end) {
    std::vector<u64> hits;
    for (u64 i = begin; i < end; ++i) {
      const u64 p = primes[i];
      if (p > 2 && pow_mod(2, p - 1, p * p) == 1) hits.push_back(p);
    }
    return hits;
  });
  std::vector<u64> out;
  for (const auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

struct Congruence {
  u64 residue;
  u64 modulus;
};

struct SearchSpec {
  u64 index_m = 2;                   // required r_2(p), with ord_2(p) = (p-1)/m odd
  std::vector<Congruence> required;  // p = a (mod f)
  std::vector<Congruence> forbidden; // p != a (mod f)
  bool non_wieferich_at_m = false;   // 2^{(p-1)/m} != 1 (mod p^2)
  u64 bound = 10'000'000;
  u64 lower = 0;                     // only primes > lower
};

// Merges x = a1 (mod m1) and x = a2 (mod m2); nullopt when inconsistent.
inline std::optional<Congruence> crt_merge(Congruence a, Congruence b) {
  const u64 g = std::gcd(a.modulus, b.modulus);
  const u64 ra = a.residue % a.modulus, rb = b.residue % b.modulus;
  if ((ra % g) != (rb % g)) return std::nullopt;
  const u64 l = lcm_checked(a.modulus, b.modulus);
  if (l > (u64{1} << 62)) throw DomainError("crt_merge: combined modulus too large");
  // x = ra + m1 t with t = ((rb - ra)/g) * (m1/g)^{-1} (mod m2/g)
  const u64 m2g = b.modulus / g;
  const u64 diff = ((rb + b.modulus - ra % b.modulus) % b.modulus) / g;
  const u64 t = m2g == 1 ? 0 : mul_mod(diff % m2g, mod_inverse((a.modulus / g) % m2g, m2g), m2g);
  const u64 x = static_cast<u64>((static_cast<u128>(a.modulus) * t + ra) % l);
  return Congruence{x, l};
}

inline bool matches_spec_class(u64 p, const SearchSpec& spec) {
  for (const auto& c : spec.forbidden)
    if (p % c.modulus == c.residue % c.modulus) return false;
  const u64 q = (p - 1) / spec.index_m;
  if (!order_of_two_is(p, q)) return false;
  if (spec.non_wieferich_at_m && pow_mod(2, q, p * p) == 1) return false;
  return true;
}

// All primes lower < p <= bound satisfying `spec`, ascending, at most max_count.
// Candidates come from the CRT progression of the required classes together
// with p = 1 + m (mod 2m), which encodes "(p-1)/m odd".
inline std::vector<u64> constrained_primes(const SearchSpec& spec, std::size_t max_count = SIZE_MAX) {
  if (spec.index_m == 0) throw DomainError("constrained_prime_search: index_m must be positive");
  for (const auto& c : spec.required) {
    if (c.modulus == 0) throw DomainError("constrained_prime_search: modulus must be >= 1");
    if (std::gcd(c.residue % c.modulus, c.modulus) != 1 && c.modulus != 1)
      throw DomainError("constrained_prime_search: required class must be coprime to its modulus");
  }
  for (const auto& c : spec.forbidden)
    if (c.modulus == 0) throw DomainError("constrained_prime_search: modulus must be >= 1");
  std::vector<u64> out;
  if (spec.index_m % 2 == 1) return out;  // (p-1)/m odd forces m even for odd p
  Congruence cls{1 + spec.index_m, 2 * spec.index_m};
  for (const auto& c : spec.required) {
    auto merged = crt_merge(cls, c);
    if (!merged) throw DomainError("constrained_prime_search: inconsistent congruences");
    cls = *merged;
  }
  u64 p = cls.residue;
  if (p <= spec.lower) {
    const u64 steps = (spec.lower - p) / cls.modulus + 1;
    p += steps * cls.modulus;
  }
  if (spec.bound >= (u64{1} << 32)) throw DomainError("constrained_prime_search: bound must be below 2^32");
  for (; p <= spec.bound && out.size() < max_count; p += cls.modulus)
    if (p > 2 && is_prime(p) && matches_spec_class(p, spec)) out.push_back(p);
  return out;
}

// Smallest prime satisfying `spec`, or nullopt when none is <= bound.
inline std::optional<u64> constrained_prime_search(const SearchSpec& spec) {
  auto found = constrained_primes(spec, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace vos
