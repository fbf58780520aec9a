#pragma once

// Integer arithmetic on 64-bit values: primality, factorization, multiplicative
// functions, multiplicative orders, residual indices and the irreducible-factor
// count i_q(n) of X^n - 1 over the q-element field.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vos/errors.hpp"

namespace vos {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// 2-adic valuation; v2(0) is reported as 64.
inline unsigned nu2(u64 m) { return m == 0 ? 64u : static_cast<unsigned>(std::countr_zero(m)); }

// Exponent of p in n, for p >= 2 and n >= 1.
inline unsigned valuation(u64 n, u64 p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline u64 lcm_checked(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  const u128 r = static_cast<u128>(a / std::gcd(a, b)) * b;
  if (r > static_cast<u128>(~u64{0})) throw DomainError("lcm exceeds 64 bits");
  return static_cast<u64>(r);
}

// Inverse of a modulo m (gcd(a, m) = 1, m >= 2).
inline u64 mod_inverse(u64 a, u64 m) {
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) throw DomainError("mod_inverse: arguments not coprime");
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  const unsigned s = nu2(d);
  d >>= s;
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline constexpr u64 kTrialBound = 1'000'000;

inline const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. n must be odd, composite, not a prime power
// of a tiny prime; returns a nontrivial divisor.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 block = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace detail

struct PrimePower {
  u64 prime;
  unsigned exponent;

  u64 value() const {
    u64 v = 1;
    for (unsigned i = 0; i < exponent; ++i) v *= prime;
    return v;
  }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime-power decomposition of a positive integer; primes strictly increasing.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  // Exponent of p in value (0 if p does not divide it).
  unsigned nu(u64 p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }

  bool squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
  }

  std::vector<u64> divisors() const {
    std::vector<u64> divs{1};
    for (const auto& f : factors) {
      const std::size_t base = divs.size();
      u64 pk = 1;
      for (unsigned k = 1; k <= f.exponent; ++k) {
        pk *= f.prime;
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
  }

  std::string to_string() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& f : factors) {
      if (!s.empty()) s += "*";
      s += std::to_string(f.prime);
      if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
    }
    return s;
  }
};

// Trial division by primes up to 10^6, then Pollard rho with a deterministic
// primality check for whatever cofactor remains.
inline Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: input must be positive");
  Factorization result;
  result.value = n;
  for (std::uint32_t p : detail::trial_primes()) {
    if (static_cast<u64>(p) * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (n > 1) {
    std::vector<u64> rest;
    if (n < detail::kTrialBound * detail::kTrialBound)
      rest.push_back(n);
    else
      detail::split_large(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!result.factors.empty() && result.factors.back().prime == p)
        ++result.factors.back().exponent;
      else
        result.factors.push_back({p, 1});
    }
  }
  return result;
}

struct ArithmeticFunctions {
  Factorization factorization;
  u64 phi = 1;
  int moebius = 1;
  unsigned omega = 0;
  unsigned omega1 = 0;

  unsigned nu(u64 p) const { return factorization.nu(p); }
};

inline u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& pp : f.factors) phi *= pp.value() / pp.prime * (pp.prime - 1);
  return phi;
}

inline ArithmeticFunctions arithmetic_functions(const Factorization& f) {
  ArithmeticFunctions a;
  a.factorization = f;
  a.phi = euler_phi(f);
  a.omega = static_cast<unsigned>(f.factors.size());
  for (const auto& pp : f.factors) {
    if (pp.exponent == 1) {
      ++a.omega1;
      a.moebius = -a.moebius;
    } else {
      a.moebius = 0;
    }
  }
  return a;
}

inline ArithmeticFunctions arithmetic_functions(u64 n) { return arithmetic_functions(factorize(n)); }

// Order of a modulo the prime p (p does not divide a).
inline u64 order_mod_prime(u64 a, u64 p) {
  if (p == 2) return 1;
  u64 t = p - 1;
  for (const auto& q : factorize(p - 1).factors) {
    for (unsigned k = 0; k < q.exponent && pow_mod(a, t / q.prime, p) == 1; ++k) t /= q.prime;
  }
  return t;
}

// Orders of a modulo p^1, ..., p^e. Odd p lifts from the order mod p: if
// a^ord_p = 1 + p^j u with p not dividing u, then ord_{p^k} = ord_p p^{max(0,k-j)}.
// p = 2 strips powers of two from 2^{k-1} directly.
inline std::vector<u64> orders_mod_prime_powers(u64 a, u64 p, unsigned e) {
  std::vector<u64> orders;
  orders.reserve(e);
  if (p == 2) {
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= 2;
      u64 t = pk / 2;  // exponent of (Z/2^k)^*
      while (t % 2 == 0 && pow_mod(a, t / 2, pk) == 1) t /= 2;
      orders.push_back(t);
    }
    return orders;
  }
  const u64 ord_p = order_mod_prime(a % p, p);
  u64 pe = 1;
  for (unsigned k = 0; k < e; ++k) pe *= p;
  const u64 x = pow_mod(a, ord_p, pe);
  const unsigned j = x == 1 ? e : valuation(x - 1, p);
  u64 pk_excess = 1;
  for (unsigned k = 1; k <= e; ++k) {
    if (k > j) pk_excess *= p;
    orders.push_back(ord_p * pk_excess);
  }
  return orders;
}

inline void require_coprime(u64 a, u64 m, const char* op) {
  if (std::gcd(a % m, m) != 1 && m != 1)
    throw DomainError(std::string(op) + ": arguments " + std::to_string(a) + " and " + std::to_string(m) +
                      " are not coprime");
}

// Order of a modulo m, given the factorization of m.
inline u64 mult_order(u64 a, const Factorization& m) {
  require_coprime(a, m.value, "mult_order");
  u64 ord = 1;
  for (const auto& pp : m.factors) ord = lcm_checked(ord, orders_mod_prime_powers(a, pp.prime, pp.exponent).back());
  return ord;
}

// Smallest r >= 1 with a^r = 1 (mod m).
inline u64 mult_order(u64 a, u64 m) {
  if (m == 0) throw DomainError("mult_order: modulus must be positive");
  if (m == 1) return 1;
  return mult_order(a, factorize(m));
}

struct OrderRecord {
  u64 base;
  u64 modulus;
  u64 order;
  u64 index;  // phi(modulus) / order
};

inline OrderRecord order_record(u64 a, u64 m) {
  if (m == 0) throw DomainError("order_record: modulus must be positive");
  const Factorization f = factorize(m);
  const u64 ord = m == 1 ? 1 : mult_order(a, f);
  return {a, m, ord, euler_phi(f) / ord};
}

// r_q(n) = phi(n) / ord_q(n), the index of <q> in (Z/nZ)^*.
inline u64 residual_index(u64 q, u64 n) {
  if (n == 0) throw DomainError("residual_index: modulus must be positive");
  require_coprime(q, n, "residual_index");
  return order_record(q, n).index;
}

inline std::optional<u64> prime_of_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  const Factorization f = factorize(q);
  if (f.factors.size() != 1) return std::nullopt;
  return f.factors.front().prime;
}

// Sum over d | n of phi(d)/ord_q(d), with per-prime-power orders computed once
// and combined by lcm for every divisor.
inline u64 irreducible_count(u64 q, const Factorization& n) {
  require_coprime(q, n.value, "irreducible_count");
  struct Level {
    u64 prime;
    std::vector<u64> phi;  // phi(p^k), k = 0..e
    std::vector<u64> ord;  // ord_q(p^k), k = 0..e
  };
  std::vector<Level> levels;
  for (const auto& pp : n.factors) {
    Level lv{pp.prime, {1}, {1}};
    const auto ords = orders_mod_prime_powers(q % pp.value(), pp.prime, pp.exponent);
    u64 pk = 1;
    for (unsigned k = 1; k <= pp.exponent; ++k) {
      lv.phi.push_back(pk * (pp.prime - 1));
      pk *= pp.prime;
      lv.ord.push_back(ords[k - 1]);
    }
    levels.push_back(std::move(lv));
  }
  u64 total = 0;
  std::vector<unsigned> exps(levels.size(), 0);
  while (true) {
    u64 phi = 1, ord = 1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      phi *= levels[i].phi[exps[i]];
      ord = std::lcm(ord, levels[i].ord[exps[i]]);
    }
    total += phi / ord;
    std::size_t i = 0;
    while (i < levels.size() && exps[i] == levels[i].phi.size() - 1) exps[i++] = 0;
    if (i == levels.size()) break;
    ++exps[i];
  }
  return total;
}

// i_q(n): number of distinct irreducible factors of X^n - 1 over F_q.
inline u64 irreducible_count(u64 q, u64 n) {
  if (n == 0) throw DomainError("irreducible_count: n must be positive");
  if (!prime_of_prime_power(q)) throw DomainError("irreducible_count: q must be a prime power");
  return irreducible_count(q, factorize(n));
}

struct UlmerRank {
  u64 rank;
  // Whether d divides p^k + 1 for some k >= 1, p the characteristic of F_q.
  bool divides_p_power_plus_one;
};

// Rank of y^2 + xy = x^3 - t^d over F_q(t), which equals i_q(d) whenever d
// divides p^k + 1 for some k. The divisibility is decided exactly: it holds iff
// -1 lies in the subgroup generated by p modulo d.
inline UlmerRank ulmer_rank(u64 q, u64 d) {
  const auto p = prime_of_prime_power(q);
  if (!p) throw DomainError("ulmer_rank: q must be a prime power");
  if (d == 0 || std::gcd(d, 6 * q) != 1) throw DomainError("ulmer_rank: requires gcd(d, 6q) = 1");
  bool divides = d <= 2;
  if (!divides) {
    const u64 ord = mult_order(*p, d);
    divides = ord % 2 == 0 && pow_mod(*p, ord / 2, d) == d - 1;
  }
  return {irreducible_count(q, d), divides};
}

// Level of the cyclotomic field Q(zeta_m): 1 when 4 | m, else 2 or 4 depending
// on the parity of ord_2 of the odd part; nullopt for the orderable field Q.
inline std::optional<unsigned> stufe_level(u64 m) {
  if (m == 0) throw DomainError("stufe_level: m must be positive");
  if (m <= 2) return std::nullopt;
  if (m % 4 == 0) return 1u;
  if (m % 2 == 0) m /= 2;
  return mult_order(2, m) % 2 == 0 ? 2u : 4u;
}

}  // namespace vos
