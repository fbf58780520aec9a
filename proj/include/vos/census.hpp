#pragma once

// Counting and density statements checked at desk scale: how many n <= x admit
// very odd sequences, how S(n) values distribute, and the Artin-type density
// constants those counts are compared against.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "vos/arith.hpp"
#include "vos/errors.hpp"
#include "vos/parallel.hpp"
#include "vos/primes.hpp"
#include "vos/sequences.hpp"

namespace vos {

// Li(x) = integral from 2 to x of dt / log t, by adaptive Simpson in u = log t
// where the integrand becomes e^u / u.
inline double li(double x) {
  if (!(x >= 2)) throw DomainError("li: x must be >= 2");
  auto f = [](long double u) { return std::exp(u) / u; };
  auto simpson = [&](long double a, long double b, long double fa, long double fm, long double fb) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
  };
  auto adapt = [&](auto&& self, long double a, long double b, long double fa, long double fm, long double fb,
                   long double whole, long double tol, int depth) -> long double {
    const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
    const long double flm = f(lm), frm = f(rm);
    const long double left = simpson(a, m, fa, flm, fm), right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
    return self(self, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           self(self, m, b, fm, frm, fb, right, tol / 2, depth - 1);
  };
  const long double a = std::log(2.0L), b = std::log(static_cast<long double>(x));
  if (b == a) return 0;
  const long double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const long double whole = simpson(a, b, fa, fm, fb);
  return static_cast<double>(adapt(adapt, a, b, fa, fm, fb, whole, 1e-10L * x, 50));
}

namespace detail {

// zeta(s) for real s >= 2 by Euler-Maclaurin with N = 16 and 10 Bernoulli terms.
inline long double zeta(long double s) {
  constexpr int kN = 16;
  static constexpr long double kB[] = {1.0L / 6,     -1.0L / 30,      1.0L / 42,   -1.0L / 30,       5.0L / 66,
                                       -691.0L / 2730, 7.0L / 6,      -3617.0L / 510, 43867.0L / 798, -174611.0L / 330};
  long double sum = 0;
  for (int n = 1; n < kN; ++n) sum += std::pow(static_cast<long double>(n), -s);
  const long double N = kN;
  sum += std::pow(N, 1 - s) / (s - 1) + std::pow(N, -s) / 2;
  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  long double rising = s, fact = 2, npow = std::pow(N, -s - 1);
  for (int j = 1; j <= 10; ++j) {
    sum += kB[j - 1] / fact * rising * npow;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
    npow /= N * N;
  }
  return sum;
}

// Sum of p^{-k} over primes p > q_max, from log zeta by Moebius inversion.
inline long double prime_zeta_tail(unsigned k, const std::vector<u64>& small_primes) {
  long double total = 0;
  const long double q_max = static_cast<long double>(small_primes.back());
  for (u64 n = 1;; ++n) {
    const long double s = static_cast<long double>(n) * k;
    if (std::pow(q_max, -s) < 1e-30L) break;
    const int mu = arithmetic_functions(n).moebius;
    if (mu == 0) continue;
    long double z = zeta(s);
    for (u64 p : small_primes) z *= 1 - std::pow(static_cast<long double>(p), -s);
    total += mu * std::log(z) / static_cast<long double>(n);
  }
  return total;
}

inline std::vector<u64> ascending_primes_dividing(u64 n) {
  std::vector<u64> out;
  for (const auto& pp : factorize(n).factors) out.push_back(pp.prime);
  return out;
}

}  // namespace detail

// prod over primes of (1 - 1/(p(p-1))). With x = 1/p each factor is
// (1 - x - x^2)/(1 - x), whose logarithm is -sum_{k>=2} (L_k - 1) x^k / k with
// L_k the Lucas numbers; primes above 100 enter only through prime zeta tails.
inline double artin_constant_exact() {
  static const double value = [] {
    const std::vector<u64> small = primes_up_to(100);
    long double log_a = 0;
    for (u64 p : small) log_a += std::log1p(-1.0L / (static_cast<long double>(p) * (p - 1)));
    long double lucas_prev = 1, lucas = 3;  // L_1, L_2
    for (unsigned k = 2; k <= 40; ++k) {
      log_a -= (lucas - 1) / k * detail::prime_zeta_tail(k, small);
      const long double next = lucas + lucas_prev;
      lucas_prev = lucas;
      lucas = next;
    }
    return static_cast<double>(std::exp(log_a));
  }();
  return value;
}

// The Artin constant rounded to the requested absolute precision (>= 1e-12).
inline double artin_constant(double precision = 1e-10) {
  if (!(precision >= 1e-12) || precision >= 1) throw DomainError("artin_constant: precision must be in [1e-12, 1)");
  const double digits = std::ceil(-std::log10(precision));
  const double scale = std::pow(10.0, digits);
  return std::round(artin_constant_exact() * scale) / scale;
}

// Direct product over p <= p_max with no tail correction; only ~log10(p_max) digits.
inline double artin_constant_truncated(u64 p_max) {
  long double prod = 1;
  for_each_prime(2, p_max, [&](u64 p) { prod *= 1 - 1.0L / (static_cast<long double>(p) * (p - 1)); });
  return static_cast<double>(prod);
}

// Density of P_m among primes: 2 A eps / (3 m^2) prod_{p | m} (p^2 - 1)/(p^2 - p - 1),
// eps = 1 if v2(m) = 1 else 2; exactly 0 when P_m is empty (m odd or v2(m) = 2).
inline double pm_density(u64 m) {
  if (m == 0) throw DomainError("pm_density: m must be positive");
  if (m % 2 == 1 || nu2(m) == 2) return 0.0;
  const double eps = nu2(m) == 1 ? 1.0 : 2.0;
  const double md = static_cast<double>(m);
  double value = 2 * artin_constant_exact() * eps / (3 * md * md);
  for (u64 p : detail::ascending_primes_dividing(m)) {
    const double pd = static_cast<double>(p);
    value *= (pd * pd - 1) / (pd * pd - pd - 1);
  }
  return value;
}

struct Thm3Density {
  double value = 0;        // full product, tail folded in through A
  double truncated = 0;    // product over primes <= p_max only
  double error_bound = 0;  // |value - truncated| plus the precision of A
  u64 modulus = 0;         // f after normalization to a multiple of 4e
  u64 residue = 0;         // a modulo the normalized f
};

// Density of primes p with r_2(p) = 2e and p = a (mod f). The residue class is
// first merged with p = 1 + 2e (mod 4e), which is forced by the conditions, so
// f becomes a multiple of 4e. A prime q contributes the factor
// 1 - phi([f,2e]) / (phi([f,2eq]) q) when a = 1 (mod gcd(f, 2eq)) and 1
// otherwise; for q not dividing 2ef this is 1 - 1/(q(q-1)), so the product over
// q > p_max is A divided by its own head.
inline Thm3Density thm3_density(u64 e, u64 a, u64 f, u64 p_max = 1000) {
  if (e == 0 || f == 0) throw DomainError("thm3_density: e and f must be positive");
  if (nu2(e) == 1) throw DomainError("thm3_density: v2(e) = 1 gives an empty set");
  if (std::gcd(a % f, f) != 1 && f != 1) throw DomainError("thm3_density: gcd(a, f) must be 1");
  const auto merged = crt_merge({a % f, f}, {(1 + 2 * e) % (4 * e), 4 * e});
  if (!merged) throw DomainError("thm3_density: a is incompatible with p = 1 + 2e (mod 4e)");
  f = merged->modulus;
  a = merged->residue;
  const u64 f2e = lcm_checked(f, 2 * e);
  const double phi_f2e = static_cast<double>(euler_phi(factorize(f2e)));
  double head = artin_constant_exact();
  const double eps = nu2(2 * e) == 1 ? 1.0 : 2.0;
  double prod = eps / (phi_f2e * 2.0 * static_cast<double>(e));
  double truncated = prod;
  u64 largest_special = 1;
  for (u64 q : detail::ascending_primes_dividing(2 * e * f)) largest_special = std::max(largest_special, q);
  const u64 limit = std::max(p_max, largest_special);
  for_each_prime(2, limit, [&](u64 q) {
    const double qd = static_cast<double>(q);
    head /= 1 - 1 / (qd * (qd - 1));
    double factor = 1;
    if (a % std::gcd(f, 2 * e * q) == 1 % std::gcd(f, 2 * e * q)) {
      const double phi_q = static_cast<double>(euler_phi(factorize(lcm_checked(f, 2 * e * q))));
      factor = 1 - phi_f2e / (phi_q * qd);
    }
    prod *= factor;
    if (q <= p_max) truncated *= factor;
  });
  Thm3Density d;
  d.value = prod * head;
  d.truncated = truncated;
  d.error_bound = std::fabs(d.value - d.truncated) + 1e-12;
  d.modulus = f;
  d.residue = a;
  return d;
}

struct CensusReport {
  u64 x = 0;
  std::map<std::string, u64> counts;
  std::map<std::string, double> predicted;
  std::map<std::string, double> ratios;
  std::map<std::string, double> observed;        // report-only quantities without a prediction
  std::map<std::string, std::vector<u64>> members;  // small witness lists
};

inline constexpr u64 kMaxSieveBound = 10'000'000;

// Which odd m <= limit have ord_2(m) odd, as a table indexed by (m - 1) / 2.
// ord_2(m) is odd iff every prime factor q of m has ord_2(q) odd, and that
// holds iff 2^{odd part of q-1} = 1 (mod q). Counts for P are returned too.
struct OddOrderTable {
  std::vector<bool> good;  // good[(m-1)/2]
  std::vector<u64> p_primes;  // primes in P up to limit
};

inline OddOrderTable odd_order_table(u64 limit) {
  OddOrderTable t;
  const u64 slots = limit >= 1 ? (limit - 1) / 2 + 1 : 0;
  t.good.assign(slots, true);
  const auto primes = primes_up_to(limit);
  auto flags = parallel_chunks<std::vector<std::uint8_t>>(primes.size(), [&](u64 begin, u64 end) {
    std::vector<std::uint8_t> in_p(end - begin, 0);
    for (u64 i = begin; i < end; ++i) {
      const u64 q = primes[i];
      if (q == 2) continue;
      u64 odd = q - 1;
      odd >>= std::countr_zero(odd);
      in_p[i - begin] = pow_mod(2, odd, q) == 1;
    }
    return in_p;
  });
  std::size_t idx = 0;
  for (const auto& chunk : flags) {
    for (std::uint8_t ok : chunk) {
      const u64 q = primes[idx++];
      if (q == 2) continue;
      if (ok) {
        t.p_primes.push_back(q);
        continue;
      }
      for (u64 m = q; m <= limit; m += 2 * q) t.good[(m - 1) / 2] = false;
    }
  }
  return t;
}

// N(x) = #{n <= x : S(n) > 0}, N0(x) = x - N(x), and P(2x-1), P(x) with the
// 7/24 Li(x) comparison; N(x) log^{17/24}(x) / x is reported without a prediction.
inline CensusReport ord_parity_sieve(u64 x) {
  if (x == 0) throw DomainError("ord_parity_sieve: x must be positive");
  if (x > kMaxSieveBound) throw SizeError("ord_parity_sieve: x must be <= 10^7", x);
  const auto table = odd_order_table(2 * x - 1);
  CensusReport r;
  r.x = x;
  u64 n_count = 0;
  for (u64 n = 1; n <= x; ++n) {
    if (!table.good[n - 1]) continue;
    ++n_count;
    if (r.members["N"].size() < 64) r.members["N"].push_back(n);
  }
  u64 p_x = 0;
  for (u64 q : table.p_primes) p_x += q <= x;
  r.counts["N"] = n_count;
  r.counts["N0"] = x - n_count;
  r.counts["P(2x-1)"] = table.p_primes.size();
  r.counts["P(x)"] = p_x;
  if (x >= 3) {
    const double xd = static_cast<double>(x);
    r.predicted["P(x)"] = 7.0 / 24.0 * li(xd);
    r.ratios["P(x)"] = static_cast<double>(p_x) / r.predicted["P(x)"];
    r.observed["N*log^(17/24)(x)/x"] = static_cast<double>(n_count) * std::pow(std::log(xd), 17.0 / 24.0) / xd;
    r.observed["N/x"] = static_cast<double>(n_count) / xd;
  }
  return r;
}

inline constexpr u64 kMaxValueCensusBound = 1'000'000;

// N_v(x) = #{n <= x : S(n) = v} for each requested v, from s_count on every n,
// together with the exact cross-check N_2(x) = P_2(2x-1).
inline CensusReport value_census(u64 x, const std::vector<u64>& values) {
  if (x == 0) throw DomainError("value_census: x must be positive");
  if (x > kMaxValueCensusBound) throw SizeError("value_census: x must be <= 10^6", x);
  for (u64 v : values)
    if (v == 0 || (v & (v - 1))) throw DomainError("value_census: values must be powers of two");
  auto chunks = parallel_chunks<std::vector<SCount>>(x, [&](u64 begin, u64 end) {
    std::vector<SCount> out;
    out.reserve(end - begin);
    for (u64 n = begin + 1; n <= end; ++n) out.push_back(s_count(n));
    return out;
  });
  CensusReport r;
  r.x = x;
  for (u64 v : values) r.counts["N_" + std::to_string(v)] = 0;
  u64 n = 1, n_total = 0;
  for (const auto& chunk : chunks) {
    for (const SCount& c : chunk) {
      if (c.positive) {
        ++n_total;
        const u64 v = c.exponent < 64 ? u64{1} << c.exponent : 0;
        const std::string key = "N_" + std::to_string(v);
        if (auto it = r.counts.find(key); it != r.counts.end()) {
          ++it->second;
          auto& list = r.members[key];
          if (list.size() < 16) list.push_back(n);
        }
      }
      ++n;
    }
  }
  r.counts["N"] = n_total;
  r.counts["N0"] = x - n_total;
  r.counts["P_2(2x-1)"] = pm_members(2, 2 * x - 1).size();
  const double xd = static_cast<double>(x);
  if (x >= 3) {
    // N_2(x) ~ A x / log x and N_8(x) ~ 8 A x / (45 log x)
    const double scale = xd / std::log(xd);
    const double a = artin_constant_exact();
    if (r.counts.count("N_2")) {
      r.predicted["N_2"] = a * scale;
      r.ratios["N_2"] = static_cast<double>(r.counts["N_2"]) / r.predicted["N_2"];
    }
    if (r.counts.count("N_8")) {
      r.predicted["N_8"] = 8 * a / 45 * scale;
      r.ratios["N_8"] = static_cast<double>(r.counts["N_8"]) / r.predicted["N_8"];
    }
    if (r.counts.count("N_16"))
      r.observed["N_16*log(x)/(x*loglog(x))"] =
          static_cast<double>(r.counts["N_16"]) * std::log(xd) / (xd * std::log(std::log(xd)));
  }
  return r;
}

// St_4(x) = #{n <= x : the Stufe of Q(zeta_{2n-1}) is 4}. The field for n = 1 is Q,
// which has no Stufe, so St_4(x) = N(x) - 1.
inline u64 stufe4_count(u64 x) {
  if (x > kMaxSieveBound) throw SizeError("stufe4_count: x must be <= 10^7", x);
  if (x <= 1) return 0;
  const auto table = odd_order_table(2 * x - 1);
  u64 count = 0;
  for (u64 n = 2; n <= x; ++n) count += table.good[n - 1];
  return count;
}

// P_m(x) / (x / log x), the empirical counterpart of pm_density(m).
inline double pm_empirical_density(u64 m, u64 x) {
  if (x < 3) throw DomainError("pm_empirical_density: x must be >= 3");
  const double xd = static_cast<double>(x);
  return static_cast<double>(pm_members(m, x).size()) * std::log(xd) / xd;
}

}  // namespace vos
