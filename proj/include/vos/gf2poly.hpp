#pragma once

// Dense polynomials over F_2, bit-packed: the coefficient of X^k is bit k%64 of
// word k/64. The zero polynomial has no words, and degree() reports it as
// nullopt rather than a negative number.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vos/arith.hpp"
#include "vos/errors.hpp"

namespace vos {

class Gf2Poly {
 public:
  Gf2Poly() = default;

  static Gf2Poly monomial(std::size_t k) {
    Gf2Poly p;
    p.set_coefficient(k, true);
    return p;
  }

  static Gf2Poly from_exponents(std::initializer_list<std::size_t> exps) {
    Gf2Poly p;
    for (std::size_t k : exps) p.set_coefficient(k, !p.coefficient(k));
    return p;
  }

  static Gf2Poly from_words(std::vector<u64> words) {
    Gf2Poly p;
    p.words_ = std::move(words);
    p.normalize();
    return p;
  }

  // Lowercase hex, 16 digits per 64-bit word, least-significant word first;
  // the zero polynomial is "0".
  static Gf2Poly from_hex(std::string_view hex) {
    if (hex == "0") return {};
    if (hex.empty() || hex.size() % 16 != 0) throw DomainError("gf2poly hex: expected a multiple of 16 digits or \"0\"");
    std::vector<u64> words;
    for (std::size_t i = 0; i < hex.size(); i += 16) {
      u64 w = 0;
      for (std::size_t j = 0; j < 16; ++j) {
        const char c = hex[i + j];
        unsigned v;
        if (c >= '0' && c <= '9')
          v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
          v = static_cast<unsigned>(c - 'a' + 10);
        else
          throw DomainError("gf2poly hex: invalid digit");
        w = (w << 4) | v;
      }
      words.push_back(w);
    }
    return from_words(std::move(words));
  }

  std::string to_hex() const {
    if (is_zero()) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    for (u64 w : words_)
      for (int shift = 60; shift >= 0; shift -= 4) s += kDigits[(w >> shift) & 0xF];
    return s;
  }

  // Human-readable form such as "x^3+x+1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = *degree() + 1; k-- > 0;) {
      if (!coefficient(k)) continue;
      if (!s.empty()) s += "+";
      s += k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k);
    }
    return s;
  }

  bool is_zero() const { return words_.empty(); }

  std::optional<std::size_t> degree() const {
    if (is_zero()) return std::nullopt;
    return (words_.size() - 1) * 64 + (63 - static_cast<std::size_t>(std::countl_zero(words_.back())));
  }

  bool coefficient(std::size_t k) const {
    const std::size_t w = k / 64;
    return w < words_.size() && ((words_[w] >> (k % 64)) & 1);
  }

  void set_coefficient(std::size_t k, bool value) {
    const std::size_t w = k / 64;
    if (w >= words_.size()) {
      if (!value) return;
      words_.resize(w + 1, 0);
    }
    if (value)
      words_[w] |= u64{1} << (k % 64);
    else
      words_[w] &= ~(u64{1} << (k % 64));
    normalize();
  }

  std::size_t weight() const {
    std::size_t n = 0;
    for (u64 w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  const std::vector<u64>& words() const { return words_; }

  friend Gf2Poly operator+(const Gf2Poly& f, const Gf2Poly& g) {
    Gf2Poly r = f.words_.size() >= g.words_.size() ? f : g;
    const Gf2Poly& o = f.words_.size() >= g.words_.size() ? g : f;
    for (std::size_t i = 0; i < o.words_.size(); ++i) r.words_[i] ^= o.words_[i];
    r.normalize();
    return r;
  }

  Gf2Poly& operator+=(const Gf2Poly& g) { return *this = *this + g; }

  friend Gf2Poly operator*(const Gf2Poly& f, const Gf2Poly& g) {
    if (f.is_zero() || g.is_zero()) return {};
    const Gf2Poly& sparse = f.weight() <= g.weight() ? f : g;
    const Gf2Poly& dense = &sparse == &f ? g : f;
    std::vector<u64> out(f.words_.size() + g.words_.size(), 0);
    for (std::size_t wi = 0; wi < sparse.words_.size(); ++wi) {
      u64 w = sparse.words_[wi];
      while (w) {
        const std::size_t bit = wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
        xor_shifted(out, dense.words_, bit);
        w &= w - 1;
      }
    }
    return from_words(std::move(out));
  }

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

  // Canonical order: compare as binary integers (degree first, then bits from the top).
  friend std::strong_ordering operator<=>(const Gf2Poly& f, const Gf2Poly& g) {
    if (f.words_.size() != g.words_.size()) return f.words_.size() <=> g.words_.size();
    for (std::size_t i = f.words_.size(); i-- > 0;)
      if (f.words_[i] != g.words_[i]) return f.words_[i] <=> g.words_[i];
    return std::strong_ordering::equal;
  }

  // dst ^= src * X^shift; dst must be large enough.
  static void xor_shifted(std::vector<u64>& dst, const std::vector<u64>& src, std::size_t shift) {
    const std::size_t ws = shift / 64, bs = shift % 64;
    if (bs == 0) {
      for (std::size_t i = 0; i < src.size(); ++i) dst[i + ws] ^= src[i];
      return;
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i + ws] ^= src[i] << bs;
      if (i + ws + 1 < dst.size()) dst[i + ws + 1] ^= src[i] >> (64 - bs);
    }
  }

 private:
  friend std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& f, const Gf2Poly& g);
  friend Gf2Poly square(const Gf2Poly& f);
  friend Gf2Poly operator%(const Gf2Poly& f, const Gf2Poly& g);

  void normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<u64> words_;
};

// Quotient and remainder of f by a nonzero g.
inline std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& f, const Gf2Poly& g) {
  if (g.is_zero()) throw DomainError("gf2poly: division by zero polynomial");
  const std::size_t dg = *g.degree();
  if (f.is_zero() || *f.degree() < dg) return {Gf2Poly{}, f};
  std::vector<u64> rem = f.words_;
  std::vector<u64> quo((*f.degree() - dg) / 64 + 1, 0);
  for (std::size_t k = *f.degree() + 1; k-- > dg;) {
    if (!((rem[k / 64] >> (k % 64)) & 1)) continue;
    const std::size_t shift = k - dg;
    quo[shift / 64] |= u64{1} << (shift % 64);
    Gf2Poly::xor_shifted(rem, g.words_, shift);
  }
  return {Gf2Poly::from_words(std::move(quo)), Gf2Poly::from_words(std::move(rem))};
}

inline Gf2Poly operator%(const Gf2Poly& f, const Gf2Poly& g) {
  if (g.is_zero()) throw DomainError("gf2poly: division by zero polynomial");
  const std::size_t dg = *g.degree();
  if (f.is_zero() || *f.degree() < dg) return f;
  std::vector<u64> rem = f.words_;
  for (std::size_t k = *f.degree() + 1; k-- > dg;)
    if ((rem[k / 64] >> (k % 64)) & 1) Gf2Poly::xor_shifted(rem, g.words_, k - dg);
  return Gf2Poly::from_words(std::move(rem));
}

// f^2: in characteristic 2 this spreads coefficient k to position 2k.
inline Gf2Poly square(const Gf2Poly& f) {
  auto spread = [](u64 x) {
    x &= 0xFFFFFFFFull;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
  };
  std::vector<u64> out(2 * f.words_.size(), 0);
  for (std::size_t i = 0; i < f.words_.size(); ++i) {
    out[2 * i] = spread(f.words_[i]);
    out[2 * i + 1] = spread(f.words_[i] >> 32);
  }
  return Gf2Poly::from_words(std::move(out));
}

inline Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Gf2Poly mul_mod(const Gf2Poly& f, const Gf2Poly& g, const Gf2Poly& m) { return (f * g) % m; }

// X^(2^k) mod m by k successive squarings.
inline Gf2Poly x_pow2k_mod(std::size_t k, const Gf2Poly& m) {
  Gf2Poly x = Gf2Poly::monomial(1) % m;
  for (std::size_t i = 0; i < k; ++i) x = square(x) % m;
  return x;
}

// X^{deg f} f(1/X): the coefficient vector reversed.
inline Gf2Poly reciprocal(const Gf2Poly& f) {
  if (!f.coefficient(0)) throw DomainError("reciprocal: constant term must be 1");
  const std::size_t d = *f.degree();
  Gf2Poly r;
  for (std::size_t k = 0; k <= d; ++k)
    if (f.coefficient(k)) r.set_coefficient(d - k, true);
  return r;
}

// Rabin's test: X^(2^n) = X (mod f) and gcd(X^(2^(n/l)) - X, f) = 1 for every prime l | n.
inline bool is_irreducible(const Gf2Poly& f) {
  if (f.is_zero() || *f.degree() == 0) throw DomainError("is_irreducible: polynomial must have degree >= 1");
  const std::size_t n = *f.degree();
  const Gf2Poly x = Gf2Poly::monomial(1) % f;
  if (x_pow2k_mod(n, f) != x) return false;
  for (const auto& l : factorize(n).factors) {
    const Gf2Poly t = x_pow2k_mod(n / l.prime, f) + x;
    if (*gcd(f, t).degree() != 0) return false;
  }
  return true;
}

// 2-cyclotomic coset of c modulo m: {c, 2c, 4c, ...}.
inline std::vector<u64> cyclotomic_coset(u64 c, u64 m) {
  std::vector<u64> coset;
  u64 x = c % m;
  do {
    coset.push_back(x);
    x = (2 * x) % m;
  } while (x != c % m);
  return coset;
}

// All 2-cyclotomic cosets modulo an odd m, each starting at its least element.
inline std::vector<std::vector<u64>> cyclotomic_cosets(u64 m) {
  if (m == 0 || m % 2 == 0) throw DomainError("cyclotomic_cosets: m must be odd");
  std::vector<bool> seen(m, false);
  std::vector<std::vector<u64>> cosets;
  for (u64 c = 0; c < m; ++c) {
    if (seen[c]) continue;
    auto coset = cyclotomic_coset(c, m);
    for (u64 x : coset) seen[x] = true;
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

namespace detail {

// Splits f, known to be a product of distinct irreducibles of degree k, using
// random trace polynomials a + a^2 + ... + a^(2^(k-1)) mod f.
inline void equal_degree_split(const Gf2Poly& f, std::size_t k, std::mt19937_64& rng, std::vector<Gf2Poly>& out) {
  const std::size_t n = *f.degree();
  if (n == k) {
    out.push_back(f);
    return;
  }
  const std::size_t words = (n + 63) / 64;
  while (true) {
    std::vector<u64> coeffs(words);
    for (auto& w : coeffs) w = rng();
    if (n % 64) coeffs.back() &= (u64{1} << (n % 64)) - 1;
    Gf2Poly a = Gf2Poly::from_words(std::move(coeffs));
    Gf2Poly trace = a;
    for (std::size_t i = 1; i < k; ++i) {
      a = square(a) % f;
      trace += a;
    }
    const Gf2Poly g = gcd(f, trace);
    if (g.is_zero() || *g.degree() == 0 || *g.degree() == n) continue;
    equal_degree_split(g, k, rng, out);
    equal_degree_split(divmod(f, g).first, k, rng, out);
    return;
  }
}

}  // namespace detail

struct CyclotomicFactors {
  u64 divisor;                    // d | m
  std::size_t degree;             // ord_2(d), common degree of the factors
  std::vector<Gf2Poly> factors;   // irreducible factors of Phi_d, ascending
};

// Factors X^m + 1 (m odd) into distinct irreducibles grouped by the cyclotomic
// polynomial Phi_d they divide. Coset sizes fix the degree in each group, so
// every Phi_d goes straight to equal-degree splitting. `seed` makes the
// randomized splitting reproducible.
inline std::vector<CyclotomicFactors> factor_cyclic(u64 m, u64 seed = 0x5eed) {
  if (m == 0 || m % 2 == 0) throw DomainError("factor_cyclic: m must be odd");
  const Factorization fm = factorize(m);
  std::map<u64, Gf2Poly> phi;
  std::vector<CyclotomicFactors> groups;
  for (u64 d : fm.divisors()) {
    Gf2Poly cyclo = Gf2Poly::from_exponents({static_cast<std::size_t>(d), 0});
    for (const auto& [e, pe] : phi)
      if (d % e == 0) cyclo = divmod(cyclo, pe).first;
    phi.emplace(d, cyclo);
    const std::size_t k = cyclotomic_coset(m / d, m).size();
    CyclotomicFactors group{d, k, {}};
    std::mt19937_64 rng(seed ^ (d * 0x9E3779B97F4A7C15ull));
    detail::equal_degree_split(cyclo, k, rng, group.factors);
    std::sort(group.factors.begin(), group.factors.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

}  // namespace vos
