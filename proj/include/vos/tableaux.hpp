#pragma once

// Solution tableaux: the columns (e_i / l_i) of residual indices r_2(p_i) and
// lambda-reduced orders of a squarefree m = p_1 ... p_s, which determine
// i_2(m) through a sum over the 2^s subsets of columns.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vos/arith.hpp"
#include "vos/errors.hpp"
#include "vos/primes.hpp"

namespace vos {

struct Column {
  u64 e;  // residual index r_2(p)
  u64 l;  // lambda-reduced order
  friend auto operator<=>(const Column&, const Column&) = default;
};

// Columns sorted by e, then l; treated as a sorted multiset.
struct Tableau {
  std::vector<Column> columns;

  std::size_t size() const { return columns.size(); }
  void canonicalize() { std::sort(columns.begin(), columns.end()); }

  // "(e1/l1 e2/l2 ...)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(columns[i].e) + "/" + std::to_string(columns[i].l);
    }
    return s + ")";
  }

  static Tableau parse(std::string_view text) {
    std::string body(text);
    body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == '(' || c == ')'; }), body.end());
    std::istringstream in(body);
    Tableau t;
    std::string tok;
    while (in >> tok) {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) throw DomainError("tableau: column '" + tok + "' is not of the form e/l");
      try {
        std::size_t used_e = 0, used_l = 0;
        const u64 e = std::stoull(tok.substr(0, slash), &used_e);
        const u64 l = std::stoull(tok.substr(slash + 1), &used_l);
        if (used_e != slash || used_l != tok.size() - slash - 1 || e == 0 || l == 0) throw std::invalid_argument(tok);
        t.columns.push_back({e, l});
      } catch (const std::logic_error&) {
        throw DomainError("tableau: column '" + tok + "' is not of the form e/l with positive integers");
      }
    }
    if (t.columns.empty()) throw DomainError("tableau: no columns");
    t.canonicalize();
    return t;
  }

  friend bool operator==(const Tableau&, const Tableau&) = default;
  friend auto operator<=>(const Tableau&, const Tableau&) = default;
};

// l_i = lcm over j != i of gcd(a_j, a_i).
inline std::vector<u64> lambda_map(std::span<const u64> a) {
  if (a.size() < 2) throw DomainError("lambda_map: needs at least two entries");
  std::vector<u64> l(a.size(), 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) l[i] = std::lcm(l[i], std::gcd(a[i], a[j]));
  return l;
}

// For every prime dividing some entry, the maximal valuation is attained by at
// least two entries.
inline bool is_realizable(std::span<const u64> a) {
  if (a.size() < 2) throw DomainError("is_realizable: needs at least two entries");
  std::vector<u64> primes;
  for (u64 x : a) {
    if (x == 0) throw DomainError("is_realizable: entries must be positive");
    for (const auto& pp : factorize(x).factors) primes.push_back(pp.prime);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (u64 p : primes) {
    unsigned best = 0, hits = 0;
    for (u64 x : a) {
      const unsigned v = valuation(x, p);
      if (v > best) {
        best = v;
        hits = 1;
      } else if (v == best) {
        ++hits;
      }
    }
    if (hits < 2) return false;
  }
  return true;
}

// Tableau of the product of distinct odd primes, each with ord_2(p) odd.
inline Tableau tableau_of_primes(std::span<const u64> primes) {
  if (primes.size() < 2) throw DomainError("tableau_of: needs at least two distinct primes");
  std::vector<u64> ords;
  std::vector<u64> idx;
  for (u64 p : primes) {
    if (p < 3 || !is_prime(p)) throw DomainError("tableau_of: " + std::to_string(p) + " is not an odd prime");
    const u64 ord = order_mod_prime(2, p);
    if (ord % 2 == 0) throw DomainError("tableau_of: ord_2(" + std::to_string(p) + ") is even");
    ords.push_back(ord);
    idx.push_back((p - 1) / ord);
  }
  const auto l = lambda_map(ords);
  Tableau t;
  for (std::size_t i = 0; i < primes.size(); ++i) t.columns.push_back({idx[i], l[i]});
  t.canonicalize();
  return t;
}

inline Tableau tableau_of(u64 m) {
  if (m % 2 == 0) throw DomainError("tableau_of: m must be odd");
  const Factorization f = factorize(m);
  if (!f.squarefree()) throw DomainError("tableau_of: m must be squarefree");
  std::vector<u64> primes;
  for (const auto& pp : f.factors) primes.push_back(pp.prime);
  return tableau_of_primes(primes);
}

// Solution tableau: >= 2 columns, e_i even with v2(e_i) != 2, l_i odd, (l_i)
// realizable. The generalized variant drops the v2(e_i) != 2 condition.
inline bool is_solution_tableau(const Tableau& t, bool generalized = false) {
  if (t.size() < 2) return false;
  std::vector<u64> ls;
  for (const auto& c : t.columns) {
    if (c.e == 0 || c.e % 2 || c.l % 2 == 0) return false;
    if (!generalized && nu2(c.e) == 2) return false;
    ls.push_back(c.l);
  }
  return std::is_sorted(t.columns.begin(), t.columns.end()) && is_realizable(ls);
}

// Sum over subsets V of prod_{i in V} e_i * prod_{i in V} l_i / lcm_{i in V} l_i
// (empty product 1); equals i_2(p_1 ... p_s) for the primes behind the tableau.
inline u64 tableau_value(const Tableau& t) {
  const std::size_t s = t.size();
  if (s == 0 || s > 20) throw DomainError("tableau_value: column count must be in [1, 20]");
  u128 total = 0;
  for (u64 mask = 0; mask < (u64{1} << s); ++mask) {
    u128 term = 1;
    u64 l = 1;
    for (std::size_t i = 0; i < s; ++i) {
      if (!((mask >> i) & 1)) continue;
      // adding l_i to a running lcm L scales prod(l)/lcm(l) by gcd(L, l_i)
      const u64 g = std::gcd(l, t.columns[i].l);
      term = term * t.columns[i].e * g;
      l = l / g * t.columns[i].l;
    }
    total += term;
    if (total > static_cast<u128>(~u64{0})) throw DomainError("tableau_value: overflow");
  }
  return static_cast<u64>(total);
}

// Largest s with 3^s <= r: no tableau of value r has more columns.
inline std::size_t max_columns(u64 r) {
  std::size_t s = 0;
  for (u64 pow3 = 3; pow3 <= r; pow3 *= 3) ++s;
  return s;
}

// All (generalized) solution tableaux with at least two columns and value r.
// Every subset term is >= 1, so prod(1 + e_i) <= r bounds the residual
// indices; realizability gives prod(l)/lcm(l) >= lcm(l), so the common lcm L of
// the l_i satisfies prod(e) * L <= r - 1 - sum(e). For each admissible L the l_i
// range over divisors of L.
inline std::vector<Tableau> enumerate_solution_tableaux(u64 r, bool generalized = false) {
  if (r % 2 == 0) throw DomainError("enumerate_solution_tableaux: target must be odd");
  if (r < 3) throw DomainError("enumerate_solution_tableaux: target must be >= 3");
  std::vector<Tableau> out;
  const std::size_t s_max = max_columns(r);
  std::vector<u64> es;

  auto scan_ls = [&](const std::vector<u64>& e) {
    const std::size_t s = e.size();
    u64 prod_e = 1, sum_e = 0;
    for (u64 x : e) {
      prod_e *= x;
      sum_e += x;
    }
    if (1 + sum_e >= r) return;
    const u64 l_cap = (r - 1 - sum_e) / prod_e;
    std::vector<u64> ls(s);
    for (u64 L = 1; L <= l_cap; L += 2) {
      const std::vector<u64> divs = factorize(L).divisors();
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == s) {
          u64 lcm = 1;
          for (u64 x : ls) lcm = std::lcm(lcm, x);
          if (lcm != L || !is_realizable(ls)) return;
          Tableau t;
          for (std::size_t k = 0; k < s; ++k) t.columns.push_back({e[k], ls[k]});
          if (tableau_value(t) == r) out.push_back(std::move(t));
          return;
        }
        for (u64 d : divs) {
          if (i > 0 && e[i] == e[i - 1] && d < ls[i - 1]) continue;
          ls[i] = d;
          pick(i + 1);
        }
      };
      pick(0);
    }
  };

  std::function<void(std::size_t, u64, u64)> pick_e = [&](std::size_t s, u64 min_e, u64 budget) {
    if (es.size() == s) {
      scan_ls(es);
      return;
    }
    const std::size_t left = s - es.size();
    for (u64 e = min_e;; e += 2) {
      u128 need = 1;
      for (std::size_t k = 0; k < left; ++k) need *= (1 + e);
      if (need > budget) break;
      if (!generalized && nu2(e) == 2) continue;
      es.push_back(e);
      pick_e(s, e, budget / (1 + e));
      es.pop_back();
    }
  };
  for (std::size_t s = 2; s <= s_max; ++s) pick_e(s, 2, r);
  std::sort(out.begin(), out.end(), [](const Tableau& a, const Tableau& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace detail {

struct ColumnSearch {
  u64 index;      // residual index required of the prime
  u64 l;          // lambda target
  bool squared;   // prime enters squared (generalized column with v2(f) = 2)
};

// Depth-first search over candidate primes, one per column, in column order.
// Pairwise gcd(ord_i, ord_j) = gcd(l_i, l_j) is exactly the condition for
// lambda(ords) = (l_i) once (l_i) is realizable. `visit` returns false to stop.
inline void search_columns(const std::vector<ColumnSearch>& cols, u64 bound, std::optional<u128> product_cap,
                           const std::function<bool(const std::vector<u64>&)>& visit) {
  const std::size_t s = cols.size();
  std::vector<std::vector<u64>> candidates(s);
  for (std::size_t i = 0; i < s; ++i) {
    SearchSpec spec;
    spec.index_m = cols[i].index;
    spec.bound = bound;
    spec.non_wieferich_at_m = cols[i].squared;
    spec.required.push_back({1, lcm_checked(cols[i].index, cols[i].l)});
    // A prime power q^{k+1} with q^k || l_i that divides some other l_j cannot
    // divide ord_i, since it would then divide gcd(ord_i, ord_j) = gcd(l_i, l_j).
    for (std::size_t j = 0; j < s; ++j) {
      if (j == i) continue;
      for (const auto& qq : factorize(cols[j].l).factors) {
        const unsigned k = valuation(cols[i].l, qq.prime);
        if (qq.exponent <= k) continue;
        u64 qk1 = 1;
        for (unsigned t = 0; t <= k; ++t) qk1 *= qq.prime;
        spec.forbidden.push_back({1, lcm_checked(cols[i].index, cols[i].l) / std::gcd(cols[i].l, qk1) * qk1});
      }
    }
    candidates[i] = constrained_primes(spec);
    std::vector<u64> ords;
  }
  std::vector<u64> chosen(s), ords(s);
  bool stop = false;
  std::function<void(std::size_t, u128)> dfs = [&](std::size_t i, u128 product) {
    if (stop) return;
    if (i == s) {
      if (!visit(chosen)) stop = true;
      return;
    }
    for (u64 p : candidates[i]) {
      if (stop) return;
      u128 next = product * p;
      if (cols[i].squared) next *= p;
      if (product_cap && next > *product_cap) break;
      if (i > 0 && cols[i].index == cols[i - 1].index && cols[i].l == cols[i - 1].l &&
          cols[i].squared == cols[i - 1].squared && p <= chosen[i - 1])
        continue;
      if (std::find(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(i), p) !=
          chosen.begin() + static_cast<std::ptrdiff_t>(i))
        continue;
      const u64 ord = (p - 1) / cols[i].index;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = std::gcd(ord, ords[j]) == std::gcd(cols[i].l, cols[j].l);
      if (!ok) continue;
      chosen[i] = p;
      ords[i] = ord;
      dfs(i + 1, next);
    }
  };
  dfs(0, 1);
}

inline std::vector<ColumnSearch> plain_columns(const Tableau& t) {
  std::vector<ColumnSearch> cols;
  for (const auto& c : t.columns) cols.push_back({c.e, c.l, false});
  return cols;
}

}  // namespace detail

// Up to max_results realizations p_1 < ... (per column) with every prime <= bound,
// in lexicographic order of the prime tuple; each is re-verified by tableau_of.
inline std::vector<std::vector<u64>> realize_tableau_all(const Tableau& t, u64 bound,
                                                         std::size_t max_results = SIZE_MAX) {
  if (!is_solution_tableau(t)) throw DomainError("realize_tableau: " + t.to_string() + " is not a solution tableau");
  std::vector<std::vector<u64>> out;
  detail::search_columns(detail::plain_columns(t), bound, std::nullopt, [&](const std::vector<u64>& primes) {
    if (tableau_of_primes(primes) == t) out.push_back(primes);
    return out.size() < max_results;
  });
  return out;
}

// First realization in lexicographic order, or nullopt within the bound.
inline std::optional<std::vector<u64>> realize_tableau(const Tableau& t, u64 bound) {
  auto all = realize_tableau_all(t, bound, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// Realization with the smallest product of primes, all primes <= bound.
inline std::optional<std::vector<u64>> minimal_realization(const Tableau& t, u64 bound) {
  if (!is_solution_tableau(t)) throw DomainError("realize_tableau: " + t.to_string() + " is not a solution tableau");
  std::optional<std::vector<u64>> best;
  u128 best_product = 0;
  const auto cols = detail::plain_columns(t);
  // Restart with a tighter cap each time a smaller product turns up.
  while (true) {
    std::optional<u128> cap;
    if (best) cap = best_product - 1;
    bool improved = false;
    detail::search_columns(cols, bound, cap, [&](const std::vector<u64>& primes) {
      if (tableau_of_primes(primes) != t) return true;
      u128 prod = 1;
      for (u64 p : primes) prod *= p;
      if (!best || prod < best_product) {
        best = primes;
        best_product = prod;
        improved = true;
        return false;
      }
      return true;
    });
    if (!improved) break;
  }
  return best;
}

struct OmegaWitness {
  Factorization m;          // the witness 2n-1
  unsigned omega = 0;
  unsigned omega1 = 0;
  std::string source;       // tableau or class it came from
};

struct MaxOmegaStats {
  u64 target = 0;                       // 1 + 2e
  unsigned r_mu = 0;
  std::optional<u64> min_mu;            // smallest witness found within the bound
  unsigned r_omega1_lower = 0;          // witness-backed lower bound on r_omega1
  bool r_omega1_exact = false;          // type-II integers are not analyzed
  std::vector<Tableau> max_tableaux;    // solution tableaux with r_mu columns
  std::vector<OmegaWitness> witnesses;
};

namespace detail {

inline std::optional<OmegaWitness> realize_generalized(const Tableau& g, u64 target, u64 bound) {
  std::vector<ColumnSearch> cols;
  for (const auto& c : g.columns) {
    const bool squared = nu2(c.e) == 2;
    cols.push_back({squared ? c.e / 2 : c.e, c.l, squared});
  }
  std::optional<OmegaWitness> found;
  search_columns(cols, bound, std::nullopt, [&](const std::vector<u64>& primes) {
    u128 m = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) m *= cols[i].squared ? static_cast<u128>(primes[i]) * primes[i] : primes[i];
    if (m > (u128{1} << 63)) return true;
    const Factorization f = factorize(static_cast<u64>(m));
    if (mult_order(2, f) % 2 == 0 || irreducible_count(2, f) != target) return true;
    const auto a = arithmetic_functions(f);
    found = OmegaWitness{f, a.omega, a.omega1, g.to_string()};
    return false;
  });
  return found;
}

}  // namespace detail

// r_mu(e) is decided exactly from solution tableaux of value 1 + 2e together
// with single primes: a prime p with i_2(p) = 1 + 2e lies in P_{2e}, which is
// nonempty exactly when v2(2e) != 2. Witnesses (and min_mu) come from searching
// primes up to `bound`; r_omega1 gets a witness-backed lower bound from
// generalized tableaux whose v2(f) = 2 columns become squares of non-Wieferich primes.
inline MaxOmegaStats max_omega_stats(u64 e, u64 bound) {
  if (e == 0) throw DomainError("max_omega_stats: e must be positive");
  const u64 r = 1 + 2 * e;
  if (r > 10'000) throw SizeError("max_omega_stats: 1 + 2e must be <= 10^4", r);
  MaxOmegaStats st;
  st.target = r;
  const bool single_prime = nu2(2 * e) != 2;

  const auto tableaux = enumerate_solution_tableaux(r, false);
  std::size_t s_tab = 0;
  for (const auto& t : tableaux) s_tab = std::max(s_tab, t.size());
  st.r_mu = static_cast<unsigned>(std::max<std::size_t>(s_tab, single_prime ? 1 : 0));

  if (st.r_mu >= 2) {
    std::optional<u128> best;
    for (const auto& t : tableaux) {
      if (t.size() != st.r_mu) continue;
      st.max_tableaux.push_back(t);
      if (auto primes = minimal_realization(t, bound)) {
        u128 prod = 1;
        for (u64 p : *primes) prod *= p;
        if (!best || prod < *best) best = prod;
        const Factorization f = factorize(static_cast<u64>(prod));
        const auto a = arithmetic_functions(f);
        st.witnesses.push_back({f, a.omega, a.omega1, t.to_string()});
      }
    }
    if (best) st.min_mu = static_cast<u64>(*best);
  } else if (st.r_mu == 1) {
    SearchSpec spec;
    spec.index_m = 2 * e;
    spec.bound = bound;
    if (auto p = constrained_prime_search(spec)) {
      st.min_mu = *p;
      st.witnesses.push_back({factorize(*p), 1, 1, "P_" + std::to_string(2 * e)});
    }
  }

  for (const auto& w : st.witnesses) st.r_omega1_lower = std::max(st.r_omega1_lower, w.omega1);
  auto generalized = enumerate_solution_tableaux(r, true);
  std::stable_sort(generalized.begin(), generalized.end(), [](const Tableau& a, const Tableau& b) {
    auto plain = [](const Tableau& t) {
      return std::count_if(t.columns.begin(), t.columns.end(), [](const Column& c) { return nu2(c.e) != 2; });
    };
    return plain(a) > plain(b);
  });
  for (const auto& g : generalized) {
    const auto plain = static_cast<unsigned>(
        std::count_if(g.columns.begin(), g.columns.end(), [](const Column& c) { return nu2(c.e) != 2; }));
    if (plain <= st.r_omega1_lower) break;
    if (is_solution_tableau(g)) continue;  // already covered by r_mu
    if (auto w = detail::realize_generalized(g, r, bound)) {
      st.r_omega1_lower = std::max(st.r_omega1_lower, w->omega1);
      st.witnesses.push_back(*w);
    }
  }
  return st;
}

}  // namespace vos
