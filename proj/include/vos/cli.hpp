#pragma once

// Subcommand front end. run() parses argv, dispatches to the library and
// returns a status, a JSON payload and rendered output; it never exits.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "vos/arith.hpp"
#include "vos/census.hpp"
#include "vos/codes.hpp"
#include "vos/errors.hpp"
#include "vos/primes.hpp"
#include "vos/sequences.hpp"
#include "vos/tableaux.hpp"

namespace vos::cli {

using json = nlohmann::ordered_json;

enum class Status { ok, domain_error, size_error, not_found, usage, help };

struct CommandResult {
  Status status = Status::ok;
  json payload;
  double timing_ms = 0;
  std::string output;  // rendered stdout
  std::string errors;  // rendered stderr

  int exit_code() const {
    switch (status) {
      case Status::ok:
      case Status::help:
        return 0;
      case Status::domain_error:
      case Status::usage:
        return 2;
      case Status::size_error:
      case Status::not_found:
        return 3;
    }
    return 2;
  }
};

inline const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::domain_error: return "domain_error";
    case Status::size_error: return "size_error";
    case Status::not_found: return "not_found";
    case Status::usage: return "usage";
    case Status::help: return "help";
  }
  return "usage";
}

// Thrown by handlers when a search finishes without a result.
struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// key=value lines; '#' starts a comment. Recognized keys supply defaults for the
// matching options of every subcommand: bound, cap, x, p-max, samples, precision.
inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  static const std::vector<std::string> known = {"bound", "cap", "x", "p-max", "samples", "precision", "max"};
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace detail {

inline std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

// Densities go out with exactly 9 decimals: as a number in JSON, as text elsewhere.
inline json density_value(double v) { return json::parse(fixed9(v)); }

inline json scount_json(const SCount& c) {
  if (auto v = c.value()) return *v;
  return c.to_string();
}

inline std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

inline std::string join(const json& arr, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += sep;
    s += scalar_text(arr[i]);
  }
  return s;
}

// Generic text rendering: "key: value" per line, arrays comma-joined.
inline std::string render_text(const json& payload) {
  if (!payload.is_object()) return scalar_text(payload) + "\n";
  std::string out;
  for (const auto& [k, v] : payload.items()) {
    out += k + ": ";
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return !e.is_structured(); }))
      out += join(v, ",");
    else if (v.is_structured())
      out += v.dump();
    else
      out += scalar_text(v);
    out += "\n";
  }
  return out;
}

inline std::string csv_cell(const json& v) {
  std::string s = v.is_array() ? join(v, " ") : v.is_structured() ? v.dump() : scalar_text(v);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// Generic CSV: key,value rows; a top-level "rows" array of objects becomes a table.
inline std::string render_csv(const json& payload) {
  std::string out;
  if (payload.is_object() && payload.contains("rows") && payload["rows"].is_array() && !payload["rows"].empty() &&
      payload["rows"][0].is_object()) {
    const json& rows = payload["rows"];
    bool first = true;
    for (const auto& [k, v] : rows[0].items()) {
      out += (first ? "" : ",") + k;
      first = false;
    }
    out += "\n";
    for (const auto& row : rows) {
      first = true;
      for (const auto& [k, v] : row.items()) {
        out += (first ? "" : ",") + csv_cell(v);
        first = false;
      }
      out += "\n";
    }
    return out;
  }
  out = "key,value\n";
  if (!payload.is_object()) return out + "value," + csv_cell(payload) + "\n";
  for (const auto& [k, v] : payload.items()) out += k + "," + csv_cell(v) + "\n";
  return out;
}

inline std::vector<u64> parse_csv_integers(const std::string& text, const char* what) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    tok = tok.substr(b);
    std::size_t used = 0;
    u64 v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      throw DomainError(std::string(what) + ": '" + tok + "' is not a nonnegative integer");
    }
    if (used != tok.find_last_not_of(' ') + 1) throw DomainError(std::string(what) + ": '" + tok + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

inline json tableau_json(const Tableau& t) {
  json cols = json::array();
  for (const auto& c : t.columns) cols.push_back({c.e, c.l});
  return cols;
}

inline json report_json(const CensusReport& r) {
  json j;
  j["x"] = r.x;
  j["counts"] = json::object();
  for (const auto& [k, v] : r.counts) j["counts"][k] = v;
  j["predicted"] = json::object();
  for (const auto& [k, v] : r.predicted) j["predicted"][k] = density_value(v);
  j["ratios"] = json::object();
  for (const auto& [k, v] : r.ratios) j["ratios"][k] = density_value(v);
  j["observed"] = json::object();
  for (const auto& [k, v] : r.observed) j["observed"][k] = density_value(v);
  j["members"] = json::object();
  for (const auto& [k, v] : r.members) j["members"][k] = v;
  return j;
}

}  // namespace detail

// Output of a handler: payload plus optional format-specific renderings that
// replace the generic ones.
struct Rendered {
  json payload;
  std::optional<std::string> text;
  std::optional<std::string> csv;
};

inline CommandResult run(const std::vector<std::string>& argv_in) {
  using detail::density_value;
  CommandResult result;
  const auto started = std::chrono::steady_clock::now();

  CLI::App app{"Very odd sequences: counting, enumeration, codes, prime classes, tableaux and census", "vos"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string config_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--config", config_path, "key=value file with default bounds and tolerances");

  std::map<std::string, std::string> config;
  // Options whose defaults may come from the config file; applied after parsing
  // to every one of them the command line left untouched.
  std::vector<std::tuple<CLI::App*, CLI::Option*, std::string>> configurable;
  // Required options that the config file may also supply; checked after it is read.
  std::vector<std::pair<CLI::App*, CLI::Option*>> required_after_config;
  std::function<Rendered()> handler;

  auto bind_config = [&](CLI::App* sub, CLI::Option* opt, const std::string& key) {
    configurable.emplace_back(sub, opt, key);
    return opt;
  };

  // check
  std::string bits_a, bits_b;
  auto* check = app.add_subcommand("check", "Test whether a 0/1 string is very odd");
  check->add_option("bits", bits_a)->required();
  check->callback([&] {
    handler = [&] {
      const auto s = BitSequence::from_string(bits_a);
      const auto profile = autocorrelation_profile(s);
      const bool ok = std::all_of(profile.begin(), profile.end(), [](u64 a) { return a % 2 == 1; });
      json p;
      p["sequence"] = bits_a;
      p["length"] = s.size();
      p["very_odd"] = ok;
      p["A"] = profile;
      std::string text = std::string("very_odd=") + (ok ? "true" : "false") + " A=(" + detail::join(p["A"], ",") + ")\n";
      return Rendered{p, text, std::nullopt};
    };
  });

  // count
  u64 n_arg = 0;
  auto* count = app.add_subcommand("count", "S(n), the number of very odd sequences of length n");
  count->add_option("n", n_arg)->required();
  count->callback([&] {
    handler = [&] {
      const SCount c = s_count(n_arg);
      json p;
      p["n"] = n_arg;
      p["S"] = detail::scount_json(c);
      p["positive"] = c.positive;
      p["exponent"] = c.positive ? json(c.exponent) : json(nullptr);
      return Rendered{p, c.to_string() + "\n", std::nullopt};
    };
  });

  // enumerate
  u64 cap = kDefaultEnumerationCap;
  auto* enumerate = app.add_subcommand("enumerate", "List every very odd sequence of length n");
  enumerate->add_option("n", n_arg)->required();
  bind_config(enumerate, enumerate->add_option("--cap", cap, "Refuse to list more than this many sequences"), "cap");
  enumerate->callback([&] {
    handler = [&] {
      const auto seqs = enumerate_vos(n_arg, cap);
      json p;
      p["n"] = n_arg;
      p["count"] = seqs.size();
      p["sequences"] = json::array();
      std::string text, csv = "sequence\n";
      for (const auto& s : seqs) {
        p["sequences"].push_back(s.to_string());
        text += s.to_string() + "\n";
        csv += s.to_string() + "\n";
      }
      return Rendered{p, text, csv};
    };
  });

  // tensor
  auto* tens = app.add_subcommand("tensor", "Tensor product of two very odd sequences");
  tens->add_option("a", bits_a)->required();
  tens->add_option("b", bits_b)->required();
  tens->callback([&] {
    handler = [&] {
      const auto t = tensor(BitSequence::from_string(bits_a), BitSequence::from_string(bits_b));
      json p;
      p["sequence"] = t.to_string();
      p["length"] = t.size();
      p["very_odd"] = is_very_odd(t);
      return Rendered{p, t.to_string() + "\n", std::nullopt};
    };
  });

  // i2
  u64 m_arg = 0, q_arg = 2;
  auto* i2 = app.add_subcommand("i2", "i_q(m), the number of irreducible factors of X^m - 1 over F_q");
  i2->add_option("m", m_arg)->required();
  i2->add_option("--q", q_arg, "Field size (prime power)");
  i2->callback([&] {
    handler = [&] {
      const u64 v = irreducible_count(q_arg, m_arg);
      json p;
      p["m"] = m_arg;
      p["q"] = q_arg;
      p["value"] = v;
      return Rendered{p, std::to_string(v) + "\n", std::nullopt};
    };
  });

  // rank
  u64 d_arg = 0;
  auto* rank = app.add_subcommand("rank", "Rank of the Ulmer curve y^2 + xy = x^3 - t^d over F_q(t)");
  rank->add_option("--q", q_arg)->required();
  rank->add_option("--d", d_arg)->required();
  rank->callback([&] {
    handler = [&] {
      const auto r = ulmer_rank(q_arg, d_arg);
      json p;
      p["q"] = q_arg;
      p["d"] = d_arg;
      p["rank"] = r.rank;
      p["divides_p_power_plus_one"] = r.divides_p_power_plus_one;
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // stufe
  auto* stufe = app.add_subcommand("stufe", "Level of the cyclotomic field Q(zeta_m)");
  stufe->add_option("m", m_arg)->required();
  stufe->callback([&] {
    handler = [&] {
      const auto lvl = stufe_level(m_arg);
      json p;
      p["m"] = m_arg;
      p["level"] = lvl ? json(*lvl) : json(nullptr);
      return Rendered{p, (lvl ? std::to_string(*lvl) : std::string("none")) + "\n", std::nullopt};
    };
  });

  // code
  bool want_distance = false;
  u64 samples = 0;
  auto* code = app.add_subcommand("code", "Self-dual [2n, n] code of a very odd sequence of length n");
  code->add_option("n", n_arg)->required();
  code->add_option("--sequence", bits_a, "Use this very odd sequence instead of the first enumerated one");
  code->add_flag("--min-distance", want_distance, "Compute the weight distribution");
  bind_config(code, code->add_option("--samples", samples, "Random codewords to inspect when the dimension is too large"),
              "samples");
  code->callback([&] {
    handler = [&] {
      std::optional<BitSequence> s;
      if (!bits_a.empty()) {
        s = BitSequence::from_string(bits_a);
        if (s->size() != n_arg) throw DomainError("code: sequence length differs from n");
      } else {
        s = first_vos(n_arg);
        if (!s) throw NotFound("code: S(" + std::to_string(n_arg) + ") = 0, no very odd sequence exists");
      }
      const auto c = build_self_dual_code(*s);
      json p;
      p["n"] = n_arg;
      p["sequence"] = s->to_string();
      p["length"] = c.length();
      p["dimension"] = c.dimension();
      p["self_orthogonal"] = is_self_orthogonal(c);
      p["generator_hex"] = c.generator_hex();
      if (want_distance) {
        if (c.dimension() <= kMaxExhaustiveDimension) {
          const auto props = code_properties(c);
          p["exhaustive"] = true;
          p["self_dual"] = props.self_dual;
          p["doubly_even"] = props.doubly_even;
          p["min_distance"] = props.min_distance;
          p["weight_enumerator"] = json::object();
          for (const auto& [w, k] : props.weight_enumerator) p["weight_enumerator"][std::to_string(w)] = k;
        } else {
          const auto sp = sample_code_weights(c, samples ? samples : 100000);
          p["exhaustive"] = false;
          p["samples"] = sp.samples;
          p["min_weight_upper_bound"] = sp.min_weight_upper_bound;
          p["sampled_weights_divisible_by_4"] = sp.all_weights_divisible_by_4;
        }
      }
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // ds-verify
  std::string set_csv;
  auto* ds = app.add_subcommand("ds-verify", "Verify a cyclic difference set and derive its very odd sequence");
  ds->add_option("--n", n_arg, "Modulus N")->required();
  ds->add_option("--set", set_csv, "Comma-separated residues")->required();
  ds->callback([&] {
    handler = [&] {
      const auto w = verify_difference_set(detail::parse_csv_integers(set_csv, "ds-verify"), n_arg);
      json p;
      p["N"] = w.modulus;
      p["set"] = w.set;
      p["k"] = w.k;
      p["lambda"] = w.lambda;
      p["is_difference_set"] = true;
      try {
        const auto s = difference_set_sequence(w);
        p["sequence"] = s.to_string();
        p["very_odd"] = true;
      } catch (const DomainError& e) {
        p["sequence"] = nullptr;
        p["very_odd"] = false;
        p["reason"] = e.what();
      }
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // prime
  u64 p_arg = 0;
  auto* prime = app.add_subcommand("prime", "Classify a prime by the order of 2");
  prime->add_option("p", p_arg)->required();
  prime->callback([&] {
    handler = [&] {
      const auto c = classify_prime(p_arg);
      json p;
      p["p"] = c.p;
      p["ord2"] = c.ord2;
      p["index"] = c.index_m;
      p["in_P"] = c.in_P;
      p["wieferich"] = c.wieferich;
      p["in_Pm"] = c.in_Pm;
      p["in_Pm_prime"] = c.in_Pm_prime;
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // pm
  u64 x_arg = 0;
  auto* pm = app.add_subcommand("pm", "Primes p <= x in P_m");
  pm->add_option("m", m_arg)->required();
  required_after_config.emplace_back(pm, bind_config(pm, pm->add_option("--x", x_arg), "x"));
  pm->callback([&] {
    handler = [&] {
      if (x_arg >= (u64{1} << 32)) throw SizeError("pm: x must be below 2^32", x_arg);
      const auto members = pm_members(m_arg, x_arg);
      json p;
      p["m"] = m_arg;
      p["x"] = x_arg;
      p["count"] = members.size();
      p["primes"] = members;
      std::string csv = "p\n";
      for (u64 q : members) csv += std::to_string(q) + "\n";
      return Rendered{p, std::nullopt, csv};
    };
  });

  // wieferich
  auto* wief = app.add_subcommand("wieferich", "Wieferich primes up to x");
  required_after_config.emplace_back(wief, bind_config(wief, wief->add_option("--x", x_arg), "x"));
  wief->callback([&] {
    handler = [&] {
      if (x_arg > 100'000'000) throw SizeError("wieferich: x must be <= 10^8", x_arg);
      const auto hits = wieferich_scan(x_arg);
      json p;
      p["x"] = x_arg;
      p["primes"] = hits;
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // tableau
  std::vector<std::string> tableau_words;  // one quoted argument or one word per column
  auto tableau_text = [&] { return detail::join(json(tableau_words), " "); };
  u64 bound = 1'000'000, r_arg = 0, max_results = 0;
  bool generalized = false, all = false;
  auto* tab = app.add_subcommand("tableau", "Solution tableaux");
  tab->require_subcommand(1);
  auto* tvalue = tab->add_subcommand("value", "Value of a tableau, e.g. \"(2/3 2/15 8/5)\"");
  tvalue->add_option("tableau", tableau_words, "Columns e/l, e.g. \"(2/3 2/15 8/5)\"")->required();
  tvalue->callback([&] {
    handler = [&] {
      const auto t = Tableau::parse(tableau_text());
      const u64 v = tableau_value(t);
      json p;
      p["tableau"] = t.to_string();
      p["columns"] = detail::tableau_json(t);
      p["value"] = v;
      p["solution_tableau"] = is_solution_tableau(t);
      return Rendered{p, std::to_string(v) + "\n", std::nullopt};
    };
  });
  auto* tenum = tab->add_subcommand("enumerate", "All solution tableaux of value r");
  tenum->add_option("r", r_arg)->required();
  tenum->add_flag("--generalized", generalized);
  tenum->callback([&] {
    handler = [&] {
      const auto ts = enumerate_solution_tableaux(r_arg, generalized);
      json p;
      p["r"] = r_arg;
      p["generalized"] = generalized;
      p["count"] = ts.size();
      p["tableaux"] = json::array();
      p["rows"] = json::array();
      std::string text;
      for (const auto& t : ts) {
        p["tableaux"].push_back(t.to_string());
        p["rows"].push_back({{"tableau", t.to_string()}, {"columns", t.size()}});
        text += t.to_string() + "\n";
      }
      return Rendered{p, text, std::nullopt};
    };
  });
  auto* treal = tab->add_subcommand("realize", "Primes realizing a solution tableau");
  treal->add_option("tableau", tableau_words, "Columns e/l, e.g. \"(2/3 2/15 8/5)\"")->required();
  bind_config(treal, treal->add_option("--bound", bound, "Largest prime considered"), "bound");
  treal->add_flag("--all", all, "List every realization within the bound");
  bind_config(treal, treal->add_option("--max", max_results, "With --all, stop after this many (0: no limit)"), "max");
  treal->callback([&] {
    handler = [&] {
      const auto t = Tableau::parse(tableau_text());
      std::vector<std::vector<u64>> found;
      if (all)
        found = realize_tableau_all(t, bound, max_results == 0 ? SIZE_MAX : max_results);
      else if (auto r = realize_tableau(t, bound))
        found.push_back(*r);
      if (found.empty()) throw NotFound("tableau realize: no realization with primes <= " + std::to_string(bound));
      json p;
      p["tableau"] = t.to_string();
      p["bound"] = bound;
      p["realizations"] = json::array();
      p["rows"] = json::array();
      std::string text;
      for (const auto& primes : found) {
        u64 m = 1;
        for (u64 q : primes) m *= q;
        const u64 i2v = irreducible_count(2, m);
        p["realizations"].push_back({{"primes", primes}, {"m", m}, {"i2", i2v}});
        p["rows"].push_back({{"primes", primes}, {"m", m}, {"i2", i2v}});
        text += detail::join(json(primes), " ") + "\n";
      }
      return Rendered{p, text, std::nullopt};
    };
  });
  auto* tof = tab->add_subcommand("of", "Tableau of a squarefree odd m");
  tof->add_option("m", m_arg)->required();
  tof->callback([&] {
    handler = [&] {
      const auto t = tableau_of(m_arg);
      json p;
      p["m"] = m_arg;
      p["tableau"] = t.to_string();
      p["columns"] = detail::tableau_json(t);
      p["value"] = tableau_value(t);
      return Rendered{p, t.to_string() + "\n", std::nullopt};
    };
  });
  u64 e_arg = 0;
  auto* tmax = tab->add_subcommand("max-omega", "r_mu(e), min_mu(e) and a lower bound for r_omega1(e)");
  tmax->add_option("e", e_arg)->required();
  bind_config(tmax, tmax->add_option("--bound", bound, "Largest prime considered for witnesses"), "bound");
  tmax->callback([&] {
    handler = [&] {
      const auto st = max_omega_stats(e_arg, bound);
      json p;
      p["e"] = e_arg;
      p["target"] = st.target;
      p["r_mu"] = st.r_mu;
      p["min_mu"] = st.min_mu ? json(*st.min_mu) : json(nullptr);
      p["min_mu_bound"] = bound;
      p["r_omega1_lower"] = st.r_omega1_lower;
      p["r_omega1_exact"] = st.r_omega1_exact;
      p["max_tableaux"] = json::array();
      for (const auto& t : st.max_tableaux) p["max_tableaux"].push_back(t.to_string());
      p["witnesses"] = json::array();
      for (const auto& w : st.witnesses)
        p["witnesses"].push_back({{"m", w.m.value},
                                  {"factorization", w.m.to_string()},
                                  {"omega", w.omega},
                                  {"omega1", w.omega1},
                                  {"source", w.source}});
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // census
  std::string values_csv;
  auto* census = app.add_subcommand("census", "Counts of n <= x by S(n)");
  required_after_config.emplace_back(census, bind_config(census, census->add_option("--x", x_arg), "x"));
  census->add_option("--values", values_csv, "Comma-separated powers of two v for N_v(x)");
  census->callback([&] {
    handler = [&] {
      auto report = ord_parity_sieve(x_arg);
      json p = detail::report_json(report);
      p["counts"]["St4"] = stufe4_count(x_arg);
      if (!values_csv.empty()) {
        const auto vr = value_census(x_arg, detail::parse_csv_integers(values_csv, "census --values"));
        p["values"] = detail::report_json(vr);
        p["values"]["N_2 == P_2(2x-1)"] = vr.counts.count("N_2") ? json(vr.counts.at("N_2") == vr.counts.at("P_2(2x-1)"))
                                                                  : json(nullptr);
      }
      return Rendered{p, std::nullopt, std::nullopt};
    };
  });

  // density
  auto* density = app.add_subcommand("density", "Density constants");
  density->require_subcommand(1);
  auto* dpm = density->add_subcommand("pm", "Density of P_m among primes");
  dpm->add_option("m", m_arg)->required();
  dpm->callback([&] {
    handler = [&] {
      const double v = pm_density(m_arg);
      json p;
      p["m"] = m_arg;
      p["density"] = density_value(v);
      return Rendered{p, detail::fixed9(v) + "\n", std::nullopt};
    };
  });
  u64 a_arg = 0, f_arg = 1, pmax = 1000;
  auto* dthm3 = density->add_subcommand("thm3", "Density of primes with r_2(p) = 2e and p = a (mod f)");
  dthm3->add_option("--e", e_arg)->required();
  dthm3->add_option("--a", a_arg)->required();
  dthm3->add_option("--f", f_arg)->required();
  bind_config(dthm3, dthm3->add_option("--p-max", pmax, "Explicit product over primes up to this bound"), "p-max");
  dthm3->callback([&] {
    handler = [&] {
      const auto d = thm3_density(e_arg, a_arg, f_arg, pmax);
      json p;
      p["e"] = e_arg;
      p["a"] = d.residue;
      p["f"] = d.modulus;
      p["density"] = density_value(d.value);
      p["truncated"] = density_value(d.truncated);
      p["error_bound"] = d.error_bound;
      p["ratio_to_A"] = density_value(d.value / artin_constant_exact());
      return Rendered{p, detail::fixed9(d.value) + "\n", std::nullopt};
    };
  });
  double precision = 1e-10;
  u64 truncate_at = 0;
  auto* dartin = density->add_subcommand("artin", "Artin's constant");
  bind_config(dartin, dartin->add_option("--precision", precision), "precision");
  dartin->add_option("--truncate", truncate_at, "Plain product over p <= this bound instead");
  dartin->callback([&] {
    handler = [&] {
      json p;
      double v = 0;
      if (truncate_at) {
        v = artin_constant_truncated(truncate_at);
        p["truncated_at"] = truncate_at;
        p["accelerated"] = false;
      } else {
        v = artin_constant(precision);
        p["precision"] = precision;
        p["accelerated"] = true;
      }
      p["A"] = density_value(v);
      return Rendered{p, detail::fixed9(v) + "\n", std::nullopt};
    };
  });

  auto finish = [&](Status st) {
    result.status = st;
    result.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
  };

  std::vector<std::string> argv(argv_in.rbegin(), argv_in.rend());  // CLI11 expects reversed order
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    result.output = app.help();
    return finish(Status::help);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    result.errors = err.str() + out.str();
    if (result.errors.find("Run with --help") == std::string::npos) result.errors += app.help();
    result.payload = {{"error", e.what()}};
    return finish(Status::usage);
  }

  auto fail = [&](Status st, const std::string& msg, json extra = json::object()) {
    result.payload = {{"status", status_name(st)}, {"error", msg}};
    for (const auto& [k, v] : extra.items()) result.payload[k] = v;
    result.errors = msg + "\n";
    if (format == "json") result.output = result.payload.dump(2) + "\n";
    return finish(st);
  };

  try {
    if (!config_path.empty()) config = read_config(config_path);
    for (auto& [sub, opt, key] : configurable) {
      auto it = config.find(key);
      if (!sub->parsed() || it == config.end() || opt->count() > 0) continue;
      opt->clear();
      opt->add_result(it->second);
      opt->run_callback();
    }
    for (auto [sub, opt] : required_after_config)
      if (sub->parsed() && opt->count() == 0)
        return fail(Status::usage, opt->get_name() + " is required (on the command line or in the config file)");
    if (!handler) return fail(Status::usage, "no subcommand given");
    Rendered r = handler();
    result.payload = r.payload;
    if (format == "json")
      result.output = r.payload.dump(2) + "\n";
    else if (format == "csv")
      result.output = r.csv ? *r.csv : detail::render_csv(r.payload);
    else
      result.output = r.text ? *r.text : detail::render_text(r.payload);
    return finish(Status::ok);
  } catch (const SizeError& e) {
    json extra = {{"size", e.count()}, {"size_is_log2", e.count_is_log2()}};
    return fail(Status::size_error, e.what(), extra);
  } catch (const NotFound& e) {
    return fail(Status::not_found, e.what());
  } catch (const NotADifferenceSet& e) {
    return fail(Status::domain_error, e.what(), {{"residue", e.residue()}});
  } catch (const DomainError& e) {
    return fail(Status::domain_error, e.what());
  } catch (const CLI::ParseError& e) {
    return fail(Status::usage, std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return fail(Status::domain_error, e.what());
  } catch (const std::out_of_range& e) {
    return fail(Status::domain_error, e.what());
  }
}

}  // namespace vos::cli
