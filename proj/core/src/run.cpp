#include "booldisc/run.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "booldisc/certify.hpp"
#include "booldisc/errors.hpp"
#include "booldisc/strategies.hpp"

namespace booldisc {

namespace {

using nlohmann::json;

std::string bits_to_string(std::uint32_t idx, int n) {
  std::string out(n, '0');
  for (int i = 1; i <= n; ++i) out[i - 1] = bit_at(idx, i, n) ? '1' : '0';
  return out;
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

BoolFunc random_function(int n, SplitMix64& rng) {
  std::vector<std::uint8_t> table(1u << n);
  for (auto& bit : table) bit = static_cast<std::uint8_t>(rng.next() & 1u);
  return BoolFunc(n, std::move(table));
}

int resolve_single_n(const RunConfig& config) {
  if (config.n_values.size() > 1) {
    throw std::invalid_argument("this command takes a single n, not a range");
  }
  int hint = config.n_values.empty() ? 0 : config.n_values.front();
  if (hint == 0 && config.fn.n == 0) {
    throw std::invalid_argument("--n is required for this function descriptor");
  }
  return hint != 0 ? hint : config.fn.n;
}

double resolve_single_s(const RunConfig& config) {
  if (config.s_values.size() != 1) {
    throw std::invalid_argument("this command takes exactly one s value");
  }
  return config.s_values.front();
}

json function_block(const RunConfig& config, const BoolFunc& f) {
  return json{{"descriptor", config.fn_text}, {"n", f.n()}, {"truth_table", f.to_text()}};
}

json certificate_block(const BoolFunc& f, const AffineCertificate& cert) {
  json block;
  block["verdict"] = cert.affine ? "AFFINE" : "NOT_AFFINE";
  if (cert.coefficients) {
    block["coefficients"] = {
        {"b0", cert.coefficients->b0}, {"b", cert.coefficients->b}, {"m", cert.coefficients->m}};
  }
  if (cert.failure_stage) {
    switch (*cert.failure_stage) {
      case CertStage::Balance: block["failure_stage"] = "BALANCE"; break;
      case CertStage::Counting: block["failure_stage"] = "COUNTING"; break;
      case CertStage::Flip: block["failure_stage"] = "FLIP"; break;
      case CertStage::Recursion: block["failure_stage"] = "RECURSION"; break;
    }
  }
  if (cert.witness) {
    block["witness"] = {{"x", bits_to_string(cert.witness->x, f.n())},
                        {"y", bits_to_string(cert.witness->y, f.n())},
                        {"path_length", cert.witness->path_length},
                        {"count0", cert.witness->count0},
                        {"count1", cert.witness->count1}};
  }
  return block;
}

std::string closed_form_column(const FuncSpec& spec, int n, Overlap s) {
  switch (spec.kind) {
    case FuncSpec::Kind::And:
      return format_double(and_greedy_closed_form(n, s));
    case FuncSpec::Kind::Maj:
      return format_double(maj_greedy_closed_form((n - 1) / 2, s));
    case FuncSpec::Kind::Parity:
      return format_double(affine_closed_form(std::popcount(spec.mask), s));
    default:
      return "";
  }
}

}  // namespace

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 17; ++k) grid.push_back(0.05 * k);
  grid.push_back(0.90);
  return grid;
}

std::vector<double> default_residual_grid() { return {0.3, 0.5, 0.7}; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string run_analyze(const RunConfig& config) {
  int n = resolve_single_n(config);
  Overlap s(resolve_single_s(config));
  BoolFunc f = from_spec(config.fn, n);

  StrategyReport report = analyze(f, s, config.tol);
  AffineCertificate cert = certify_affine(f);

  json doc;
  doc["schema"] = 1;
  doc["command"] = "analyze";
  doc["function"] = function_block(config, f);
  doc["s"] = s.value();
  doc["report"] = {{"p_greedy", report.p_greedy},
                   {"p_global", report.p_global},
                   {"p_pgm", report.p_pgm},
                   {"gap", report.gap},
                   {"bk_slack", report.bk_slack},
                   {"methods",
                    {{"greedy", report.greedy_method},
                     {"global", report.global_method},
                     {"pgm", report.pgm_method}}}};
  doc["certificate"] = certificate_block(f, cert);
  json residuals;
  residuals["pgm_commutator"] = pgm_optimality_residual(f, s);
  if (balanced_or_constant(f) == BalanceClass::Constant) {
    residuals["gram_relation"] = nullptr;
  } else {
    residuals["gram_relation"] = gram_relation_residual(f, s);
  }
  doc["residuals"] = residuals;
  return doc.dump(2) + "\n";
}

std::string run_sweep(const RunConfig& config) {
  std::vector<int> ns = config.n_values;
  if (ns.empty()) {
    if (config.fn.n == 0) throw std::invalid_argument("sweep needs --n or an n-carrying descriptor");
    ns.push_back(config.fn.n);
  }
  std::vector<double> grid = config.s_values.empty() ? default_sweep_grid() : config.s_values;

  struct Row {
    int n;
    double s;
    StrategyReport report;
    std::string closed_form;
  };
  std::vector<Row> rows;
  for (int n : ns) {
    if (config.fn.kind == FuncSpec::Kind::Maj && n % 2 == 0) continue;
    BoolFunc f = from_spec(config.fn, n);
    for (double sv : grid) {
      Overlap s(sv);
      rows.push_back(Row{n, sv, analyze(f, s, config.tol), closed_form_column(config.fn, n, s)});
    }
  }

  if (config.format == RunConfig::Format::Json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "sweep";
    doc["rows"] = json::array();
    for (const Row& row : rows) {
      json r = {{"n", row.n},          {"s", row.s},
                {"p_greedy", row.report.p_greedy}, {"p_global", row.report.p_global},
                {"p_pgm", row.report.p_pgm},       {"gap", row.report.gap},
                {"bk_slack", row.report.bk_slack}};
      if (!row.closed_form.empty()) r["closed_form"] = std::stod(row.closed_form);
      doc["rows"].push_back(r);
    }
    return doc.dump(2) + "\n";
  }

  std::string out = "n,s,p_greedy,p_global,p_pgm,gap,bk_slack,closed_form\n";
  for (const Row& row : rows) {
    out += std::to_string(row.n) + ',' + format_double(row.s) + ',' +
           format_double(row.report.p_greedy) + ',' + format_double(row.report.p_global) + ',' +
           format_double(row.report.p_pgm) + ',' + format_double(row.report.gap) + ',' +
           format_double(row.report.bk_slack) + ',' + row.closed_form + '\n';
  }
  return out;
}

std::string run_enumerate(const RunConfig& config) {
  int n = config.n_values.empty() ? 3 : config.n_values.front();
  if (config.n_values.size() > 1) {
    throw std::invalid_argument("enumerate takes a single n");
  }
  if (n > 4) {
    throw std::invalid_argument("enumerate is exhaustive and limited to n <= 4");
  }
  std::vector<double> grid = config.s_values.empty() ? default_residual_grid() : config.s_values;

  std::uint32_t table_bits = 1u << n;
  std::uint64_t total = 1ull << table_bits;
  std::uint64_t affine_count = 0;

  std::string out = "hex,balance,affine,counting";
  for (double sv : grid) out += ",gap_s" + format_double(sv);
  out += '\n';

  std::vector<std::uint8_t> table(table_bits);
  for (std::uint64_t t = 0; t < total; ++t) {
    for (std::uint32_t i = 0; i < table_bits; ++i) table[i] = (t >> i) & 1u;
    BoolFunc f(n, table);

    BalanceClass cls = balanced_or_constant(f);
    AffineCertificate cert = certify_affine(f);
    CountingResult counting = counting_condition(f);
    if (cert.affine) ++affine_count;

    out += f.to_hex();
    out += cls == BalanceClass::Constant ? ",CONSTANT"
           : cls == BalanceClass::Balanced ? ",BALANCED" : ",NEITHER";
    out += cert.affine ? ",AFFINE" : ",NOT_AFFINE";
    out += counting.holds ? ",HOLDS" : ",FAILS";
    for (double sv : grid) {
      Overlap s(sv);
      double gap = global_prob(f, s) - greedy_prob_fast(f, s);
      out += ',' + format_double(gap);
    }
    out += '\n';
  }
  out += "# summary: functions=" + std::to_string(total) +
         " affine=" + std::to_string(affine_count) +
         " expected_affine=" + std::to_string(1ull << (n + 1)) + '\n';
  return out;
}

std::string run_sample(const RunConfig& config) {
  int n = resolve_single_n(config);
  Overlap s(resolve_single_s(config));
  BoolFunc f = from_spec(config.fn, n);
  GreedySample sample = sample_greedy(f, s, config.trials, config.seed);

  json doc;
  doc["schema"] = 1;
  doc["command"] = "sample";
  doc["function"] = function_block(config, f);
  doc["s"] = s.value();
  doc["trials"] = config.trials;
  doc["seed"] = config.seed;
  doc["generator"] = "splitmix64";
  doc["successes"] = sample.successes;
  doc["frequency"] = sample.frequency;
  doc["expected"] = greedy_prob_fast(f, s);
  return doc.dump(2) + "\n";
}

namespace {

// Enumerates every truth table on n bits.
template <typename Fn>
void for_all_functions(int n, Fn&& body) {
  std::uint32_t table_bits = 1u << n;
  std::uint64_t total = 1ull << table_bits;
  std::vector<std::uint8_t> table(table_bits);
  for (std::uint64_t t = 0; t < total; ++t) {
    for (std::uint32_t i = 0; i < table_bits; ++i) table[i] = (t >> i) & 1u;
    body(BoolFunc(n, table));
  }
}

}  // namespace

VerifyReport run_verify(const RunConfig& config) {
  int cap = config.n_values.empty() ? 4 : *std::max_element(config.n_values.begin(),
                                                            config.n_values.end());
  std::vector<double> grid = config.s_values.empty() ? default_residual_grid() : config.s_values;
  VerifyReport report;

  auto add_check = [&](const std::string& name, double worst, double tol) {
    bool pass = worst <= tol;
    report.checks.push_back(VerifyCheck{name, worst, tol, pass});
    if (!pass) report.all_pass = false;
  };

  // Shared population: every function at n <= 3, seeded samples above.
  struct Case {
    BoolFunc f;
    double s;
  };
  std::vector<Case> population;
  for (int n = 1; n <= std::min(cap, 3); ++n) {
    for_all_functions(n, [&](const BoolFunc& f) {
      for (double sv : grid) population.push_back(Case{f, sv});
    });
  }
  SplitMix64 rng{config.seed};
  for (int n = 4; n <= cap; ++n) {
    for (int k = 0; k < 50; ++k) {
      BoolFunc f = random_function(n, rng);
      for (double sv : grid) population.push_back(Case{f, sv});
    }
  }

  double bk_worst = -1.0, pgm_eq_worst = 0.0, pgm_le_worst = -1.0;
  for (const Case& c : population) {
    Overlap s(c.s);
    double greedy = greedy_prob_fast(c.f, s);
    double global = global_prob(c.f, s);
    double pgm = pgm_prob(c.f, s);
    bk_worst = std::max(bk_worst, global * global - greedy);
    pgm_eq_worst = std::max(pgm_eq_worst, std::abs(pgm - greedy));
    pgm_le_worst = std::max(pgm_le_worst, pgm - global);
  }
  add_check("barnum-knill", bk_worst, config.tol);
  add_check("pgm-equals-greedy", pgm_eq_worst, config.tol);
  add_check("pgm-below-global", pgm_le_worst, config.tol);

  {
    double worst = 0.0;
    for (int n = 1; n <= std::min(cap, 4); ++n) {
      for_all_functions(n, [&](const BoolFunc& f) {
        for (double sv : grid) {
          Overlap s(sv);
          worst = std::max(worst, std::abs(greedy_prob(f, s) - greedy_prob_fast(f, s)));
        }
      });
    }
    for (int n = 5; n <= cap; ++n) {
      for (int k = 0; k < 100; ++k) {
        BoolFunc f = random_function(n, rng);
        for (double sv : grid) {
          Overlap s(sv);
          worst = std::max(worst, std::abs(greedy_prob(f, s) - greedy_prob_fast(f, s)));
        }
      }
    }
    add_check("greedy-fast-path", worst, 1e-10);
  }

  {
    double worst = 0.0;
    for_all_functions(3, [&](const BoolFunc& f) {
      if (balanced_or_constant(f) == BalanceClass::Constant) return;
      for (double sv : grid) {
        Overlap s(sv);
        worst = std::max(worst, std::abs(global_prob(f, s) - global_prob_gram(f, s)));
      }
    });
    if (cap >= 4) {
      for (int k = 0; k < 100; ++k) {
        BoolFunc f = random_function(4, rng);
        if (balanced_or_constant(f) == BalanceClass::Constant) continue;
        Overlap s(0.5);
        worst = std::max(worst, std::abs(global_prob(f, s) - global_prob_gram(f, s)));
      }
    }
    add_check("dual-path-helstrom", worst, 1e-8);
  }

  {
    double mismatches = 0.0, count_error = 0.0;
    for (int n = 1; n <= std::min(cap, 4); ++n) {
      std::uint64_t affine_count = 0;
      for_all_functions(n, [&](const BoolFunc& f) {
        bool chain = false;
        try {
          chain = certify_affine(f).affine;
        } catch (const invariant_error&) {
          mismatches += 1.0;
          return;
        }
        if (chain != is_affine(f).has_value()) mismatches += 1.0;
        if (chain) ++affine_count;
      });
      count_error += std::abs(static_cast<double>(affine_count) -
                              static_cast<double>(1ull << (n + 1)));
    }
    add_check("affine-chain-equivalence", mismatches, 0.0);
    add_check("affine-count", count_error, 0.0);
  }

  {
    double worst = 0.0;
    for (int n = 1; n <= std::min(cap, 5); ++n) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        BoolFunc f = BoolFunc::parity(BitVec{n, mask});
        for (double sv : grid) {
          Overlap s(sv);
          worst = std::max(worst, std::abs(global_prob(f, s) - greedy_prob_fast(f, s)));
        }
      }
    }
    add_check("affine-zero-gap", worst, config.tol);
  }

  {
    double violations = 0.0;
    Overlap s(0.5);
    for (int n = 1; n <= std::min(cap, 4); ++n) {
      for_all_functions(n, [&](const BoolFunc& f) {
        if (balanced_or_constant(f) == BalanceClass::Constant) return;
        bool affine = is_affine(f).has_value();
        double residual = gram_relation_residual(f, s);
        if (affine && residual >= 1e-10) violations += 1.0;
        if (!affine && residual <= 1e-6) violations += 1.0;
      });
    }
    add_check("gram-relation-separation", violations, 0.0);
  }

  {
    double violations = 0.0;
    Overlap s(0.5);
    for (int n = 1; n <= std::min(cap, 4); ++n) {
      for_all_functions(n, [&](const BoolFunc& f) {
        bool affine = is_affine(f).has_value();
        double residual = pgm_optimality_residual(f, s);
        if (affine && residual >= 1e-7) violations += 1.0;
        if (!affine && residual <= 1e-7) violations += 1.0;
      });
    }
    add_check("pgm-commutator-separation", violations, 0.0);
  }

  {
    double mismatches = 0.0;
    for_all_functions(3, [&](const BoolFunc& f) {
      CountingResult counting = counting_condition(f);
      if (counting.holds) return;
      const CountingWitness& w = *counting.witness;
      Preimages pre = preimages(f);
      int c0 = 0, c1 = 0;
      for (std::uint32_t u : pre.s0) {
        if (std::popcount(w.x ^ u) + std::popcount(u ^ w.y) == w.path_length) ++c0;
      }
      for (std::uint32_t v : pre.s1) {
        if (std::popcount(w.x ^ v) + std::popcount(v ^ w.y) == w.path_length) ++c1;
      }
      if (c0 != w.count0 || c1 != w.count1 || c0 == c1) mismatches += 1.0;
    });
    add_check("counting-witness-validity", mismatches, 0.0);
  }

  {
    Overlap s(0.5);
    double limit = maj_greedy_limit(s);
    double worst = -1.0;
    double prev = std::abs(maj_greedy_closed_form(1, s) - limit);
    for (int k = 2; k <= 4; ++k) {
      double cur = std::abs(maj_greedy_closed_form(k, s) - limit);
      worst = std::max(worst, cur - prev);
      prev = cur;
    }
    add_check("maj-limit-monotone", worst, 0.0);
  }

  {
    double worst = 0.0;
    Overlap s(0.5);
    for (int n = 2; n <= std::min(cap, 6); ++n) {
      for (int k = 0; k < 50; ++k) {
        BoolFunc f = random_function(n, rng);
        BoolFunc fc = f.complement();
        worst = std::max(worst, std::abs(greedy_prob_fast(f, s) - greedy_prob_fast(fc, s)));
        worst = std::max(worst, std::abs(global_prob(f, s) - global_prob(fc, s)));
        worst = std::max(worst, std::abs(pgm_prob(f, s) - pgm_prob(fc, s)));
      }
    }
    add_check("complement-symmetry", worst, 1e-12);
  }

  return report;
}

std::string format_verify(const VerifyReport& report) {
  std::string out;
  int passed = 0;
  for (const VerifyCheck& check : report.checks) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-28s worst=%-14.6g tol=%-10.3g %s\n", check.name.c_str(),
                  check.worst, check.tol, check.pass ? "PASS" : "FAIL");
    out += line;
    if (check.pass) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(report.checks.size()) + " checks passed\n";
  return out;
}

}  // namespace booldisc
