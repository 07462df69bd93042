#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "booldisc/errors.hpp"
#include "booldisc/run.hpp"

namespace {

using booldisc::RunConfig;

std::vector<int> parse_n_values(const std::string& text) {
  std::vector<int> values;
  auto parse_int = [](const std::string& part) {
    std::size_t used = 0;
    int v = std::stoi(part, &used);
    if (used != part.size()) throw std::invalid_argument("malformed n value: " + part);
    return v;
  };
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    values.push_back(parse_int(text));
  } else {
    int lo = parse_int(text.substr(0, dots));
    int hi = parse_int(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("n range must be ascending");
    for (int n = lo; n <= hi; ++n) values.push_back(n);
  }
  for (int n : values) {
    if (n < 1 || n > booldisc::kMaxInputBits) {
      throw std::invalid_argument("n must be in [1, " + std::to_string(booldisc::kMaxInputBits) +
                                  "]");
    }
  }
  return values;
}

std::vector<double> parse_s_values(const std::string& text) {
  auto parse_real = [](const std::string& part) {
    std::size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("malformed s value: " + part);
    return v;
  };
  std::vector<double> values;
  std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) {
    values.push_back(parse_real(text));
  } else {
    std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("s grid is start:stop:steps");
    double start = parse_real(text.substr(0, c1));
    double stop = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
    long steps = std::stol(text.substr(c2 + 1));
    if (steps < 1) throw std::invalid_argument("s grid needs at least one step");
    if (steps == 1) {
      values.push_back(start);
    } else {
      for (long k = 0; k < steps; ++k) {
        values.push_back(start + (stop - start) * static_cast<double>(k) /
                                     static_cast<double>(steps - 1));
      }
    }
  }
  for (double s : values) {
    if (!(s > 0.0) || !(s < 1.0)) {
      throw std::invalid_argument("every s must lie strictly inside (0,1)");
    }
  }
  return values;
}

void emit(const RunConfig& config, const std::string& body) {
  if (config.out_path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + config.out_path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

struct RawOptions {
  std::string fn;
  std::string n;
  std::string s;
  std::string format;
  RunConfig config;
};

void attach_common(CLI::App* cmd, RawOptions& raw, bool with_fn) {
  if (with_fn) {
    cmd->add_option("--fn", raw.fn,
                    "function descriptor: const0|const1|and|or|maj|parity:<bitmask>|raw:<n>:<hex>")
        ->required();
  }
  cmd->add_option("--n", raw.n, "input width, single value or range a..b");
  cmd->add_option("--s", raw.s, "overlap, single value or grid start:stop:steps");
  cmd->add_option("--out", raw.config.out_path, "output path (default stdout)");
  cmd->add_option("--tol", raw.config.tol, "tolerance for theorem-identity checks");
}

RunConfig finish_config(RawOptions& raw, RunConfig::Command command) {
  RunConfig config = raw.config;
  config.command = command;
  if (!raw.fn.empty()) {
    config.fn = booldisc::parse_descriptor(raw.fn);
    config.fn_text = raw.fn;
  }
  if (!raw.n.empty()) config.n_values = parse_n_values(raw.n);
  if (!raw.s.empty()) config.s_values = parse_s_values(raw.s);
  if (!raw.format.empty()) {
    config.format = raw.format == "json" ? RunConfig::Format::Json : RunConfig::Format::Csv;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy vs. global discrimination probabilities for Boolean-function ensembles"};
  app.require_subcommand(1);

  RawOptions analyze_raw, sweep_raw, enumerate_raw, verify_raw, sample_raw;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "strategy report, affine certificate and residuals for one (f, s)");
  attach_common(analyze, analyze_raw, true);

  CLI::App* sweep =
      app.add_subcommand("sweep", "probability table over an (n, s) grid for one function family");
  attach_common(sweep, sweep_raw, true);
  sweep->add_option("--format", sweep_raw.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "classify every function at small n (exhaustive)");
  attach_common(enumerate, enumerate_raw, false);

  CLI::App* verify =
      app.add_subcommand("verify", "run the strategy and certification invariant suites");
  attach_common(verify, verify_raw, false);
  verify->add_option("--seed", verify_raw.config.seed, "seed for the sampled populations");

  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo simulation of the greedy strategy");
  attach_common(sample, sample_raw, true);
  sample->add_option("--trials", sample_raw.config.trials, "number of simulated trials");
  sample->add_option("--seed", sample_raw.config.seed, "counter-based generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) {
      RunConfig config = finish_config(analyze_raw, RunConfig::Command::Analyze);
      emit(config, booldisc::run_analyze(config));
    } else if (sweep->parsed()) {
      RunConfig config = finish_config(sweep_raw, RunConfig::Command::Sweep);
      emit(config, booldisc::run_sweep(config));
    } else if (enumerate->parsed()) {
      RunConfig config = finish_config(enumerate_raw, RunConfig::Command::Enumerate);
      emit(config, booldisc::run_enumerate(config));
    } else if (verify->parsed()) {
      RunConfig config = finish_config(verify_raw, RunConfig::Command::Verify);
      booldisc::VerifyReport report = booldisc::run_verify(config);
      emit(config, booldisc::format_verify(report));
      if (!report.all_pass) return 3;
    } else if (sample->parsed()) {
      RunConfig config = finish_config(sample_raw, RunConfig::Command::Sample);
      emit(config, booldisc::run_sample(config));
    }
  } catch (const booldisc::invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const booldisc::accuracy_error& e) {
    std::cerr << "numerical accuracy failure: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
