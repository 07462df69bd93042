#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "booldisc/run.hpp"

using namespace booldisc;
using nlohmann::json;

namespace {

RunConfig make_config(RunConfig::Command command, const std::string& fn, std::vector<int> ns,
                      std::vector<double> ss) {
  RunConfig config;
  config.command = command;
  if (!fn.empty()) {
    config.fn = parse_descriptor(fn);
    config.fn_text = fn;
  }
  config.n_values = std::move(ns);
  config.s_values = std::move(ss);
  return config;
}

int run_cli(const std::string& args) {
  std::string command = std::string(BOOLDISC_CLI_PATH) + " " + args;
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("default grids") {
  auto grid = default_sweep_grid();
  CHECK(grid.size() == 18);
  CHECK(grid.front() == doctest::Approx(0.05));
  CHECK(grid[16] == doctest::Approx(0.85));
  CHECK(grid.back() == doctest::Approx(0.90));
  CHECK(default_residual_grid() == std::vector<double>{0.3, 0.5, 0.7});
}

TEST_CASE("float formatting is fixed at 15 significant digits") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_double(0.82) == "0.82");
}

TEST_CASE("analyze document") {
  json parity = json::parse(
      run_analyze(make_config(RunConfig::Command::Analyze, "parity:11", {2}, {0.6})));
  CHECK(parity["schema"] == 1);
  CHECK(parity["function"]["truth_table"] == "n:2;tt:6");
  CHECK(std::abs(parity["report"]["p_greedy"].get<double>() - 0.82) <= 1e-9);
  CHECK(std::abs(parity["report"]["p_global"].get<double>() - 0.82) <= 1e-9);
  CHECK(parity["certificate"]["verdict"] == "AFFINE");
  CHECK(parity["certificate"]["coefficients"]["m"] == 2);

  json maj =
      json::parse(run_analyze(make_config(RunConfig::Command::Analyze, "maj", {3}, {0.5})));
  CHECK(maj["certificate"]["verdict"] == "NOT_AFFINE");
  CHECK(maj["certificate"]["failure_stage"] == "COUNTING");
  CHECK(maj["report"]["gap"].get<double>() > 1e-6);
  CHECK(maj["residuals"]["gram_relation"].get<double>() > 1e-6);

  json constant =
      json::parse(run_analyze(make_config(RunConfig::Command::Analyze, "const0", {4}, {0.5})));
  CHECK(constant["report"]["p_greedy"] == 1.0);
  CHECK(constant["report"]["p_global"] == 1.0);
  CHECK(constant["report"]["p_pgm"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(constant["residuals"]["gram_relation"].is_null());
}

TEST_CASE("sweep rows and determinism") {
  RunConfig config = make_config(RunConfig::Command::Sweep, "and", {2, 3}, {0.3, 0.5});
  std::string csv = run_sweep(config);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,s,p_greedy,p_global,p_pgm,gap,bk_slack,closed_form");

  int rows = 0;
  std::string row, first_row;
  while (std::getline(lines, row)) {
    if (rows == 0) first_row = row;
    ++rows;
    CHECK(row.find(",,") == std::string::npos);  // closed_form populated for and
  }
  CHECK(rows == 4);
  CHECK(first_row.substr(0, 6) == "2,0.3,");

  CHECK(run_sweep(config) == csv);  // byte-deterministic

  // Majority sweeps keep odd widths only; OR has no closed form column value.
  std::string maj_csv = run_sweep(make_config(RunConfig::Command::Sweep, "maj", {3, 4, 5}, {0.5}));
  CHECK(std::count(maj_csv.begin(), maj_csv.end(), '\n') == 3);  // header + n=3 + n=5

  std::string or_csv = run_sweep(make_config(RunConfig::Command::Sweep, "or", {2}, {0.5}));
  CHECK(or_csv.find(",\n") != std::string::npos);
}

TEST_CASE("sweep respects the strategy ordering") {
  std::string csv = run_sweep(make_config(RunConfig::Command::Sweep, "and", {3}, {}));
  std::istringstream lines(csv);
  std::string row;
  std::getline(lines, row);  // header
  while (std::getline(lines, row)) {
    std::istringstream fields(row);
    std::string field;
    std::vector<double> values;
    int column = 0;
    while (std::getline(fields, field, ',')) {
      if (column >= 2 && column <= 5 && !field.empty()) values.push_back(std::stod(field));
      ++column;
    }
    double p_greedy = values[0], p_global = values[1];
    CHECK(p_global >= p_greedy - 1e-9);
  }
}

TEST_CASE("enumerate classifies every two-bit function") {
  RunConfig config = make_config(RunConfig::Command::Enumerate, "", {2}, {});
  std::string csv = run_enumerate(config);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "hex,balance,affine,counting,gap_s0.3,gap_s0.5,gap_s0.7");

  int rows = 0, affine = 0;
  std::string row, footer;
  while (std::getline(lines, row)) {
    if (row.rfind("#", 0) == 0) {
      footer = row;
      continue;
    }
    ++rows;
    if (row.find(",AFFINE,") != std::string::npos) ++affine;
  }
  CHECK(rows == 16);
  CHECK(affine == 8);
  CHECK(footer == "# summary: functions=16 affine=8 expected_affine=8");

  CHECK_THROWS_AS(run_enumerate(make_config(RunConfig::Command::Enumerate, "", {5}, {})),
                  std::invalid_argument);
}

TEST_CASE("sample document is reproducible") {
  RunConfig config = make_config(RunConfig::Command::Sample, "parity:11", {2}, {0.6});
  config.trials = 20000;
  config.seed = 99;
  json a = json::parse(run_sample(config));
  json b = json::parse(run_sample(config));
  CHECK(a["successes"] == b["successes"]);
  CHECK(a["generator"] == "splitmix64");
  CHECK(std::abs(a["frequency"].get<double>() - 0.82) < 0.02);
}

TEST_CASE("verify suite passes at a small cap") {
  RunConfig config = make_config(RunConfig::Command::Verify, "", {3}, {});
  VerifyReport report = run_verify(config);
  CHECK(report.all_pass);
  CHECK(report.checks.size() >= 10);
  std::string text = format_verify(report);
  CHECK(text.find("barnum-knill") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("cli binary exit codes and outputs") {
  std::string dir = "/tmp/booldisc_test";
  std::system(("mkdir -p " + dir).c_str());

  std::string out = dir + "/analyze.json";
  CHECK(run_cli("analyze --fn parity:11 --n 2 --s 0.6 --out " + out + " > /dev/null 2>&1") == 0);
  json doc = json::parse(slurp(out));
  CHECK(doc["certificate"]["verdict"] == "AFFINE");

  CHECK(run_cli("analyze --fn bogus --n 2 --s 0.5 > /dev/null 2>&1") == 2);
  CHECK(run_cli("analyze --fn maj --n 4 --s 0.5 > /dev/null 2>&1") == 2);
  CHECK(run_cli("analyze --fn and --n 2 --s 1.5 > /dev/null 2>&1") == 2);
  // A tolerance below machine precision trips the invariant gate.
  CHECK(run_cli("analyze --fn and --n 5 --s 0.7 --tol 1e-30 > /dev/null 2>&1") == 3);
  CHECK(run_cli("enumerate --n 6 > /dev/null 2>&1") == 2);
  CHECK(run_cli("nonsense > /dev/null 2>&1") == 2);
  CHECK(run_cli("--help > /dev/null 2>&1") == 0);

  std::string sample_out = dir + "/sample.json";
  CHECK(run_cli("sample --fn and --n 3 --s 0.5 --trials 1000 --seed 5 --out " + sample_out +
                " > /dev/null 2>&1") == 0);
  json sample = json::parse(slurp(sample_out));
  CHECK(sample["trials"] == 1000);

  std::string sweep_out = dir + "/sweep.csv";
  CHECK(run_cli("sweep --fn and --n 2..3 --s 0.3:0.7:3 --out " + sweep_out +
                " > /dev/null 2>&1") == 0);
  std::string csv = slurp(sweep_out);
  CHECK(csv.rfind("n,s,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
