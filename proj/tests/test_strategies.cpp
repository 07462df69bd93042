#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "booldisc/errors.hpp"
#include "booldisc/strategies.hpp"

using namespace booldisc;

namespace {

BoolFunc random_function(int n, std::mt19937& rng) {
  std::vector<std::uint8_t> table(1u << n);
  for (auto& bit : table) bit = static_cast<std::uint8_t>(rng() & 1u);
  return BoolFunc(n, std::move(table));
}

template <typename Fn>
void for_all_functions(int n, Fn&& body) {
  std::vector<std::uint8_t> table(1u << n);
  for (std::uint64_t t = 0; t < (1ull << (1u << n)); ++t) {
    for (std::uint32_t i = 0; i < table.size(); ++i) table[i] = (t >> i) & 1u;
    body(BoolFunc(n, table));
  }
}

// Paper-side binomial tail, both weight regimes, used to probe the
// symmetry of the majority conditional success probabilities.
double maj_conditional(int k, int j, double p) {
  int n = 2 * k + 1;
  auto choose = [](int a, int b) {
    double r = 1.0;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  double q = 1.0 - p;
  double total = 0.0;
  for (int a = 0; a <= j; ++a) {
    double term1 = choose(j, a) * std::pow(p, a) * std::pow(q, j - a);
    for (int b = 0; b <= n - j; ++b) {
      bool keep = j <= k ? (a + b <= k) : (a + b > k);
      if (keep) total += term1 * choose(n - j, b) * std::pow(q, b) * std::pow(p, n - j - b);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("single qubit success") {
  CHECK(single_qubit_success(Overlap(0.6)).p == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(single_qubit_success(Overlap(0.999999)).p == doctest::Approx(0.5).epsilon(1e-2));

  // p = 1/2 + trace_norm(projector difference)/4, via the eigensolver.
  for (double sv : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    Overlap s(sv);
    EncodingStates enc = encoding_states(s);
    SymMatrix diff(2);
    diff.set(0, 0, enc.state0[0] * enc.state0[0] - enc.state1[0] * enc.state1[0]);
    diff.set(1, 0, enc.state0[0] * enc.state0[1] - enc.state1[0] * enc.state1[1]);
    diff.set(1, 1, enc.state0[1] * enc.state0[1] - enc.state1[1] * enc.state1[1]);
    CHECK(single_qubit_success(s).p ==
          doctest::Approx(0.5 + 0.25 * trace_norm(diff)).epsilon(1e-12));
  }

  auto stats = single_qubit_success(Overlap(0.3));
  CHECK(stats.basis0[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(stats.basis1[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("greedy reference values") {
  CHECK(greedy_prob(BoolFunc::constant(3, 0), Overlap(0.5)) == doctest::Approx(1.0));
  CHECK(greedy_prob(BoolFunc::parity(BitVec{2, 0b11}), Overlap(0.6)) ==
        doctest::Approx(0.82).epsilon(1e-12));
  CHECK(greedy_prob(BoolFunc::and_function(2), Overlap(0.6)) ==
        doctest::Approx(0.905).epsilon(1e-12));
}

TEST_CASE("walsh fast path agrees with the reference sum") {
  Overlap s(0.5);
  for_all_functions(3, [&](const BoolFunc& f) {
    CHECK(std::abs(greedy_prob(f, s) - greedy_prob_fast(f, s)) <= 1e-10);
  });

  // Parity on m coordinates: 1/2 + (2p-1)^m / 2.
  double p = single_qubit_success(s).p;
  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    BoolFunc f = BoolFunc::parity(BitVec{5, mask});
    int m = 0;
    for (std::uint32_t v = mask; v; v >>= 1) m += v & 1;
    double expected = 0.5 + 0.5 * std::pow(2 * p - 1, m);
    CHECK(greedy_prob_fast(f, s) == doctest::Approx(expected).epsilon(1e-12));
  }

  CHECK(greedy_prob_fast(BoolFunc::constant(4, 1), s) == doctest::Approx(1.0));
}

TEST_CASE("global probability") {
  CHECK(global_prob(BoolFunc::constant(4, 1), Overlap(0.5)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(global_prob(BoolFunc::parity(BitVec{2, 0b11}), Overlap(0.6)) ==
        doctest::Approx(0.82).epsilon(1e-9));
  CHECK(global_prob(BoolFunc::and_function(3), Overlap(0.5)) >
        greedy_prob(BoolFunc::and_function(3), Overlap(0.5)));
}

TEST_CASE("gram route to the global probability") {
  for (double sv : {0.3, 0.5, 0.7}) {
    Overlap s(sv);
    for_all_functions(3, [&](const BoolFunc& f) {
      Preimages pre = preimages(f);
      if (pre.s0.empty() || pre.s1.empty()) return;
      CHECK(std::abs(global_prob(f, s) - global_prob_gram(f, s)) <= 1e-8);
    });
  }

  Overlap s(0.4);
  BoolFunc identity1(1, {0, 1});
  CHECK(global_prob_gram(identity1, s) ==
        doctest::Approx(0.5 + 0.5 * std::sqrt(1 - 0.16)).epsilon(1e-12));

  CHECK_THROWS_AS(global_prob_gram(BoolFunc::constant(2, 0), s), std::invalid_argument);
}

TEST_CASE("square-root measurement value") {
  CHECK(pgm_prob(BoolFunc::constant(3, 0), Overlap(0.5)) == doctest::Approx(1.0).epsilon(1e-12));

  for (double sv : {0.2, 0.5, 0.8}) {
    Overlap s(sv);
    for (int n = 1; n <= 3; ++n) {
      for_all_functions(n, [&](const BoolFunc& f) {
        CHECK(std::abs(pgm_prob(f, s) - greedy_prob(f, s)) <= 1e-9);
      });
    }
  }
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    BoolFunc f = random_function(4, rng);
    for (double sv : {0.2, 0.5, 0.8}) {
      Overlap s(sv);
      CHECK(std::abs(pgm_prob(f, s) - greedy_prob(f, s)) <= 1e-9);
    }
  }

  Overlap s(0.5);
  CHECK(pgm_prob(BoolFunc::majority(3), s) < global_prob(BoolFunc::majority(3), s));
}

TEST_CASE("affine closed form") {
  CHECK(affine_closed_form(0, Overlap(0.3)) == 1.0);
  CHECK(affine_closed_form(2, Overlap(0.6)) == doctest::Approx(0.82).epsilon(1e-15));
  for (int n = 1; n <= 4; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      BoolFunc f = BoolFunc::parity(BitVec{n, mask});
      int m = 0;
      for (std::uint32_t v = mask; v; v >>= 1) m += v & 1;
      for (double sv : {0.3, 0.5, 0.7}) {
        Overlap s(sv);
        CHECK(global_prob(f, s) == doctest::Approx(affine_closed_form(m, s)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("and closed form") {
  for (double sv : {0.3, 0.6}) {
    Overlap s(sv);
    CHECK(and_greedy_closed_form(1, s) == doctest::Approx(single_qubit_success(s).p));
  }
  CHECK(and_greedy_closed_form(2, Overlap(0.6)) == doctest::Approx(0.905).epsilon(1e-15));
  for (int n = 1; n <= 6; ++n) {
    for (double sv : {0.3, 0.5, 0.7}) {
      Overlap s(sv);
      CHECK(std::abs(and_greedy_closed_form(n, s) - greedy_prob(BoolFunc::and_function(n), s)) <=
            1e-12);
    }
  }
}

TEST_CASE("majority closed form") {
  for (double sv : {0.3, 0.5, 0.7}) {
    Overlap s(sv);
    CHECK(std::abs(maj_greedy_closed_form(1, s) - greedy_prob(BoolFunc::majority(3), s)) <= 1e-12);
  }
  CHECK(std::abs(maj_greedy_closed_form(2, Overlap(0.5)) -
                 greedy_prob(BoolFunc::majority(5), Overlap(0.5))) <= 1e-12);

  // Conditional success probabilities are symmetric under weight reflection.
  double p = single_qubit_success(Overlap(0.5)).p;
  for (int k = 1; k <= 4; ++k) {
    for (int j = 0; j <= 2 * k + 1; ++j) {
      CHECK(maj_conditional(k, j, p) ==
            doctest::Approx(maj_conditional(k, 2 * k + 1 - j, p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("majority limit") {
  CHECK(maj_greedy_limit(Overlap(std::sqrt(3.0) / 2.0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(maj_greedy_limit(Overlap(0.999999)) == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(maj_greedy_limit(Overlap(0.000001)) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(maj_greedy_limit(Overlap(0.3)) > maj_greedy_limit(Overlap(0.6)));
}

TEST_CASE("greedy sampling") {
  GreedySample const_sample = sample_greedy(BoolFunc::constant(3, 0), Overlap(0.5), 1000, 42);
  CHECK(const_sample.successes == 1000);
  CHECK(const_sample.frequency == 1.0);

  BoolFunc par = BoolFunc::parity(BitVec{2, 0b11});
  GreedySample a = sample_greedy(par, Overlap(0.6), 1000000, 7);
  GreedySample b = sample_greedy(par, Overlap(0.6), 1000000, 7);
  CHECK(a.successes == b.successes);  // counter-based stream is reproducible

  double expected = 0.82;
  double sigma = std::sqrt(expected * (1 - expected) / 1e6);
  CHECK(std::abs(a.frequency - expected) <= 3 * sigma);

  CHECK_THROWS_AS(sample_greedy(par, Overlap(0.6), 0, 1), std::invalid_argument);
}

TEST_CASE("strategy report") {
  StrategyReport par = analyze(BoolFunc::parity(BitVec{3, 0b111}), Overlap(0.5));
  CHECK(std::abs(par.gap) <= 1e-9);

  StrategyReport maj = analyze(BoolFunc::majority(3), Overlap(0.5));
  CHECK(maj.gap > 1e-6);
  CHECK(maj.bk_slack >= -1e-9);

  std::mt19937 rng(303);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    StrategyReport report = analyze(random_function(n, rng), Overlap(0.4));
    CHECK(report.bk_slack >= -1e-9);
    CHECK(report.p_greedy >= 0.5 - 1e-12);
  }
}

TEST_CASE("complement symmetry") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    BoolFunc f = random_function(n, rng);
    BoolFunc fc = f.complement();
    Overlap s(0.55);
    CHECK(std::abs(greedy_prob_fast(f, s) - greedy_prob_fast(fc, s)) <= 1e-12);
    CHECK(std::abs(global_prob(f, s) - global_prob(fc, s)) <= 1e-12);
    CHECK(std::abs(pgm_prob(f, s) - pgm_prob(fc, s)) <= 1e-12);
  }
}
