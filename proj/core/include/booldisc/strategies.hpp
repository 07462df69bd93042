#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "booldisc/boolfunc.hpp"
#include "booldisc/ensemble.hpp"

namespace booldisc {

/// Optimal single-qubit discrimination of the encoding pair at equal priors.
/// Under the symmetric parametrization the measurement basis is (1,1)/sqrt2,
/// (1,-1)/sqrt2 and each bit is read correctly with probability p.
struct SingleQubitStats {
  double p = 0.0;  // (1 + sqrt(1 - s^2)) / 2
  std::array<double, 2> basis0;
  std::array<double, 2> basis1;
};

SingleQubitStats single_qubit_success(Overlap s);

/// Reference greedy success probability: the exact double sum
/// (1/2^n) sum_x sum_{y : f(y)=f(x)} p^(n-d(x,y)) (1-p)^d(x,y). O(4^n).
double greedy_prob(const BoolFunc& f, Overlap s);

/// Walsh fast path: (1 + sum_S (2p-1)^|S| h_hat(S)^2) / 2. O(n 2^n).
double greedy_prob_fast(const BoolFunc& f, Overlap s);

/// Optimal global success probability 1/2 + ||p0 sigma0 - p1 sigma1||_1 / 2.
double global_prob(const BoolFunc& f, Overlap s);

/// Cross-check route through the full Gram matrix: the nonzero spectrum of
/// the weighted state difference equals that of sqrt(Gram) D sqrt(Gram) with
/// D = diag((-1)^f). Requires a non-constant f.
double global_prob_gram(const BoolFunc& f, Overlap s);

/// Success probability of the square-root measurement built from the
/// ensemble average state. Verifies that the two measurement operators sum
/// to the projector onto the average state's support.
double pgm_prob(const BoolFunc& f, Overlap s);

/// 1/2 + (1-s^2)^(m/2) / 2: shared greedy/global value for a function that
/// is an XOR of m coordinates (plus an irrelevant constant); 1 when m = 0.
double affine_closed_form(int m, Overlap s);

/// 1 - (1 - p^n) / 2^(n-1).
double and_greedy_closed_form(int n, Overlap s);

/// Exact greedy value for the majority on n = 2k+1 bits via conditional
/// success probabilities of the two independent per-weight binomials.
double maj_greedy_closed_form(int k, Overlap s);

/// Large-n limit of the majority greedy value: 1/2 + arcsin(sqrt(1-s^2))/pi.
double maj_greedy_limit(Overlap s);

struct GreedySample {
  std::uint64_t successes = 0;
  double frequency = 0.0;
};

/// Simulates the greedy strategy: draw x uniformly, flip each bit with
/// probability 1-p, count f(y) = f(x). Driven by a splitmix64 counter
/// stream, so a fixed seed reproduces the exact counts on any platform.
GreedySample sample_greedy(const BoolFunc& f, Overlap s, std::uint64_t trials, std::uint64_t seed);

struct StrategyReport {
  double p_greedy = 0.0;
  double p_global = 0.0;
  double p_pgm = 0.0;
  double gap = 0.0;       // p_global - p_greedy
  double bk_slack = 0.0;  // p_greedy - p_global^2
  std::string greedy_method;
  std::string global_method;
  std::string pgm_method;
};

/// Computes all three probabilities and enforces the report invariants
/// (probability range, pgm <= global, global^2 <= pgm, pgm = greedy) within
/// tol; violations throw invariant_error rather than being clipped.
StrategyReport analyze(const BoolFunc& f, Overlap s, double tol = 1e-9);

}  // namespace booldisc
