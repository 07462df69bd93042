#include "booldisc/strategies.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "booldisc/errors.hpp"

namespace booldisc {

namespace {

std::vector<double> int_powers(double base, int max_exp) {
  std::vector<double> pw(max_exp + 1);
  pw[0] = 1.0;
  for (int k = 1; k <= max_exp; ++k) pw[k] = pw[k - 1] * base;
  return pw;
}

double trace_product(const Matrix& a, const SymMatrix& b) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) sum += a(i, j) * b(j, i);
  }
  return sum;
}

// Counter-based generator (splitmix64). The trial stream is fixed: one word
// for the input string, then one unit double per bit position in order.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

SingleQubitStats single_qubit_success(Overlap s) {
  SingleQubitStats stats;
  stats.p = 0.5 * (1.0 + std::sqrt(1.0 - s.value() * s.value()));
  double r = 1.0 / std::sqrt(2.0);
  stats.basis0 = {r, r};
  stats.basis1 = {r, -r};
  return stats;
}

double greedy_prob(const BoolFunc& f, Overlap s) {
  int n = f.n();
  double p = single_qubit_success(s).p;
  std::vector<double> match = int_powers(p, n);
  std::vector<double> flip = int_powers(1.0 - p, n);
  std::uint32_t size = f.size();
  double total = 0.0;
  for (std::uint32_t x = 0; x < size; ++x) {
    int fx = f(x);
    for (std::uint32_t y = 0; y < size; ++y) {
      if (f(y) != fx) continue;
      int d = std::popcount(x ^ y);
      total += match[n - d] * flip[d];
    }
  }
  return total / static_cast<double>(size);
}

double greedy_prob_fast(const BoolFunc& f, Overlap s) {
  std::vector<double> spectrum = walsh_spectrum(f);
  double rho = 2.0 * single_qubit_success(s).p - 1.0;
  std::vector<double> rho_pow = int_powers(rho, f.n());
  double stability = 0.0;
  for (std::uint32_t set = 0; set < spectrum.size(); ++set) {
    stability += rho_pow[std::popcount(set)] * spectrum[set] * spectrum[set];
  }
  return 0.5 * (1.0 + stability);
}

double global_prob(const BoolFunc& f, Overlap s) {
  int n = f.n();
  int dim = 1 << n;
  double weight = 1.0 / static_cast<double>(dim);
  SymMatrix diff(dim);
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    std::vector<double> psi = product_state(x, n, s);
    double w = f(x) ? -weight : weight;
    for (int a = 0; a < dim; ++a) {
      double wa = w * psi[a];
      for (int b = 0; b <= a; ++b) diff.add(a, b, wa * psi[b]);
    }
  }
  return 0.5 + 0.5 * trace_norm(diff);
}

double global_prob_gram(const BoolFunc& f, Overlap s) {
  Preimages pre = preimages(f);
  if (pre.s0.empty() || pre.s1.empty()) {
    throw std::invalid_argument("global_prob_gram requires a non-constant function");
  }
  int dim = 1 << f.n();
  Matrix root = to_dense(psd_sqrt(full_gram(f.n(), s)));
  // sqrt(Gram) D sqrt(Gram) with the sign diagonal folded into a column scale.
  Matrix scaled = root;
  for (int i = 0; i < dim; ++i) {
    if (!f(static_cast<std::uint32_t>(i))) continue;
    for (int k = 0; k < dim; ++k) scaled(k, i) = -scaled(k, i);
  }
  SymMatrix product = sym_lower(matmul(scaled, root));
  return 0.5 + 0.5 * trace_norm(product) / static_cast<double>(dim);
}

double pgm_prob(const BoolFunc& f, Overlap s) {
  BooleanEnsemble e = build_ensemble(f, s);
  SymMatrix rho_avg = average_state(s, e.n);
  Matrix inv_root = to_dense(pinv_sqrt(rho_avg));

  Matrix sigma0 = to_dense(e.sigma0);
  Matrix sigma1 = to_dense(e.sigma1);
  Matrix a0 = matmul(matmul(inv_root, sigma0), inv_root);
  Matrix a1 = matmul(matmul(inv_root, sigma1), inv_root);

  // M0 + M1 must reproduce the projector onto the support of the average
  // state; both sides are assembled through independent constructions.
  Matrix projector = matmul(matmul(inv_root, to_dense(rho_avg)), inv_root);
  double completeness = 0.0;
  for (int i = 0; i < projector.rows(); ++i) {
    for (int j = 0; j < projector.cols(); ++j) {
      double v = e.p0 * a0(i, j) + e.p1 * a1(i, j) - projector(i, j);
      completeness += v * v;
    }
  }
  completeness = std::sqrt(completeness);
  if (completeness > 1e-8) {
    throw accuracy_error("pgm_prob: measurement operators fail support completeness, residual " +
                         std::to_string(completeness));
  }

  return e.p0 * e.p0 * trace_product(a0, e.sigma0) + e.p1 * e.p1 * trace_product(a1, e.sigma1);
}

double affine_closed_form(int m, Overlap s) {
  if (m < 0) throw std::invalid_argument("affine_closed_form: m must be nonnegative");
  double rho = std::sqrt(1.0 - s.value() * s.value());
  double power = 1.0;
  for (int k = 0; k < m; ++k) power *= rho;
  return 0.5 + 0.5 * power;
}

double and_greedy_closed_form(int n, Overlap s) {
  if (n < 1) throw std::invalid_argument("and_greedy_closed_form: n must be positive");
  double p = single_qubit_success(s).p;
  double pn = 1.0;
  for (int k = 0; k < n; ++k) pn *= p;
  return 1.0 - (1.0 - pn) / std::ldexp(1.0, n - 1);
}

double maj_greedy_closed_form(int k, Overlap s) {
  if (k < 1) throw std::invalid_argument("maj_greedy_closed_form: k must be positive");
  int n = 2 * k + 1;
  double p = single_qubit_success(s).p;
  double q = 1.0 - p;

  // Pascal triangle up to row n; all values are exact in double here.
  std::vector<std::vector<double>> choose(n + 1);
  for (int row = 0; row <= n; ++row) {
    choose[row].assign(row + 1, 1.0);
    for (int col = 1; col < row; ++col) {
      choose[row][col] = choose[row - 1][col - 1] + choose[row - 1][col];
    }
  }
  std::vector<double> pp = int_powers(p, n);
  std::vector<double> qp = int_powers(q, n);

  // gamma_j = P(Y1 + Y2 <= k), Y1 ~ Binom(j, p) counting kept ones and
  // Y2 ~ Binom(n-j, 1-p) counting flipped zeros; j <= k suffices since
  // gamma_j = gamma_{n-j}.
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    double gamma = 0.0;
    for (int a = 0; a <= j; ++a) {
      double term1 = choose[j][a] * pp[a] * qp[j - a];
      int zeros = n - j;
      for (int b = 0; b <= std::min(zeros, k - a); ++b) {
        gamma += term1 * choose[zeros][b] * qp[b] * pp[zeros - b];
      }
    }
    total += choose[n][j] * gamma;
  }
  return total / std::ldexp(1.0, 2 * k);
}

double maj_greedy_limit(Overlap s) {
  return 0.5 + std::asin(std::sqrt(1.0 - s.value() * s.value())) / std::numbers::pi;
}

GreedySample sample_greedy(const BoolFunc& f, Overlap s, std::uint64_t trials,
                           std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sample_greedy: trials must be positive");
  int n = f.n();
  double flip_rate = 1.0 - single_qubit_success(s).p;
  std::uint32_t mask = f.size() - 1;
  SplitMix64 rng{seed};
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint32_t x = static_cast<std::uint32_t>(rng.next()) & mask;
    std::uint32_t y = x;
    for (int i = 1; i <= n; ++i) {
      if (rng.next_unit() < flip_rate) y = flip_bit(y, i, n);
    }
    if (f(y) == f(x)) ++successes;
  }
  return GreedySample{successes,
                      static_cast<double>(successes) / static_cast<double>(trials)};
}

StrategyReport analyze(const BoolFunc& f, Overlap s, double tol) {
  StrategyReport report;
  // Reference double sum up to n = 6, Walsh transform above.
  if (f.n() <= 6) {
    report.p_greedy = greedy_prob(f, s);
    report.greedy_method = "reference-sum";
  } else {
    report.p_greedy = greedy_prob_fast(f, s);
    report.greedy_method = "walsh-noise-stability";
  }
  report.p_global = global_prob(f, s);
  report.p_pgm = pgm_prob(f, s);
  report.gap = report.p_global - report.p_greedy;
  report.bk_slack = report.p_greedy - report.p_global * report.p_global;
  report.global_method = "helstrom-trace-norm";
  report.pgm_method = "square-root-measurement";

  auto in_range = [](double v) { return v >= -1e-12 && v <= 1.0 + 1e-12; };
  if (!in_range(report.p_greedy) || !in_range(report.p_global) || !in_range(report.p_pgm)) {
    throw invariant_error("analyze: probability outside [0,1]");
  }
  if (report.p_pgm > report.p_global + tol) {
    throw invariant_error("analyze: pgm exceeds the global optimum by " +
                          std::to_string(report.p_pgm - report.p_global));
  }
  if (report.p_global * report.p_global > report.p_pgm + tol) {
    throw invariant_error("analyze: squared global bound fails by " +
                          std::to_string(report.p_global * report.p_global - report.p_pgm));
  }
  if (std::abs(report.p_pgm - report.p_greedy) > tol) {
    throw invariant_error("analyze: pgm and greedy disagree by " +
                          std::to_string(report.p_pgm - report.p_greedy));
  }
  return report;
}

}  // namespace booldisc
