#include "booldisc/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "booldisc/errors.hpp"

namespace booldisc {

namespace {

double pow_by_squaring(double base, int e) {
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

Overlap::Overlap(double s) : s_(s) {
  if (!(s > 0.0) || !(s < 1.0)) {
    throw std::invalid_argument("overlap s must lie strictly inside (0,1), got " +
                                std::to_string(s));
  }
}

EncodingStates encoding_states(Overlap s) {
  double c = std::sqrt((1.0 + s.value()) / 2.0);
  double d = std::sqrt((1.0 - s.value()) / 2.0);
  return EncodingStates{{c, d}, {c, -d}};
}

std::vector<double> product_state(std::uint32_t x, int n, Overlap s) {
  if (n < 1 || n > kMaxInputBits) throw std::invalid_argument("product_state: n out of range");
  EncodingStates enc = encoding_states(s);
  std::vector<double> acc{1.0};
  for (int i = 1; i <= n; ++i) {
    const auto& qubit = bit_at(x, i, n) ? enc.state1 : enc.state0;
    std::vector<double> next(acc.size() * 2);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[2 * k] = acc[k] * qubit[0];
      next[2 * k + 1] = acc[k] * qubit[1];
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<double> overlap_powers(Overlap s, int max_exp) {
  std::vector<double> powers(max_exp + 1);
  for (int k = 0; k <= max_exp; ++k) powers[k] = pow_by_squaring(s.value(), k);
  return powers;
}

namespace {

SymMatrix mixed_state(const std::vector<std::uint32_t>& strings, int n, Overlap s) {
  int dim = 1 << n;
  SymMatrix sigma(dim);
  if (strings.empty()) return sigma;
  double weight = 1.0 / static_cast<double>(strings.size());
  for (std::uint32_t x : strings) {
    std::vector<double> psi = product_state(x, n, s);
    for (int a = 0; a < dim; ++a) {
      double wa = weight * psi[a];
      for (int b = 0; b <= a; ++b) sigma.add(a, b, wa * psi[b]);
    }
  }
  return sigma;
}

SymMatrix gram_block(const std::vector<std::uint32_t>& strings, const std::vector<double>& pw) {
  int m = static_cast<int>(strings.size());
  SymMatrix gram(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) gram.set(i, j, pw[hamming_idx(strings[i], strings[j])]);
  }
  return gram;
}

}  // namespace

BooleanEnsemble build_ensemble(const BoolFunc& f, Overlap s) {
  BooleanEnsemble e;
  e.n = f.n();
  e.pre = preimages(f);
  double total = static_cast<double>(f.size());
  e.p0 = static_cast<double>(e.pre.s0.size()) / total;
  e.p1 = static_cast<double>(e.pre.s1.size()) / total;
  e.sigma0 = mixed_state(e.pre.s0, e.n, s);
  e.sigma1 = mixed_state(e.pre.s1, e.n, s);

  std::vector<double> pw = overlap_powers(s, 2 * e.n);
  e.gram0 = gram_block(e.pre.s0, pw);
  e.gram1 = gram_block(e.pre.s1, pw);
  e.gram_cross = Matrix(static_cast<int>(e.pre.s0.size()), static_cast<int>(e.pre.s1.size()));
  for (int i = 0; i < e.gram_cross.rows(); ++i) {
    for (int j = 0; j < e.gram_cross.cols(); ++j) {
      e.gram_cross(i, j) = pw[hamming_idx(e.pre.s0[i], e.pre.s1[j])];
    }
  }
  return e;
}

SymMatrix average_state(Overlap s, int n) {
  if (n < 1 || n > kMaxInputBits) throw std::invalid_argument("average_state: n out of range");
  std::array<double, 2> lambdas{(1.0 + s.value()) / 2.0, (1.0 - s.value()) / 2.0};
  SymMatrix rho = SymMatrix::diagonal(lambdas);
  SymMatrix acc = rho;
  for (int i = 1; i < n; ++i) acc = kron(acc, rho);
  return acc;
}

SymMatrix full_gram(int n, Overlap s) {
  if (n < 1 || n > kMaxInputBits) throw std::invalid_argument("full_gram: n out of range");
  std::vector<double> pw = overlap_powers(s, n);
  int dim = 1 << n;
  SymMatrix gram(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram.set(i, j, pw[hamming_idx(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j))]);
    }
  }
  return gram;
}

GeneralizedGram generalized_gram(const BoolFunc& f, Overlap s) {
  Preimages pre = preimages(f);
  std::vector<std::uint32_t> order = pre.s0;
  order.insert(order.end(), pre.s1.begin(), pre.s1.end());

  GeneralizedGram g;
  g.block0 = static_cast<int>(pre.s0.size());
  g.block1 = static_cast<int>(pre.s1.size());
  int dim = static_cast<int>(order.size());
  std::vector<double> pw = overlap_powers(s, f.n());
  double scale = 1.0 / static_cast<double>(dim);
  g.gram = SymMatrix(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      g.gram.set(i, j, scale * pw[hamming_idx(order[i], order[j])]);
    }
  }
  return g;
}

SymMatrix sqrt_block_diag(const GeneralizedGram& g) {
  SymMatrix root = psd_sqrt(g.gram);
  for (int i = g.block0; i < root.dim(); ++i) {
    for (int j = 0; j < g.block0; ++j) root.set(i, j, 0.0);
  }
  return root;
}

SqrtGramBlocks sqrt_gram_blocks(const GeneralizedGram& g) {
  int b0 = g.block0;
  int b1 = g.block1;
  int dim = b0 + b1;
  // sqrt(2^n G) = 2^(n/2) sqrt(G); the prefactor-free root is what the block
  // identities against the raw Gram blocks refer to.
  double scale = std::sqrt(static_cast<double>(dim));
  SymMatrix root = psd_sqrt(g.gram);

  SqrtGramBlocks blocks;
  blocks.x = SymMatrix(b0);
  blocks.z = SymMatrix(b1);
  blocks.y = Matrix(b0, b1);
  for (int i = 0; i < b0; ++i) {
    for (int j = 0; j <= i; ++j) blocks.x.set(i, j, scale * root(i, j));
  }
  for (int i = 0; i < b1; ++i) {
    for (int j = 0; j <= i; ++j) blocks.z.set(i, j, scale * root(b0 + i, b0 + j));
  }
  for (int i = 0; i < b0; ++i) {
    for (int j = 0; j < b1; ++j) blocks.y(i, j) = scale * root(i, b0 + j);
  }

  // Residuals of the block expansion of (sqrt(Gamma))^2 = Gamma.
  auto gamma_entry = [&](int i, int j) { return static_cast<double>(dim) * g.gram(i, j); };
  Matrix xd = to_dense(blocks.x);
  Matrix zd = to_dense(blocks.z);
  Matrix yt = transpose(blocks.y);
  Matrix xx = matmul(xd, xd);
  Matrix yyt = matmul(blocks.y, yt);
  Matrix zz = matmul(zd, zd);
  Matrix yty = matmul(yt, blocks.y);
  Matrix xy = matmul(xd, blocks.y);
  Matrix yz = matmul(blocks.y, zd);

  double r0 = 0.0, r1 = 0.0, rc = 0.0;
  for (int i = 0; i < b0; ++i) {
    for (int j = 0; j < b0; ++j) {
      double v = xx(i, j) + yyt(i, j) - gamma_entry(i, j);
      r0 += v * v;
    }
  }
  for (int i = 0; i < b1; ++i) {
    for (int j = 0; j < b1; ++j) {
      double v = zz(i, j) + yty(i, j) - gamma_entry(b0 + i, b0 + j);
      r1 += v * v;
    }
  }
  for (int i = 0; i < b0; ++i) {
    for (int j = 0; j < b1; ++j) {
      double v = xy(i, j) + yz(i, j) - gamma_entry(i, b0 + j);
      rc += v * v;
    }
  }
  double worst = std::sqrt(std::max({r0, r1, rc}));
  if (worst > 1e-8) {
    throw accuracy_error("sqrt_gram_blocks: block identity residual " + std::to_string(worst));
  }
  return blocks;
}

}  // namespace booldisc
