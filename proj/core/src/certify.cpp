#include "booldisc/certify.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "booldisc/errors.hpp"
#include "booldisc/linalg.hpp"

namespace booldisc {

BalanceClass balanced_or_constant(const BoolFunc& f) {
  std::uint32_t ones = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) ones += f(x);
  if (ones == 0 || ones == f.size()) return BalanceClass::Constant;
  if (2 * ones == f.size()) return BalanceClass::Balanced;
  return BalanceClass::Neither;
}

CountingResult counting_condition(const BoolFunc& f) {
  Preimages pre = preimages(f);
  if (pre.s0.empty() || pre.s1.empty()) return CountingResult{};

  int n = f.n();
  std::vector<int> hist0(2 * n + 1), hist1(2 * n + 1);
  for (std::uint32_t x : pre.s0) {
    for (std::uint32_t y : pre.s1) {
      std::fill(hist0.begin(), hist0.end(), 0);
      std::fill(hist1.begin(), hist1.end(), 0);
      for (std::uint32_t u : pre.s0) ++hist0[std::popcount(x ^ u) + std::popcount(u ^ y)];
      for (std::uint32_t v : pre.s1) ++hist1[std::popcount(x ^ v) + std::popcount(v ^ y)];
      for (int len = 0; len <= 2 * n; ++len) {
        if (hist0[len] != hist1[len]) {
          return CountingResult{false, CountingWitness{x, y, len, hist0[len], hist1[len]}};
        }
      }
    }
  }
  return CountingResult{};
}

FlipScan flip_coordinate(const BoolFunc& f) {
  if (balanced_or_constant(f) != BalanceClass::Balanced) {
    throw std::invalid_argument("flip_coordinate requires a balanced function");
  }
  int n = f.n();
  FlipScan scan;
  for (int i = 1; i <= n; ++i) {
    bool swaps = true;
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      if (f(x) == f(flip_bit(x, i, n))) {
        swaps = false;
        break;
      }
    }
    if (swaps) {
      if (!scan.index) scan.index = i;
      ++scan.multiplicity;
    }
  }
  return scan;
}

int min_cross_distance(const BoolFunc& f) {
  Preimages pre = preimages(f);
  if (pre.s0.empty() || pre.s1.empty()) {
    throw std::invalid_argument("min_cross_distance requires a non-constant function");
  }
  int best = f.n();
  for (std::uint32_t x : pre.s0) {
    for (std::uint32_t y : pre.s1) {
      best = std::min(best, std::popcount(x ^ y));
      if (best == 1) return 1;
    }
  }
  return best;
}

namespace {

struct GramBlocks {
  Matrix g0, g1, cross;
};

GramBlocks dense_gram_blocks(const Preimages& pre, int n, Overlap s) {
  std::vector<double> pw = overlap_powers(s, n);
  GramBlocks blocks;
  int m0 = static_cast<int>(pre.s0.size());
  int m1 = static_cast<int>(pre.s1.size());
  blocks.g0 = Matrix(m0, m0);
  blocks.g1 = Matrix(m1, m1);
  blocks.cross = Matrix(m0, m1);
  for (int i = 0; i < m0; ++i) {
    for (int j = 0; j < m0; ++j) blocks.g0(i, j) = pw[hamming_idx(pre.s0[i], pre.s0[j])];
    for (int j = 0; j < m1; ++j) blocks.cross(i, j) = pw[hamming_idx(pre.s0[i], pre.s1[j])];
  }
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m1; ++j) blocks.g1(i, j) = pw[hamming_idx(pre.s1[i], pre.s1[j])];
  }
  return blocks;
}

}  // namespace

double gram_relation_residual(const BoolFunc& f, Overlap s) {
  Preimages pre = preimages(f);
  if (pre.s0.empty() || pre.s1.empty()) {
    throw std::invalid_argument("gram_relation_residual requires a non-constant function");
  }
  GramBlocks blocks = dense_gram_blocks(pre, f.n(), s);
  return frobenius(subtract(matmul(blocks.g0, blocks.cross), matmul(blocks.cross, blocks.g1)));
}

double pgm_optimality_residual(const BoolFunc& f, Overlap s) {
  GeneralizedGram g = generalized_gram(f, s);
  return commutator_residual(g.gram, sqrt_block_diag(g));
}

ReducedRelationCheck reduced_relation_check(const BoolFunc& f, int i, Overlap s) {
  std::optional<BoolFunc> g = xor_decompose(f, i);
  if (!g) {
    throw std::invalid_argument("reduced_relation_check: no XOR decomposition at coordinate " +
                                std::to_string(i));
  }
  ReducedRelationCheck check;
  check.parent_residual = gram_relation_residual(f, s);
  check.child_residual = balanced_or_constant(*g) == BalanceClass::Constant
                             ? 0.0
                             : gram_relation_residual(*g, s);
  return check;
}

namespace {

AffineCertificate run_chain(const BoolFunc& f) {
  AffineCertificate cert;
  BalanceClass cls = balanced_or_constant(f);
  if (cls == BalanceClass::Constant) {
    cert.affine = true;
    cert.coefficients = AffineCoefficients{f(0), std::vector<int>(f.n(), 0), 0};
    return cert;
  }
  if (cls == BalanceClass::Neither) {
    cert.failure_stage = CertStage::Balance;
    return cert;
  }

  CountingResult counting = counting_condition(f);
  if (!counting.holds) {
    cert.failure_stage = CertStage::Counting;
    cert.witness = counting.witness;
    return cert;
  }

  if (f.n() == 1) {
    // Balanced one-bit functions are x1 or its complement.
    cert.affine = true;
    cert.coefficients = AffineCoefficients{f(0), {1}, 1};
    return cert;
  }

  FlipScan flip = flip_coordinate(f);
  if (!flip.index) {
    cert.failure_stage = CertStage::Flip;
    return cert;
  }
  int i = *flip.index;

  std::optional<BoolFunc> g = xor_decompose(f, i);
  if (!g) {
    cert.failure_stage = CertStage::Flip;
    return cert;
  }
  AffineCertificate sub = run_chain(*g);
  if (!sub.affine) {
    cert.failure_stage = CertStage::Recursion;
    return cert;
  }

  cert.affine = true;
  AffineCoefficients coef;
  coef.b0 = sub.coefficients->b0;
  coef.b = sub.coefficients->b;
  coef.b.insert(coef.b.begin() + (i - 1), 1);
  coef.m = sub.coefficients->m + 1;
  cert.coefficients = coef;
  return cert;
}

}  // namespace

AffineCertificate certify_affine(const BoolFunc& f) {
  AffineCertificate cert = run_chain(f);
  std::optional<AffineCoefficients> direct = is_affine(f);
  if (cert.affine != direct.has_value()) {
    throw invariant_error("certify_affine: chain verdict disagrees with the direct affine test");
  }
  if (cert.affine &&
      (cert.coefficients->b0 != direct->b0 || cert.coefficients->b != direct->b)) {
    throw invariant_error("certify_affine: chain coefficients disagree with the direct test");
  }
  return cert;
}

}  // namespace booldisc
