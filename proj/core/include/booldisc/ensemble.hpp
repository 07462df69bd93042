#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "booldisc/boolfunc.hpp"
#include "booldisc/linalg.hpp"

namespace booldisc {

/// Inner product between the two encoding qubit states, strictly inside (0,1).
class Overlap {
 public:
  explicit Overlap(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// Symmetric real parametrization of the encoding pair:
/// state0 = (c, d), state1 = (c, -d) with c^2 = (1+s)/2 and d^2 = (1-s)/2.
struct EncodingStates {
  std::array<double, 2> state0;
  std::array<double, 2> state1;
};

EncodingStates encoding_states(Overlap s);

/// Tensor product of per-bit encoding states for the string with index x.
std::vector<double> product_state(std::uint32_t x, int n, Overlap s);

/// Powers s^0 .. s^max_exp, each computed by exponentiation-by-squaring.
std::vector<double> overlap_powers(Overlap s, int max_exp);

/// The two-state ensemble induced by f: mixed states over each preimage with
/// uniform-prior weights, plus the Gram blocks of the underlying pure states.
/// An empty preimage contributes a zero state with prior 0 and a 0-dim block.
struct BooleanEnsemble {
  int n = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  SymMatrix sigma0{0};
  SymMatrix sigma1{0};
  SymMatrix gram0{0};   // (gram0)_{xy} = s^{d(x,y)}, x,y in S0
  SymMatrix gram1{0};
  Matrix gram_cross;    // |S0| x |S1|
  Preimages pre;
};

BooleanEnsemble build_ensemble(const BoolFunc& f, Overlap s);

/// The n-fold tensor power of the average single-qubit state; equals
/// p0 sigma0 + p1 sigma1 for every f on n bits.
SymMatrix average_state(Overlap s, int n);

/// Gram matrix of all 2^n product states in idx order.
SymMatrix full_gram(int n, Overlap s);

/// Block Gram matrix of the ensemble, rows ordered S0 (idx-ascending) then
/// S1, with the 1/2^n prefactor included. Constant functions produce a
/// single-block layout.
struct GeneralizedGram {
  SymMatrix gram{0};
  int block0 = 0;  // |S0|
  int block1 = 0;  // |S1|
};

GeneralizedGram generalized_gram(const BoolFunc& f, Overlap s);

/// Block-diagonal part of psd_sqrt(G.gram): the (S0,S0) and (S1,S1) blocks,
/// off-blocks zeroed.
SymMatrix sqrt_block_diag(const GeneralizedGram& g);

/// Blocks of the square root of the prefactor-free Gram 2^n G, verified to
/// satisfy X^2 + Y Y^T = Gram0, X Y + Y Z = GramCross, Z^2 + Y^T Y = Gram1
/// within 1e-8 (throws accuracy_error otherwise).
struct SqrtGramBlocks {
  SymMatrix x{0};
  SymMatrix z{0};
  Matrix y;
};

SqrtGramBlocks sqrt_gram_blocks(const GeneralizedGram& g);

}  // namespace booldisc
