#pragma once

#include <cstdint>
#include <optional>

#include "booldisc/boolfunc.hpp"
#include "booldisc/ensemble.hpp"

namespace booldisc {

enum class BalanceClass { Constant, Balanced, Neither };

/// Constant iff one preimage is empty, Balanced iff |S0| = |S1|.
BalanceClass balanced_or_constant(const BoolFunc& f);

/// A violating triple for the path-counting condition: for endpoints x in S0
/// and y in S1, the number of S0-intermediates at total distance
/// d(x,u) + d(u,y) = path_length differs from the number of S1-intermediates.
struct CountingWitness {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  int path_length = 0;
  int count0 = 0;
  int count1 = 0;
};

struct CountingResult {
  bool holds = true;
  std::optional<CountingWitness> witness;
};

/// Exact integer check of the intermediate-vertex counting equality for every
/// x in S0, y in S1 and every total path length; vacuously true when either
/// preimage is empty. The first violation (x, then y, then length ascending)
/// is returned as the witness.
CountingResult counting_condition(const BoolFunc& f);

struct FlipScan {
  std::optional<int> index;  // smallest coordinate whose flip swaps S0 and S1
  int multiplicity = 0;      // how many coordinates pass (parities can have several)
};

/// Scans all coordinates i for "x in S0 iff flip_i(x) in S1". Requires a
/// balanced f.
FlipScan flip_coordinate(const BoolFunc& f);

/// Minimum Hamming distance between the two preimages; 1 for every
/// non-constant f since the hypercube is connected.
int min_cross_distance(const BoolFunc& f);

/// ||Gram0 GramCross - GramCross Gram1||_F; zero exactly when the
/// block-commutation relation behind square-root-measurement optimality
/// holds. Requires a non-constant f.
double gram_relation_residual(const BoolFunc& f, Overlap s);

/// Commutator residual between the generalized Gram matrix and the
/// block-diagonal part of its square root; near zero iff the square-root
/// measurement is optimal at this (f, s).
double pgm_optimality_residual(const BoolFunc& f, Overlap s);

struct ReducedRelationCheck {
  double parent_residual = 0.0;
  double child_residual = 0.0;
};

/// Residuals for f and its XOR-reduction g at coordinate i (the relation
/// passes from parent to child). A constant child has residual 0 by
/// convention. Throws when the decomposition at i does not exist.
ReducedRelationCheck reduced_relation_check(const BoolFunc& f, int i, Overlap s);

enum class CertStage { Balance, Counting, Flip, Recursion };

/// Outcome of the exact certification chain. Exactly one of coefficients
/// (affine) or failure_stage (not affine) is populated; a counting witness
/// accompanies a top-level Counting failure.
struct AffineCertificate {
  bool affine = false;
  std::optional<AffineCoefficients> coefficients;
  std::optional<CountingWitness> witness;
  std::optional<CertStage> failure_stage;
};

/// Runs the integer chain: balance classification, counting condition,
/// flip-coordinate extraction, then recursive certification of the reduced
/// function. The verdict is cross-checked against the direct affine test;
/// disagreement throws invariant_error.
AffineCertificate certify_affine(const BoolFunc& f);

}  // namespace booldisc
