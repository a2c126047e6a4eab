#pragma once

#include "csqbc/quantum.hpp"

// Optimal cheating strategies for both parties and their closed-form
// success probabilities.

namespace csqbc::attacks {

/// Closed-form analysis of the receiver's decode-and-hope attack against a
/// single commit state with weight alpha on the p0 eigenspace.
struct BobAttackReport {
  double alpha;                    // weight of the commit state on p0
  double pass_probability;         // 1/2 + (2 alpha - 1)^2 / 2
  double mutual_information_bits;  // 1 - h(alpha)
  double decode_reliability;       // (1 + D)/2
};

/// The sender's delayed-choice cheat state and its success probability.
struct AliceAttackState {
  PureState cheat_state;    // (psi0 + psi1)/N on ancilla x system
  double normalization;     // N = sqrt(2 + 2 Re<psi0|psi1>)
  double pass_probability;  // (1 + F)/2, same for unveiling 0 or 1
};

/// Binary entropy in bits, with the 0 log 0 = 0 convention.
double binary_entropy(double alpha);

/// Probability that the measure-then-return attack survives the sender's
/// intactness check: 1/2 + (2 alpha - 1)^2 / 2. Symmetric about 1/2 and
/// never below 1/2.
double bob_pass_probability(double alpha);

/// Mutual information (bits) the receiver extracts: 1 - h(alpha).
double bob_mutual_information(double alpha);

/// Full per-state report for a commit state living on ancilla x system with
/// the declared split. alpha is computed as |(I x p0) commit|^2 where
/// {p0, p1} is the Helstrom pair of (rho0, rho1).
BobAttackReport bob_attack_analyze(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                   const PureState& commit_state, Eigen::Index ancilla_dim,
                                   Eigen::Index system_dim);

/// Builds the cheat state (psi0 + psi1)/N from the maximal-overlap
/// purification pair of (rho0, rho1).
AliceAttackState alice_cheat_prepare(const DensityMatrix& rho0, const DensityMatrix& rho1);

}  // namespace csqbc::attacks
