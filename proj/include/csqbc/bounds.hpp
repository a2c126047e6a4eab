#pragma once

#include <vector>

#include "csqbc/errors.hpp"

// Closed-form security bounds, the combined-bound surface, the fair-protocol
// condition and its scalar optimizer. Pure functions throughout.

namespace csqbc::bounds {

/// Probability that the receiver's action is checked at unveil; the
/// sender's is checked with the complementary probability.
struct CheckPolicy {
  double zeta;
};

struct FairOptimum {
  double alpha_star;
  double zeta_star;
  double p_star;
};

struct Fig1Row {
  double alpha;
  double p_b;
  double i_m;
};

struct Fig2Row {
  double d;
  double zeta;
  double bound;
};

/// Sender's cheating floor: 1 - d/2.
double pa_lower(double d);

/// Receiver's cheating floor: (1 + d^2)/2.
double pb_lower(double d);

/// Check-weighted cheating probabilities:
/// pa* = zeta + (1 - zeta) pa,  pb* = (1 - zeta) + zeta pb.
std::pair<double, double> effective_probabilities(double pa, double pb, CheckPolicy policy);

/// Lower bound on pa* + pb* as a function of the trace distance and the
/// check policy: 2 - (zeta + d)/2 + zeta d (1 + d)/2. Never below 3/2.
double combined_lower(double d, double zeta);

/// The check probability that equalizes both parties' effective cheating
/// probabilities in the single-alpha diagonal model. Domain (1/2, 1]; inputs
/// within 1e-6 of 1/2 are rejected as degenerate.
double fair_zeta(double alpha);

/// The common value pa* = pb* at the fair check probability.
double fair_p_star(double alpha);

/// Minimizes fair_p_star over (1/2, 1) by a coarse grid scan followed by
/// golden-section refinement of the bracket.
FairOptimum fair_optimize(double tolerance);

/// Rows (alpha, p_b, i_m) for alpha = 0, step, ..., 1. Requires 0 < step <= 0.1.
std::vector<Fig1Row> figure1_scan(double step);

/// Full grid over [0,1]^2 of the combined lower bound.
std::vector<Fig2Row> figure2_scan(double step);

}  // namespace csqbc::bounds
