#pragma once

#include <utility>

#include "csqbc/qmath.hpp"
#include "csqbc/rng.hpp"

// Quantum objects and the operations the security analysis is built on:
// trace distance, fidelity, Helstrom discrimination, Born-rule projective
// measurement, and maximal-overlap purification pairs.

namespace csqbc {

using qmath::Complex;
using qmath::Matrix;
using qmath::Vector;

/// Unit-norm complex vector. The stored vector is renormalized to machine
/// precision; inputs whose norm is off by more than 1e-9 are rejected.
class PureState {
 public:
  explicit PureState(Vector v);

  const Vector& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

 private:
  Vector v_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
/// Tolerances: Hermitian 1e-10, eigenvalues >= -1e-10, |tr - 1| <= 1e-9.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  static DensityMatrix from_pure(const PureState& psi);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Binary projective measurement {p0, p1}: both Hermitian idempotent,
/// p0 + p1 = I, p0 * p1 = 0.
struct ProjectorPair {
  Matrix p0;
  Matrix p1;
};

struct MeasurementOutcome {
  int outcome;  // 0 or 1
  PureState post_state;
  double outcome_probability;
};

/// Which factor of a bipartite split survives a partial trace.
enum class Factor { First, Second };

/// tr|a-b|/2. Symmetric, in [0,1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// tr sqrt(sqrt(a) b sqrt(a)). Symmetric, in [0,1], 1 iff a == b.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Optimal binary discrimination measurement for rho0 vs rho1: p0 projects
/// onto the nonnegative eigenspace of (rho0 - rho1), p1 = I - p0.
/// Eigenvalues within [-1e-10, 1e-10] are assigned to p0.
/// Success probability tr(p0 rho0)/2 + tr(p1 rho1)/2 = (1 + D)/2.
ProjectorPair helstrom_projectors(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Born-rule measurement of a pure state with a binary projector pair:
/// outcome 0 with probability |p0 psi|^2, post state the normalized
/// projection. Throws DegenerateOutcome if the realized projection cannot
/// be normalized.
MeasurementOutcome measure(const PureState& state, const ProjectorPair& pair, SplitRng& rng);

/// |<original|post>|^2: the probability that a rank-1 intactness check of
/// `post` against `original` passes. 1 iff equal up to global phase.
double overlap_check_pass_probability(const PureState& original, const PureState& post);

/// Purifications (psi0, psi1) of rho0, rho1 on an ancilla(d) x system(d)
/// composite, chosen so that <psi0|psi1> is real, nonnegative and equals
/// fidelity(rho0, rho1). Tracing out the ancilla recovers each input.
std::pair<PureState, PureState> uhlmann_pair(const DensityMatrix& rho0,
                                             const DensityMatrix& rho1);

/// Partial trace of a (dim_a*dim_b)-dimensional operator over one factor.
/// Factor dimensions are explicit; they are never inferred.
Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b, Factor keep);

/// Partial trace of |psi><psi| without forming the composite matrix.
Matrix partial_trace_pure(const Vector& psi, Eigen::Index dim_a, Eigen::Index dim_b,
                          Factor keep);

/// (op x I) psi for factor == First, (I x op) psi for factor == Second.
Vector apply_to_factor(const Matrix& op, const Vector& psi, Eigen::Index dim_a,
                       Eigen::Index dim_b, Factor factor);

/// <a|b> for unit vectors of equal dimension.
Complex inner(const PureState& a, const PureState& b);

}  // namespace csqbc
