#include "csqbc/attacks.hpp"

#include <cmath>

namespace csqbc::attacks {

namespace {

void require_unit_interval(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw OutOfRange("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

double binary_entropy(double alpha) {
  require_unit_interval(alpha);
  double h = 0.0;
  if (alpha > 0.0) h -= alpha * std::log2(alpha);
  if (alpha < 1.0) h -= (1.0 - alpha) * std::log2(1.0 - alpha);
  return h;
}

double bob_pass_probability(double alpha) {
  require_unit_interval(alpha);
  const double bias = 2.0 * alpha - 1.0;
  return 0.5 + 0.5 * bias * bias;
}

double bob_mutual_information(double alpha) {
  return 1.0 - binary_entropy(alpha);
}

BobAttackReport bob_attack_analyze(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                   const PureState& commit_state, Eigen::Index ancilla_dim,
                                   Eigen::Index system_dim) {
  if (rho0.dim() != rho1.dim() || rho0.dim() != system_dim) {
    throw DimensionMismatch("density matrices must match the declared system dimension");
  }
  if (ancilla_dim <= 0 || ancilla_dim * system_dim != commit_state.dim()) {
    throw InvalidSplit("commit state dimension " + std::to_string(commit_state.dim()) +
                       " does not factor as " + std::to_string(ancilla_dim) + "x" +
                       std::to_string(system_dim));
  }

  const ProjectorPair pair = helstrom_projectors(rho0, rho1);
  const Vector projected =
      apply_to_factor(pair.p0, commit_state.vector(), ancilla_dim, system_dim, Factor::Second);
  const double alpha = std::clamp(projected.squaredNorm(), 0.0, 1.0);

  BobAttackReport report;
  report.alpha = alpha;
  report.pass_probability = bob_pass_probability(alpha);
  report.mutual_information_bits = bob_mutual_information(alpha);
  report.decode_reliability = (1.0 + trace_distance(rho0, rho1)) / 2.0;
  return report;
}

AliceAttackState alice_cheat_prepare(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  const auto [psi0, psi1] = uhlmann_pair(rho0, rho1);
  const double overlap = inner(psi0, psi1).real();
  const double normalization = std::sqrt(2.0 + 2.0 * overlap);

  PureState cheat_state(Vector((psi0.vector() + psi1.vector()) / normalization));
  const double pass = std::norm(inner(psi0, cheat_state));
  return AliceAttackState{std::move(cheat_state), normalization, pass};
}

}  // namespace csqbc::attacks
