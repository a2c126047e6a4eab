#include "csqbc/bounds.hpp"

#include <cmath>
#include <string>

#include "csqbc/attacks.hpp"

namespace csqbc::bounds {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw OutOfRange(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

constexpr double kHalfGuard = 1e-6;     // rejection band around the degenerate alpha = 1/2
constexpr double kDenomGuard = 1e-12;

// Shared domain handling for the fair-protocol formulas. Both have the same
// denominator; alpha = 1 is a valid endpoint.
double fair_denominator(double alpha) {
  if (!(alpha > 0.5 + kHalfGuard && alpha <= 1.0)) {
    if (alpha > 0.5 - kHalfGuard && alpha <= 0.5 + kHalfGuard) {
      throw SingularDenominator("alpha within 1e-6 of the degenerate point 1/2");
    }
    throw OutOfRange("alpha must lie in (1/2, 1], got " + std::to_string(alpha));
  }
  const double overlap = 2.0 * std::sqrt(alpha * (1.0 - alpha));
  const double denom = 4.0 * alpha * alpha - 4.0 * alpha + overlap - 1.0;
  if (std::abs(denom) < kDenomGuard) {
    throw SingularDenominator("fair-protocol denominator below 1e-12 at alpha " +
                              std::to_string(alpha));
  }
  return denom;
}

double grid_point(int k, double step) {
  return std::min(k * step, 1.0);
}

int grid_count(double step) {
  if (!(step > 0.0 && step <= 0.1)) {
    throw OutOfRange("step must lie in (0, 0.1], got " + std::to_string(step));
  }
  return static_cast<int>(std::floor(1.0 / step + 1e-9)) + 1;
}

}  // namespace

double pa_lower(double d) {
  require_unit(d, "trace distance");
  return 1.0 - d / 2.0;
}

double pb_lower(double d) {
  require_unit(d, "trace distance");
  return (1.0 + d * d) / 2.0;
}

std::pair<double, double> effective_probabilities(double pa, double pb, CheckPolicy policy) {
  require_unit(pa, "pa");
  require_unit(pb, "pb");
  require_unit(policy.zeta, "zeta");
  const double pa_star = policy.zeta + (1.0 - policy.zeta) * pa;
  const double pb_star = (1.0 - policy.zeta) + policy.zeta * pb;
  return {pa_star, pb_star};
}

double combined_lower(double d, double zeta) {
  require_unit(d, "trace distance");
  require_unit(zeta, "zeta");
  return 2.0 - (zeta + d) / 2.0 + zeta * d * (1.0 + d) / 2.0;
}

double fair_zeta(double alpha) {
  const double denom = fair_denominator(alpha);
  const double overlap = 2.0 * std::sqrt(alpha * (1.0 - alpha));
  return (overlap - 1.0) / denom;
}

double fair_p_star(double alpha) {
  const double denom = fair_denominator(alpha);
  const double overlap = 2.0 * std::sqrt(alpha * (1.0 - alpha));
  const double pass = 2.0 * alpha * alpha - 2.0 * alpha + 1.0;
  return ((overlap + 1.0) * pass - 2.0) / denom;
}

FairOptimum fair_optimize(double tolerance) {
  if (!(tolerance > 0.0)) {
    throw OutOfRange("tolerance must be positive");
  }
  const double lo = 0.5 + kHalfGuard * 2.0;
  const double hi = 1.0 - 1e-6;

  // Coarse scan localizes the bracket before golden-section refinement.
  double best_alpha = lo;
  double best_value = fair_p_star(lo);
  constexpr double kScanStep = 1e-3;
  for (double alpha = lo; alpha <= hi; alpha += kScanStep) {
    const double value = fair_p_star(alpha);
    if (value < best_value) {
      best_value = value;
      best_alpha = alpha;
    }
  }

  double a = std::max(lo, best_alpha - 2.0 * kScanStep);
  double b = std::min(hi, best_alpha + 2.0 * kScanStep);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fair_p_star(x1);
  double f2 = fair_p_star(x2);
  while (b - a > tolerance) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fair_p_star(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fair_p_star(x2);
    }
  }

  const double alpha_star = (a + b) / 2.0;
  return FairOptimum{alpha_star, fair_zeta(alpha_star), fair_p_star(alpha_star)};
}

std::vector<Fig1Row> figure1_scan(double step) {
  const int count = grid_count(step);
  std::vector<Fig1Row> rows;
  rows.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double alpha = grid_point(k, step);
    rows.push_back({alpha, attacks::bob_pass_probability(alpha),
                    attacks::bob_mutual_information(alpha)});
  }
  return rows;
}

std::vector<Fig2Row> figure2_scan(double step) {
  const int count = grid_count(step);
  std::vector<Fig2Row> rows;
  rows.reserve(static_cast<std::size_t>(count) * count);
  for (int i = 0; i < count; ++i) {
    const double d = grid_point(i, step);
    for (int j = 0; j < count; ++j) {
      const double zeta = grid_point(j, step);
      rows.push_back({d, zeta, combined_lower(d, zeta)});
    }
  }
  return rows;
}

}  // namespace csqbc::bounds
