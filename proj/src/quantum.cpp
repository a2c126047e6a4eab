#include "csqbc/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace csqbc {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

void require_split(Eigen::Index total, Eigen::Index dim_a, Eigen::Index dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || dim_a * dim_b != total) {
    throw InvalidSplit("declared split " + std::to_string(dim_a) + "x" +
                       std::to_string(dim_b) + " does not factor dimension " +
                       std::to_string(total));
  }
}

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

}  // namespace

PureState::PureState(Vector v) : v_(std::move(v)) {
  qmath::check_admissible(v_);
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ValidationError("state norm " + std::to_string(norm) + " is not 1 within 1e-9");
  }
  v_ /= norm;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  qmath::check_admissible(m_);
  if (m_.rows() != m_.cols()) {
    throw NotSquare("density matrix must be square");
  }
  if (!qmath::is_hermitian(m_)) {
    throw NotHermitian("density matrix is not Hermitian within 1e-10");
  }
  const double trace = m_.trace().real();
  if (std::abs(trace - 1.0) > 1e-9) {
    throw ValidationError("density matrix trace " + std::to_string(trace) +
                          " is not 1 within 1e-9");
  }
  const qmath::EigResult eig = qmath::eig_hermitian(m_);
  if (eig.values.minCoeff() < -qmath::kPsdClamp) {
    throw NotPSD("density matrix has eigenvalue below -1e-10");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.vector() * psi.vector().adjoint());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  return clamp01(qmath::trace_norm(a.matrix() - b.matrix()) / 2.0);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim());
  const Matrix root = qmath::sqrtm_psd(a.matrix());
  Matrix inner = root * b.matrix() * root;
  inner = ((inner + inner.adjoint()) / 2.0).eval();
  const qmath::EigResult eig = qmath::eig_hermitian(inner);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    sum += std::sqrt(std::max(eig.values(i), 0.0));
  }
  return clamp01(sum);
}

ProjectorPair helstrom_projectors(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  require_same_dim(rho0.dim(), rho1.dim());
  const Eigen::Index n = rho0.dim();
  const qmath::EigResult eig = qmath::eig_hermitian(rho0.matrix() - rho1.matrix());

  Matrix p0 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Zero eigenvalues (within clamp) go to p0 so the pair is deterministic.
    if (eig.values(i) >= -qmath::kPsdClamp) {
      p0 += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
  }
  p0 = ((p0 + p0.adjoint()) / 2.0).eval();
  Matrix p1 = Matrix::Identity(n, n) - p0;
  return ProjectorPair{std::move(p0), std::move(p1)};
}

MeasurementOutcome measure(const PureState& state, const ProjectorPair& pair, SplitRng& rng) {
  require_same_dim(state.dim(), pair.p0.rows());
  const Vector projected0 = pair.p0 * state.vector();
  const double prob0 = clamp01(projected0.squaredNorm());

  const int outcome = rng.bernoulli(prob0) ? 0 : 1;
  const Vector projected = (outcome == 0) ? projected0 : Vector(pair.p1 * state.vector());
  const double norm = projected.norm();
  if (norm < 1e-12) {
    throw DegenerateOutcome("projection of the realized outcome has norm below 1e-12");
  }
  return MeasurementOutcome{outcome, PureState(Vector(projected / norm)),
                            outcome == 0 ? prob0 : clamp01(1.0 - prob0)};
}

double overlap_check_pass_probability(const PureState& original, const PureState& post) {
  require_same_dim(original.dim(), post.dim());
  return clamp01(std::norm(inner(original, post)));
}

std::pair<PureState, PureState> uhlmann_pair(const DensityMatrix& rho0,
                                             const DensityMatrix& rho1) {
  require_same_dim(rho0.dim(), rho1.dim());
  const Eigen::Index d = rho0.dim();

  // Amplitude matrices A with A A^dag = rho: A0 = sqrt(rho0), and A1 =
  // sqrt(rho1) rotated by the polar unitary of the cross operator
  // sqrt(rho1) sqrt(rho0), which aligns the pair so that
  // <psi0|psi1> = tr|sqrt(rho1) sqrt(rho0)| = F(rho0, rho1).
  const Matrix a0 = qmath::sqrtm_psd(rho0.matrix());
  const Matrix root1 = qmath::sqrtm_psd(rho1.matrix());
  const qmath::SvdResult cross = qmath::svd(root1 * a0);
  const Matrix a1 = root1 * cross.u * cross.v.adjoint();

  // State layout: amplitude of |a>_anc x |s>_sys is A(s, a).
  auto to_state = [d](const Matrix& amps) {
    Vector psi(d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index s = 0; s < d; ++s) {
        psi(a * d + s) = amps(s, a);
      }
    }
    return PureState(std::move(psi));
  };
  return {to_state(a0), to_state(a1)};
}

Matrix partial_trace(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b, Factor keep) {
  qmath::check_admissible(m);
  if (m.rows() != m.cols()) throw NotSquare("partial trace needs a square matrix");
  require_split(m.rows(), dim_a, dim_b);

  if (keep == Factor::First) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_b; ++i)
    for (Eigen::Index j = 0; j < dim_b; ++j)
      for (Eigen::Index k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

Matrix partial_trace_pure(const Vector& psi, Eigen::Index dim_a, Eigen::Index dim_b,
                          Factor keep) {
  qmath::check_admissible(psi);
  require_split(psi.size(), dim_a, dim_b);
  const RowMajorMap s(psi.data(), dim_a, dim_b);
  if (keep == Factor::First) {
    return s * s.adjoint();
  }
  return (s.adjoint() * s).transpose();
}

Vector apply_to_factor(const Matrix& op, const Vector& psi, Eigen::Index dim_a,
                       Eigen::Index dim_b, Factor factor) {
  qmath::check_admissible(op);
  require_split(psi.size(), dim_a, dim_b);
  const Eigen::Index target = (factor == Factor::First) ? dim_a : dim_b;
  if (op.rows() != op.cols() || op.rows() != target) {
    throw DimensionMismatch("operator dimension " + std::to_string(op.rows()) +
                            " does not match factor dimension " + std::to_string(target));
  }
  const RowMajorMap s(psi.data(), dim_a, dim_b);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> result;
  if (factor == Factor::First) {
    result = op * s;
  } else {
    result = s * op.transpose();
  }
  return Eigen::Map<const Vector>(result.data(), psi.size());
}

Complex inner(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim());
  return a.vector().dot(b.vector());
}

}  // namespace csqbc
