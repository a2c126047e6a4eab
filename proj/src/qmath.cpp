#include "csqbc/qmath.hpp"

#include <cmath>

namespace csqbc::qmath {

namespace {

void check_entry_count(Eigen::Index rows, Eigen::Index cols) {
  if (rows <= 0 || cols <= 0) {
    throw OutOfRange("matrix dimensions must be positive");
  }
  if (rows * cols > kMaxMatrixEntries) {
    throw OutOfRange("matrix exceeds the " + std::to_string(kMaxMatrixEntries) +
                     "-entry cap: " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw NotSquare("expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

void require_hermitian(const Matrix& m) {
  require_square(m);
  if (!is_hermitian(m)) {
    throw NotHermitian("matrix is not Hermitian within tolerance 1e-10");
  }
}

// Rotates each column so its largest-magnitude component is real nonnegative.
void fix_phases(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index argmax = 0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {
        best = mag;
        argmax = r;
      }
    }
    if (best > 0.0) {
      const Complex phase = std::conj(vectors(argmax, c)) / best;
      vectors.col(c) *= phase;
    }
  }
}

}  // namespace

void check_admissible(const Matrix& m) {
  check_entry_count(m.rows(), m.cols());
  if (!m.allFinite()) {
    throw OutOfRange("matrix contains NaN or Inf entries");
  }
}

void check_admissible(const Vector& v) {
  if (v.size() <= 0) {
    throw OutOfRange("vector dimension must be positive");
  }
  if (!v.allFinite()) {
    throw OutOfRange("vector contains NaN or Inf entries");
  }
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigResult eig_hermitian(const Matrix& m) {
  check_admissible(m);
  require_hermitian(m);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed to converge");
  }

  const Eigen::Index n = m.rows();
  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  fix_phases(out.vectors);
  return out;
}

Matrix sqrtm_psd(const Matrix& m) {
  EigResult eig = eig_hermitian(m);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -kPsdClamp) {
      throw NotPSD("matrix has eigenvalue " + std::to_string(eig.values(i)) +
                   " below -1e-10");
    }
    if (eig.values(i) < 0.0) eig.values(i) = 0.0;
  }
  const Matrix scaled = eig.vectors * eig.values.cwiseSqrt().asDiagonal();
  Matrix root = scaled * eig.vectors.adjoint();
  // The product is Hermitian up to rounding; symmetrize the noise away.
  root = ((root + root.adjoint()) / 2.0).eval();
  return root;
}

double trace_norm(const Matrix& m) {
  const EigResult eig = eig_hermitian(m);
  return eig.values.cwiseAbs().sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  check_admissible(a);
  check_admissible(b);
  check_entry_count(a.rows() * b.rows(), a.cols() * b.cols());
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SvdResult svd(const Matrix& m) {
  check_admissible(m);
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.u = solver.matrixU();
  out.singular_values = solver.singularValues();
  out.v = solver.matrixV();
  return out;
}

}  // namespace csqbc::qmath
