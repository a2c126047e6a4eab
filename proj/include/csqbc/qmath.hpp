#pragma once

#include <complex>

#include <Eigen/Dense>

#include "csqbc/errors.hpp"

// Dense complex linear algebra sized for Hilbert-space dimensions up to ~64.
// All functions are pure and thread-safe.

namespace csqbc::qmath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance for the Hermitian symmetry check. Inputs failing it
/// are rejected, never silently symmetrized.
inline constexpr double kHermitianTol = 1e-10;

/// Eigenvalues in [-kPsdClamp, 0] are clamped to 0 for PSD operations;
/// anything below -kPsdClamp is rejected.
inline constexpr double kPsdClamp = 1e-10;

/// Hard cap on entries per matrix (64x64).
inline constexpr Eigen::Index kMaxMatrixEntries = 4096;

struct EigResult {
  RealVector values;  // sorted descending
  Matrix vectors;     // column i pairs with values[i]; orthonormal
};

struct SvdResult {
  Matrix u;
  RealVector singular_values;  // nonnegative, descending
  Matrix v;                    // m = u * diag(s) * v.adjoint()
};

/// Throws OutOfRange if any entry is NaN/Inf or the matrix exceeds the size cap.
void check_admissible(const Matrix& m);
void check_admissible(const Vector& v);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
/// Eigenvector phase convention: the largest-magnitude component of each
/// column is made real nonnegative.
EigResult eig_hermitian(const Matrix& m);

/// Principal square root of a Hermitian PSD matrix.
Matrix sqrtm_psd(const Matrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix (nuclear norm).
double trace_norm(const Matrix& m);

/// Kronecker product with standard row blocking: result((i*rb+k),(j*cb+l)) = a(i,j)*b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

/// Full singular value decomposition, singular values descending.
SvdResult svd(const Matrix& m);

}  // namespace csqbc::qmath
