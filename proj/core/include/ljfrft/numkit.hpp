#pragma once

// Dense complex linear algebra shared by every other module.
//
// Matrices are Eigen::MatrixXcd (column-major storage). Every routine here is
// a pure function of its inputs.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace ljfrft {

using cplx = std::complex<double>;
using CplxMatrix = Eigen::MatrixXcd;
using CplxVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace numkit {

/// Relative eigen-residual tolerance: ||Z v - lambda v|| <= kEigTol * ||Z||.
inline constexpr double kEigTol = 1e-8;
/// Eigenvector matrices with condition number above this are rejected.
inline constexpr double kMaxEigvecCond = 1e10;
/// Pivot threshold (relative to ||A||_F) below which a system is singular.
inline constexpr double kSingularPivot = 1e-14;
/// Default cap on the number of elements produced by kron().
inline constexpr std::size_t kDefaultElementCap = std::size_t{1} << 26;

struct EigResult {
  CplxVector values;
  CplxMatrix vectors;  // columns are unit-norm right eigenvectors
  double cond_v = 1.0;
  /// True when `vectors` is unitary (Hermitian or normal input).
  bool unitary_vectors = false;
};

/// Throws Error(NonFinite) if any entry is NaN or infinite.
void require_finite(const CplxMatrix& m, const char* what);

/// Eigendecomposition of a diagonalizable square matrix.
///
/// Hermitian inputs go through a self-adjoint solver and normal inputs
/// through a complex Schur form, so both return a unitary eigenvector
/// matrix even with repeated eigenvalues. Everything else uses a general
/// complex eigensolver and is rejected when the eigenvector matrix is
/// ill-conditioned (cond > kMaxEigvecCond, Error NearDefective).
EigResult eig_decompose(const CplxMatrix& m);

/// Solves a * x = b with full pivoting. Throws Error(Singular).
CplxMatrix solve_linear(const CplxMatrix& a, const CplxMatrix& b);

/// Kronecker product. Throws Error(DimensionOverflow) above `element_cap`.
CplxMatrix kron(const CplxMatrix& a, const CplxMatrix& b,
                std::size_t element_cap = kDefaultElementCap);

double frob_norm(const CplxMatrix& m);

/// ||a - b||_F / max(||b||_F, tiny).
double rel_diff(const CplxMatrix& a, const CplxMatrix& b);

bool is_hermitian(const CplxMatrix& m, double tol = 1e-12);
bool is_normal(const CplxMatrix& m, double tol = 1e-12);

/// 2-norm condition number from singular values.
double condition_number(const CplxMatrix& m);

}  // namespace numkit
}  // namespace ljfrft
