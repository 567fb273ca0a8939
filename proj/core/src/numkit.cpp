#include "ljfrft/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "ljfrft/error.hpp"

namespace ljfrft::numkit {

namespace {

void require_square(const CplxMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be square, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
  }
}

void normalize_columns(CplxMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double nrm = v.col(k).norm();
    if (nrm > 0.0) v.col(k) /= nrm;
  }
}

void check_residual(const CplxMatrix& m, const EigResult& r) {
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  for (Eigen::Index k = 0; k < r.values.size(); ++k) {
    const double res = (m * r.vectors.col(k) - r.values(k) * r.vectors.col(k)).norm();
    if (res > kEigTol * scale) {
      throw Error(ErrorCode::NonConvergence,
                  "eigenpair " + std::to_string(k) + " residual " + std::to_string(res / scale));
    }
  }
}

}  // namespace

void require_finite(const CplxMatrix& m, const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::NonFinite, std::string(what) + " has a non-finite entry at (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

bool is_hermitian(const CplxMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_normal(const CplxMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.squaredNorm());
  return (m * m.adjoint() - m.adjoint() * m).norm() <= tol * scale;
}

double condition_number(const CplxMatrix& m) {
  Eigen::JacobiSVD<CplxMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

EigResult eig_decompose(const CplxMatrix& m) {
  require_square(m, "eig_decompose input");
  require_finite(m, "eig_decompose input");
  EigResult r;
  const Eigen::Index n = m.rows();
  if (n == 0) return r;

  if (is_hermitian(m)) {
    const CplxMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CplxMatrix> es(herm);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence, "self-adjoint eigensolver did not converge");
    }
    r.values = es.eigenvalues().cast<cplx>();
    r.vectors = es.eigenvectors();
    r.unitary_vectors = true;
  } else if (is_normal(m)) {
    // The Schur form of a normal matrix is diagonal up to rounding.
    Eigen::ComplexSchur<CplxMatrix> schur(m);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence, "complex Schur iteration did not converge");
    }
    r.values = schur.matrixT().diagonal();
    r.vectors = schur.matrixU();
    r.unitary_vectors = true;
  } else {
    Eigen::ComplexEigenSolver<CplxMatrix> es(m);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence, "complex eigensolver did not converge");
    }
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors();
  }

  normalize_columns(r.vectors);
  r.cond_v = r.unitary_vectors ? 1.0 : condition_number(r.vectors);
  if (!std::isfinite(r.cond_v) || r.cond_v > kMaxEigvecCond) {
    throw Error(ErrorCode::NearDefective,
                "eigenvector condition number " + std::to_string(r.cond_v) + " exceeds 1e10");
  }
  check_residual(m, r);
  return r;
}

CplxMatrix solve_linear(const CplxMatrix& a, const CplxMatrix& b) {
  require_square(a, "solve_linear matrix");
  if (b.rows() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "solve_linear right-hand side has " +
                                              std::to_string(b.rows()) + " rows, expected " +
                                              std::to_string(a.rows()));
  }
  if (a.rows() == 0) return b;
  Eigen::FullPivLU<CplxMatrix> lu(a);
  const double thresh = kSingularPivot * a.norm();
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (a.norm() == 0.0 || pivots.minCoeff() <= thresh) {
    throw Error(ErrorCode::Singular, "pivot below 1e-14*||A||_F");
  }
  return lu.solve(b);
}

CplxMatrix kron(const CplxMatrix& a, const CplxMatrix& b, std::size_t element_cap) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (cols != 0 && rows > element_cap / cols) {
    throw Error(ErrorCode::DimensionOverflow, "kron result " + std::to_string(rows) + "x" +
                                                  std::to_string(cols) + " exceeds element cap");
  }
  CplxMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const Eigen::Index p = b.rows();
  const Eigen::Index q = b.cols();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * p, j * q, p, q) = a(i, j) * b;
    }
  }
  return out;
}

double frob_norm(const CplxMatrix& m) { return m.norm(); }

double rel_diff(const CplxMatrix& a, const CplxMatrix& b) {
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

}  // namespace ljfrft::numkit
