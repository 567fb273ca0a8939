#include "ljfrft/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ljfrft/error.hpp"

namespace ljfrft::fracops {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConsistencyTol = 1e-8;

CplxMatrix scaled_product(const FractionalOperator& op, const CplxVector& diag) {
  return op.eig_basis * diag.asDiagonal() * op.eig_basis_inv;
}

void check_operator(const FractionalOperator& op) {
  const CplxVector lam = op.gen_eigenvalues.array().exp().matrix();
  if (numkit::rel_diff(scaled_product(op, lam), op.base) > kConsistencyTol) {
    throw Error(ErrorCode::NearDefective,
                "exp(generator) does not reproduce the base transform to 1e-8");
  }
  const double comm = (op.generator * op.base - op.base * op.generator).norm();
  if (comm > kConsistencyTol * std::max(1.0, op.generator.norm() * op.base.norm())) {
    throw Error(ErrorCode::NearDefective, "generator does not commute with the base transform");
  }
}

// Eigenvectors of a real symmetric block, sorted by descending eigenvalue.
RealMatrix sorted_eigvecs(const RealMatrix& block) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(block);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "commuting-matrix eigensolver failed");
  }
  const RealVector& ev = es.eigenvalues();  // ascending
  const Eigen::Index m = ev.size();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    if (ev(i + 1) - ev(i) <= 1e-10 * scale) {
      throw Error(ErrorCode::CommutingMatrixDegenerate,
                  "repeated eigenvalue in commuting matrix parity block");
    }
  }
  return es.eigenvectors().rowwise().reverse();
}

}  // namespace

CplxMatrix dft_matrix(Eigen::Index n) {
  CplxMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // Reduce m*k modulo n first to keep the angle small.
      const auto idx = static_cast<double>((m * k) % n);
      f(m, k) = std::polar(norm, -2.0 * kPi * idx / static_cast<double>(n));
    }
  }
  return f;
}

std::vector<int> hermite_indices(Eigen::Index t_len) {
  std::vector<int> k(static_cast<std::size_t>(t_len));
  for (Eigen::Index i = 0; i < t_len; ++i) k[static_cast<std::size_t>(i)] = static_cast<int>(i);
  if (t_len % 2 == 0) k.back() = static_cast<int>(t_len);
  return k;
}

FractionalOperator make_graph_fracop(const graphs::GftFactorization& gft) {
  return make_graph_fracop(gft.f_g);
}

FractionalOperator make_graph_fracop(const CplxMatrix& f_g) {
  const numkit::EigResult eig = numkit::eig_decompose(f_g);
  const Eigen::Index n = f_g.rows();

  FractionalOperator op;
  op.n = n;
  op.axis = Axis::Graph;
  op.base = f_g;
  op.eig_basis = eig.vectors;
  op.eig_basis_inv = eig.unitary_vectors
                         ? CplxMatrix(eig.vectors.adjoint())
                         : numkit::solve_linear(eig.vectors, CplxMatrix::Identity(n, n));
  op.gen_eigenvalues.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lam = eig.values(k);
    const double mag = std::abs(lam);
    if (mag < kZeroEigTol) {
      throw Error(ErrorCode::ZeroEigenvalue, "F_G has an eigenvalue within 1e-10 of zero");
    }
    if (kPi - std::abs(std::arg(lam)) < kBranchCutTol) {
      throw Error(ErrorCode::BranchCutEigenvalue,
                  "F_G eigenvalue " + std::to_string(lam.real()) +
                      (lam.imag() < 0 ? "" : "+") + std::to_string(lam.imag()) + "i lies on the principal-log branch cut");
    }
    op.gen_eigenvalues(k) = std::log(lam);
  }
  op.generator = scaled_product(op, op.gen_eigenvalues);
  check_operator(op);
  return op;
}

FractionalOperator make_time_fracop(Eigen::Index t_len) {
  if (t_len < 2) {
    throw Error(ErrorCode::InvalidArgument, "time length must be at least 2");
  }
  const Eigen::Index n = t_len;

  RealMatrix s = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i, i) += -2.0 + 2.0 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)) - 2.0;
    s(i, (i + 1) % n) += 1.0;
    s(i, (i + n - 1) % n) += 1.0;
  }

  // Even/odd symmetrizer.
  const Eigen::Index r = n / 2;
  const bool even = n % 2 == 0;
  const double h = 1.0 / std::sqrt(2.0);
  RealMatrix p = RealMatrix::Zero(n, n);
  p(0, 0) = 1.0;
  for (Eigen::Index i = 1; i <= r - (even ? 1 : 0); ++i) {
    p(i, i) = h;
    p(i, n - i) = h;
  }
  if (even) p(r, r) = 1.0;
  for (Eigen::Index i = r + 1; i < n; ++i) {
    p(i, i) = -h;
    p(i, n - i) = h;
  }

  const RealMatrix cs = p * s * p.transpose();
  const Eigen::Index ne = r + 1;
  const Eigen::Index no = n - ne;
  const RealMatrix ve = sorted_eigvecs(cs.topLeftCorner(ne, ne));
  RealMatrix even_vecs = p.transpose().leftCols(ne) * ve;
  RealMatrix odd_vecs(n, no);
  if (no > 0) {
    const RealMatrix vo = sorted_eigvecs(cs.bottomRightCorner(no, no));
    odd_vecs = p.transpose().rightCols(no) * vo;
  }

  RealMatrix e(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (even && c == n - 1) {
      e.col(c) = even_vecs.col(ne - 1);
    } else if (c % 2 == 0) {
      e.col(c) = even_vecs.col(c / 2);
    } else {
      e.col(c) = odd_vecs.col(c / 2);
    }
  }

  FractionalOperator op;
  op.n = n;
  op.axis = Axis::Time;
  op.base = dft_matrix(n);
  op.eig_basis = e.cast<cplx>();
  op.eig_basis_inv = e.transpose().cast<cplx>();
  op.gen_eigenvalues.resize(n);
  const auto ks = hermite_indices(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    op.gen_eigenvalues(c) = cplx(0.0, -kPi * ks[static_cast<std::size_t>(c)] / 2.0);
  }
  op.generator = scaled_product(op, op.gen_eigenvalues);
  check_operator(op);
  return op;
}

CplxMatrix frac_power(const FractionalOperator& op, double order) {
  const CplxVector d = (order * op.gen_eigenvalues.array()).exp().matrix();
  return scaled_product(op, d);
}

CplxMatrix frac_derivative(const FractionalOperator& op, double order) {
  const CplxVector d =
      (op.gen_eigenvalues.array() * (order * op.gen_eigenvalues.array()).exp()).matrix();
  return scaled_product(op, d);
}

}  // namespace ljfrft::fracops
