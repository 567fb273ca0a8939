#pragma once

#include <memory>

#include "ljfrft/graphs.hpp"
#include "ljfrft/numkit.hpp"

namespace ljfrft {

enum class Axis { Graph, Time };

/// A base transform F together with a generator T such that F^a = exp(a T).
///
/// The generator is stored in factored form T = P diag(mu) P^{-1}; every
/// fractional power or derivative is a diagonal re-exponentiation followed by
/// one dense product.
struct FractionalOperator {
  Eigen::Index n = 0;
  Axis axis = Axis::Graph;
  CplxMatrix base;
  CplxMatrix generator;
  CplxMatrix eig_basis;      // P
  CplxMatrix eig_basis_inv;  // P^{-1}
  CplxVector gen_eigenvalues;  // mu
};

using FracOpPtr = std::shared_ptr<const FractionalOperator>;

namespace fracops {

/// Eigenvalues of F_G closer than this to zero are rejected.
inline constexpr double kZeroEigTol = 1e-10;
/// Angular distance to the negative real axis below which F_G is rejected.
inline constexpr double kBranchCutTol = 1e-8;

/// Graph-axis operator: generator is the principal matrix logarithm of F_G.
FractionalOperator make_graph_fracop(const graphs::GftFactorization& gft);
FractionalOperator make_graph_fracop(const CplxMatrix& f_g);

/// Time-axis operator of length t_len >= 2 built on the unitary DFT
/// F[m][n] = exp(-2 pi i m n / t_len) / sqrt(t_len).
///
/// The eigenbasis comes from the commuting matrix S = C + D (second-difference
/// circulant plus its DFT-diagonal), split into even and odd parts so every
/// vector has exact parity. Within each parity, eigenvectors are ranked by
/// descending eigenvalue of S, which orders them by zero crossings. Hermite
/// indices run over 0..t_len-1 with t_len-1 replaced by t_len when t_len is
/// even; vector k carries generator eigenvalue -i pi k / 2.
FractionalOperator make_time_fracop(Eigen::Index t_len);

/// Unitary DFT matrix of size n.
CplxMatrix dft_matrix(Eigen::Index n);

/// Hermite index assigned to each column of a time operator's eig_basis.
std::vector<int> hermite_indices(Eigen::Index t_len);

/// exp(order * T).
CplxMatrix frac_power(const FractionalOperator& op, double order);

/// d/d(order) exp(order * T) = T exp(order * T).
CplxMatrix frac_derivative(const FractionalOperator& op, double order);

}  // namespace fracops
}  // namespace ljfrft
