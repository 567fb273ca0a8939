#pragma once

#include <utility>

#include "ljfrft/fracops.hpp"

namespace ljfrft {

using OrderPair = std::pair<double, double>;  // (alpha, beta)

/// Joint time-vertex fractional transform F^beta (x) F_G^alpha.
///
/// Acts on N x T signals X (rows are vertices, columns are time) as
/// F_G^alpha X (F^beta)^T, which equals the Kronecker form applied to the
/// column-stacked vec(X).
struct JointTransform {
  double alpha = 0.0;
  double beta = 0.0;
  FracOpPtr graph_op;
  FracOpPtr time_op;

  JointTransform() = default;
  JointTransform(FracOpPtr graph, FracOpPtr time, double alpha_order, double beta_order);

  Eigen::Index n() const { return graph_op->n; }
  Eigen::Index t() const { return time_op->n; }
  Eigen::Index size() const { return n() * t(); }

  /// Same operators, different orders.
  JointTransform with_orders(double alpha_order, double beta_order) const {
    return JointTransform(graph_op, time_op, alpha_order, beta_order);
  }
  JointTransform inverse() const { return with_orders(-alpha, -beta); }
};

namespace jfrft {

/// Dense NT x NT operator kron(F^beta, F_G^alpha).
CplxMatrix assemble_joint(const JointTransform& jt,
                          std::size_t element_cap = numkit::kDefaultElementCap);

/// F_G^alpha X (F^beta)^T for an N x T signal.
CplxMatrix apply_joint(const JointTransform& jt, const CplxMatrix& x);

/// (dF_J/dalpha, dF_J/dbeta) = (F^beta (x) T_G F_G^alpha, T F^beta (x) F_G^alpha).
std::pair<CplxMatrix, CplxMatrix> joint_partials(
    const JointTransform& jt, std::size_t element_cap = numkit::kDefaultElementCap);

/// Column-stacking vec and its inverse.
CplxVector vec(const CplxMatrix& x);
CplxMatrix unvec(const CplxVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace jfrft
}  // namespace ljfrft
