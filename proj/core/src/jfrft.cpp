#include "ljfrft/jfrft.hpp"

#include <string>

#include "ljfrft/error.hpp"

namespace ljfrft {

JointTransform::JointTransform(FracOpPtr graph, FracOpPtr time, double alpha_order,
                               double beta_order)
    : alpha(alpha_order), beta(beta_order), graph_op(std::move(graph)), time_op(std::move(time)) {
  if (!graph_op || !time_op) {
    throw Error(ErrorCode::InvalidArgument, "joint transform needs both operators");
  }
  if (graph_op->axis != Axis::Graph || time_op->axis != Axis::Time) {
    throw Error(ErrorCode::InvalidArgument, "joint transform operators on the wrong axes");
  }
}

namespace jfrft {

CplxMatrix assemble_joint(const JointTransform& jt, std::size_t element_cap) {
  return numkit::kron(fracops::frac_power(*jt.time_op, jt.beta),
                      fracops::frac_power(*jt.graph_op, jt.alpha), element_cap);
}

CplxMatrix apply_joint(const JointTransform& jt, const CplxMatrix& x) {
  if (x.rows() != jt.n() || x.cols() != jt.t()) {
    throw Error(ErrorCode::ShapeMismatch,
                "signal is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                    ", transform expects " + std::to_string(jt.n()) + "x" +
                    std::to_string(jt.t()));
  }
  const CplxMatrix g = fracops::frac_power(*jt.graph_op, jt.alpha);
  const CplxMatrix f = fracops::frac_power(*jt.time_op, jt.beta);
  return g * x * f.transpose();
}

std::pair<CplxMatrix, CplxMatrix> joint_partials(const JointTransform& jt,
                                                 std::size_t element_cap) {
  const CplxMatrix g = fracops::frac_power(*jt.graph_op, jt.alpha);
  const CplxMatrix f = fracops::frac_power(*jt.time_op, jt.beta);
  const CplxMatrix dg = fracops::frac_derivative(*jt.graph_op, jt.alpha);
  const CplxMatrix df = fracops::frac_derivative(*jt.time_op, jt.beta);
  return {numkit::kron(f, dg, element_cap), numkit::kron(df, g, element_cap)};
}

CplxVector vec(const CplxMatrix& x) {
  return Eigen::Map<const CplxVector>(x.data(), x.size());
}

CplxMatrix unvec(const CplxVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "vector length " + std::to_string(v.size()) +
                                              " does not match " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
  return Eigen::Map<const CplxMatrix>(v.data(), rows, cols);
}

}  // namespace jfrft
}  // namespace ljfrft
