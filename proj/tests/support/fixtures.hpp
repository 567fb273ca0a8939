#pragma once

// Small shared builders for the unit tests.

#include <cstdint>
#include <memory>

#include "ljfrft/error.hpp"
#include "ljfrft/fracops.hpp"
#include "ljfrft/synthetic.hpp"

namespace fixture {

/// Adjacency operator of a random dense directed graph, redrawing the seed
/// while F_G has an eigenvalue on the log branch cut.
inline ljfrft::FracOpPtr directed_graph_op(Eigen::Index n, std::uint64_t seed) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      const auto g = ljfrft::synthetic::random_directed_graph(n, seed + 101ULL * attempt);
      return ljfrft::synthetic::graph_operator(g, ljfrft::graphs::ShiftKind::Adjacency);
    } catch (const ljfrft::Error& e) {
      if (e.code() != ljfrft::ErrorCode::BranchCutEigenvalue) throw;
    }
  }
  throw ljfrft::Error(ljfrft::ErrorCode::NonConvergence, "no usable test graph");
}

inline ljfrft::FracOpPtr time_op(Eigen::Index t) {
  return std::make_shared<const ljfrft::FractionalOperator>(ljfrft::fracops::make_time_fracop(t));
}

inline ljfrft::JointTransform joint(Eigen::Index n, Eigen::Index t, double a, double b,
                                    std::uint64_t seed) {
  return ljfrft::JointTransform(directed_graph_op(n, seed), time_op(t), a, b);
}

}  // namespace fixture
