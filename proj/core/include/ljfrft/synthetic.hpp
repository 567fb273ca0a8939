#pragma once

#include <cstdint>
#include <vector>

#include "ljfrft/graphs.hpp"
#include "ljfrft/jfrft.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/signals.hpp"

namespace ljfrft::synthetic {

/// Recipe for a bandlimited signal plus "high-frequency" noise in the
/// (alpha, beta) domain of a random k-NN graph.
struct SyntheticSpec {
  Eigen::Index n = 6;
  Eigen::Index t = 6;
  Eigen::Index m = 6;
  BandSpec band{4, 4};
  Eigen::Index overlap = 0;
  double sigma = 0.2;
  OrderPair true_orders{0.55, 0.45};
  int knn = 2;
  graphs::ShiftKind shift = graphs::ShiftKind::Adjacency;
  std::uint64_t seed = 1;
};

struct SyntheticProblem {
  SyntheticSpec spec;
  std::uint64_t graph_seed = 0;  // seed that produced a usable graph
  std::vector<std::vector<double>> coords;
  graphs::Graph graph;
  FracOpPtr graph_op;
  FracOpPtr time_op;
  NoiseSpec noise;
  TimeVertexSignal clean;
  TimeVertexSignal noise_signal;
  TimeVertexSignal noisy;
};

/// Uniform random points in the unit square.
std::vector<std::vector<double>> random_coords(Eigen::Index n, std::uint64_t seed);

/// Builds the graph (retrying with successive seeds while the GFT lands on the
/// log branch cut), the operators, the clean signal and the noise.
SyntheticProblem make_problem(const SyntheticSpec& spec);

/// Graph operator for a shift kind on given coordinates.
FracOpPtr graph_operator(const graphs::Graph& g, graphs::ShiftKind kind);

/// Transform-learning instance: a random dense directed graph with
/// uniform [0, 1) weights (no self-loops), a uniform real N x T input, and
/// the target F_G^a X (F^b)^T at the true orders.
struct TransformSpec {
  Eigen::Index n = 20;
  Eigen::Index t = 6;
  OrderPair true_orders{0.45, 0.55};
  std::uint64_t seed = 7;
};

struct TransformInstance {
  TransformSpec spec;
  std::uint64_t graph_seed = 0;
  graphs::Graph graph;
  learn::TransformProblem problem;
};

graphs::Graph random_directed_graph(Eigen::Index n, std::uint64_t seed);
TransformInstance make_transform_problem(const TransformSpec& spec);

}  // namespace ljfrft::synthetic
