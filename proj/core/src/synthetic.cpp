#include "ljfrft/synthetic.hpp"

#include <memory>
#include <string>

#include "ljfrft/error.hpp"
#include "ljfrft/fracops.hpp"
#include "ljfrft/random.hpp"

namespace ljfrft::synthetic {

namespace {

constexpr int kGraphAttempts = 32;

// Graphs whose GFT has no usable logarithm are redrawn.
bool redrawable(ErrorCode code) {
  return code == ErrorCode::BranchCutEigenvalue || code == ErrorCode::NearDefective ||
         code == ErrorCode::ZeroEigenvalue || code == ErrorCode::IsolatedVertex;
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
  return seed + 7919ULL * static_cast<std::uint64_t>(attempt);
}

}  // namespace

std::vector<std::vector<double>> random_coords(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    p = {x, y};
  }
  return pts;
}

FracOpPtr graph_operator(const graphs::Graph& g, graphs::ShiftKind kind) {
  const auto gft = graphs::gft_factorize(graphs::shift_operator(g, kind));
  return std::make_shared<const FractionalOperator>(fracops::make_graph_fracop(gft));
}

SyntheticProblem make_problem(const SyntheticSpec& spec) {
  signals::validate(spec.band, spec.n, spec.t);
  if (spec.m < 1) throw Error(ErrorCode::InvalidArgument, "need at least one block");

  SyntheticProblem p;
  p.spec = spec;
  std::string last_error;
  for (int attempt = 0; attempt < kGraphAttempts && !p.graph_op; ++attempt) {
    const std::uint64_t gseed = attempt_seed(spec.seed, attempt);
    try {
      auto coords = random_coords(spec.n, gseed);
      auto g = graphs::knn_graph(coords, spec.knn, true);
      p.graph_op = graph_operator(g, spec.shift);
      p.graph_seed = gseed;
      p.coords = std::move(coords);
      p.graph = std::move(g);
    } catch (const Error& e) {
      if (!redrawable(e.code())) throw;
      last_error = e.what();
    }
  }
  if (!p.graph_op) {
    throw Error(ErrorCode::NonConvergence, "no usable random graph: " + last_error);
  }
  p.time_op = std::make_shared<const FractionalOperator>(fracops::make_time_fracop(spec.t));

  const JointTransform truth(p.graph_op, p.time_op, spec.true_orders.first,
                             spec.true_orders.second);
  p.clean = signals::gen_bandlimited(truth, spec.band, spec.m, spec.seed ^ 0x5157ULL);
  p.noise = NoiseSpec{spec.sigma, signals::highfreq_support(spec.n, spec.t, spec.band, spec.overlap),
                      spec.seed ^ 0xA11CEULL};
  p.noise_signal = signals::gen_highfreq_noise(truth, p.noise, spec.m);
  p.noisy = signals::add(p.clean, p.noise_signal);
  return p;
}

graphs::Graph random_directed_graph(Eigen::Index n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "graph needs at least two vertices");
  Rng rng(seed);
  RealMatrix a(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = r == c ? 0.0 : rng.uniform();
  }
  return graphs::make_graph(a.cast<cplx>(), true);
}

TransformInstance make_transform_problem(const TransformSpec& spec) {
  if (spec.t < 2) throw Error(ErrorCode::InvalidArgument, "need t >= 2");
  TransformInstance inst;
  inst.spec = spec;
  std::string last_error;
  for (int attempt = 0; attempt < kGraphAttempts && !inst.problem.graph_op; ++attempt) {
    const std::uint64_t gseed = attempt_seed(spec.seed, attempt);
    try {
      auto g = random_directed_graph(spec.n, gseed);
      inst.problem.graph_op = graph_operator(g, graphs::ShiftKind::Adjacency);
      inst.graph = std::move(g);
      inst.graph_seed = gseed;
    } catch (const Error& e) {
      if (!redrawable(e.code())) throw;
      last_error = e.what();
    }
  }
  if (!inst.problem.graph_op) {
    throw Error(ErrorCode::NonConvergence, "no usable random graph: " + last_error);
  }
  inst.problem.time_op =
      std::make_shared<const FractionalOperator>(fracops::make_time_fracop(spec.t));

  Rng rng(spec.seed ^ 0x7A11ULL);
  inst.problem.x = CplxMatrix(spec.n, spec.t);
  for (Eigen::Index c = 0; c < spec.t; ++c) {
    for (Eigen::Index r = 0; r < spec.n; ++r) inst.problem.x(r, c) = rng.uniform();
  }
  const JointTransform truth(inst.problem.graph_op, inst.problem.time_op, spec.true_orders.first,
                             spec.true_orders.second);
  inst.problem.target = jfrft::apply_joint(truth, inst.problem.x);
  return inst;
}

}  // namespace ljfrft::synthetic
