#include <memory>

#include <benchmark/benchmark.h>

#include "ljfrft/filtering.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/synthetic.hpp"

using namespace ljfrft;

namespace {

synthetic::SyntheticProblem problem(Eigen::Index n, Eigen::Index t) {
  synthetic::SyntheticSpec spec;
  spec.n = n;
  spec.t = t;
  spec.m = 1;
  spec.band = {std::max<Eigen::Index>(1, 2 * n / 3), std::max<Eigen::Index>(1, 2 * t / 3)};
  return synthetic::make_problem(spec);
}

}  // namespace

static void BM_TimeFracop(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fracops::make_time_fracop(state.range(0)));
}
BENCHMARK(BM_TimeFracop)->Arg(6)->Arg(20)->Arg(64);

static void BM_ApplyJoint(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = problem(n, n);
  const JointTransform jt(p.graph_op, p.time_op, 0.55, 0.45);
  const CplxMatrix x = p.clean.block(0);
  for (auto _ : state) benchmark::DoNotOptimize(jfrft::apply_joint(jt, x));
}
BENCHMARK(BM_ApplyJoint)->Arg(6)->Arg(10)->Arg(20);

static void BM_AssembleJoint(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = problem(n, n);
  const JointTransform jt(p.graph_op, p.time_op, 0.55, 0.45);
  for (auto _ : state) benchmark::DoNotOptimize(jfrft::assemble_joint(jt));
}
BENCHMARK(BM_AssembleJoint)->Arg(6)->Arg(10)->Arg(15);

static void BM_OrderGradients(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = problem(n, n);
  const JointTransform jt(p.graph_op, p.time_op, 0.3, 0.2);
  const auto h = filtering::identity_filter(n * n);
  const auto y = signals::blockify(p.noisy).front();
  const auto x = signals::blockify(p.clean).front();
  for (auto _ : state) benchmark::DoNotOptimize(learn::order_gradients(jt, h, y, x));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_OrderGradients)->Arg(5)->Arg(10)->Arg(15)->Arg(20)->Complexity();

static void BM_WienerSolve(benchmark::State& state) {
  const auto n = state.range(0);
  const auto p = problem(n, n);
  const JointTransform jt(p.graph_op, p.time_op, 0.55, 0.45);
  const auto stats =
      filtering::empirical_stats(signals::blockify(p.clean), signals::blockify(p.noisy));
  for (auto _ : state) benchmark::DoNotOptimize(filtering::wiener_solve(jt, stats));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_WienerSolve)->Arg(5)->Arg(10)->Arg(15)->Complexity();

BENCHMARK_MAIN();
