#include "ljfrft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "ljfrft/error.hpp"
#include "ljfrft/synthetic.hpp"

namespace ljfrft {

std::vector<double> GridRange::values() const {
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(std::max(count, 0L)));
  for (long i = 0; i < count; ++i) {
    // Round to 1e-12 so that e.g. -2 + 255*0.01 prints as 0.55.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

void GridSpec::validate() const {
  for (const GridRange* r : {&alpha, &beta}) {
    if (!(r->step > 0.0) || !(r->lo <= r->hi) || !std::isfinite(r->lo) || !std::isfinite(r->hi)) {
      throw Error(ErrorCode::ConfigError, "grid ranges need step > 0 and lo <= hi");
    }
  }
}

std::size_t GridSpec::cell_count() const { return alpha.values().size() * beta.values().size(); }

std::string_view to_string(BenchMethod method) {
  switch (method) {
    case BenchMethod::JfrftSearch: return "JFRFT-search";
    case BenchMethod::JfrftLearn: return "JFRFT-learn";
    case BenchMethod::GfrftSearch: return "GFRFT-search";
    case BenchMethod::GfrftLearn: return "GFRFT-learn";
  }
  return "unknown";
}

BenchMethod parse_bench_method(std::string_view name) {
  for (auto m : {BenchMethod::JfrftSearch, BenchMethod::JfrftLearn, BenchMethod::GfrftSearch,
                 BenchMethod::GfrftLearn}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::ConfigError, "unknown bench method '" + std::string(name) + "'");
}

namespace bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

bool better(const CellRecord& a, const CellRecord& b) {
  if (a.snr != b.snr) return a.snr > b.snr;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.beta < b.beta;
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("LJFRFT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

BenchReport grid_search(const TimeVertexSignal& x_clean, const TimeVertexSignal& y_noisy,
                        const FracOpPtr& graph_op, const FracOpPtr& time_op,
                        const GridSpec& grid, FilterMode policy,
                        const std::optional<DiagonalFilter>& fixed_filter, int threads) {
  grid.validate();
  if (policy == FilterMode::Learnable) {
    throw Error(ErrorCode::ConfigError, "grid search filter policy must be fixed or wiener");
  }
  if (policy == FilterMode::Fixed && !fixed_filter) {
    throw Error(ErrorCode::ConfigError, "fixed policy needs a filter");
  }
  if (y_noisy.n() != graph_op->n || y_noisy.t() != time_op->n ||
      x_clean.data().cols() != y_noisy.data().cols() || x_clean.n() != y_noisy.n()) {
    throw Error(ErrorCode::ShapeMismatch, "signals do not match the operators");
  }

  const auto start = Clock::now();
  std::optional<WienerStats> stats;
  if (policy == FilterMode::Wiener) {
    stats = filtering::empirical_stats(signals::blockify(x_clean), signals::blockify(y_noisy));
  }

  const auto alphas = grid.alpha.values();
  const auto betas = grid.beta.values();
  BenchReport rep;
  rep.method = betas.size() == 1 && betas.front() == 0.0 ? BenchMethod::GfrftSearch
                                                         : BenchMethod::JfrftSearch;
  rep.n = graph_op->n;
  rep.t = time_op->n;
  rep.cells.resize(alphas.size() * betas.size());

  auto eval = [&](std::size_t idx) {
    CellRecord& cell = rep.cells[idx];
    cell.alpha = alphas[idx / betas.size()];
    cell.beta = betas[idx % betas.size()];
    const auto t0 = Clock::now();
    try {
      const JointTransform jt(graph_op, time_op, cell.alpha, cell.beta);
      const DiagonalFilter h =
          policy == FilterMode::Wiener ? filtering::wiener_solve(jt, *stats) : *fixed_filter;
      cell.snr = filtering::snr_db(x_clean, filtering::apply_filter_chain(jt, h, y_noisy));
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    cell.wall_time = seconds_since(t0);
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), rep.cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < rep.cells.size(); ++i) eval(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rep.cells.size(); i += workers) eval(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  bool found = false;
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    if (!rep.cells[i].error.empty()) continue;
    if (!found || better(rep.cells[i], rep.cells[rep.best])) {
      rep.best = i;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::EmptyReport,
                "every grid cell failed; first error: " + rep.cells.front().error);
  }
  rep.snr = rep.cells[rep.best].snr;
  rep.total_time = seconds_since(start);
  return rep;
}

std::vector<BenchReport> runtime_bench(
    const std::vector<std::pair<Eigen::Index, Eigen::Index>>& sizes,
    const std::vector<BenchMethod>& methods, const RuntimeBenchConfig& cfg) {
  if (cfg.repeats < 1 || cfg.epochs < 1) {
    throw Error(ErrorCode::ConfigError, "runtime bench needs repeats >= 1 and epochs >= 1");
  }
  std::vector<BenchReport> out;
  for (const auto& [n, t] : sizes) {
    synthetic::SyntheticSpec spec;
    spec.n = n;
    spec.t = t;
    spec.m = 1;
    spec.band = BandSpec{std::max<Eigen::Index>(1, (2 * n) / 3), std::max<Eigen::Index>(1, (2 * t) / 3)};
    spec.sigma = cfg.sigma;
    spec.seed = cfg.seed;
    const auto prob = synthetic::make_problem(spec);
    const auto lowpass = filtering::fixed_lowpass(n, t, spec.band.k_band, spec.band.l_band);

    for (const BenchMethod method : methods) {
      const bool graph_only =
          method == BenchMethod::GfrftSearch || method == BenchMethod::GfrftLearn;
      std::vector<double> totals;
      std::vector<double> per_epoch;
      BenchReport last;
      for (int r = 0; r < cfg.repeats; ++r) {
        if (method == BenchMethod::JfrftSearch || method == BenchMethod::GfrftSearch) {
          GridSpec grid{GridRange{cfg.grid_lo, cfg.grid_hi, cfg.grid_step},
                        graph_only ? GridRange{0.0, 0.0, 1.0}
                                   : GridRange{cfg.grid_lo, cfg.grid_hi, cfg.grid_step}};
          last = grid_search(prob.clean, prob.noisy, prob.graph_op, prob.time_op, grid,
                             FilterMode::Wiener, std::nullopt, 1);
          totals.push_back(last.total_time);
        } else {
          TrainConfig tc = TrainConfig::denoise_defaults();
          tc.epochs = cfg.epochs;
          tc.train_beta = !graph_only;
          if (graph_only) tc.init_orders.second = 0.0;
          const auto tr = learn::train_denoiser(prob.clean, prob.noisy, prob.graph_op,
                                                prob.time_op, FilterMode::Learnable, tc);
          last = BenchReport{};
          last.cells.push_back(CellRecord{tr.learned_orders.first, tr.learned_orders.second,
                                          tr.snr_out, tr.wall_time, {}});
          last.snr = tr.snr_out;
          last.epochs = tr.epochs_run;
          totals.push_back(tr.wall_time);
          per_epoch.push_back(tr.per_epoch_time);
        }
      }
      last.method = method;
      last.n = n;
      last.t = t;
      last.total_time = median(totals);
      last.per_epoch_time = per_epoch.empty() ? 0.0 : median(per_epoch);
      out.push_back(std::move(last));
    }
  }
  return out;
}

}  // namespace bench
}  // namespace ljfrft
