#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ljfrft/filtering.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/signals.hpp"

namespace ljfrft {

struct GridRange {
  double lo = -2.0;
  double hi = 2.0;
  double step = 0.01;

  /// lo, lo+step, ..., up to hi (inclusive within 1e-9 * step).
  std::vector<double> values() const;
};

struct GridSpec {
  GridRange alpha;
  GridRange beta;

  void validate() const;
  std::size_t cell_count() const;
};

enum class BenchMethod { JfrftSearch, JfrftLearn, GfrftSearch, GfrftLearn };

std::string_view to_string(BenchMethod method);
BenchMethod parse_bench_method(std::string_view name);

struct CellRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double snr = 0.0;
  double wall_time = 0.0;
  std::string error;  // empty when the cell evaluated
};

struct BenchReport {
  BenchMethod method = BenchMethod::JfrftSearch;
  Eigen::Index n = 0;
  Eigen::Index t = 0;
  std::vector<CellRecord> cells;
  std::size_t best = 0;  // index into cells
  double total_time = 0.0;
  double per_epoch_time = 0.0;  // learn methods only
  int epochs = 0;               // learn methods only
  double snr = 0.0;             // best / final SNR

  const CellRecord& best_cell() const { return cells.at(best); }
};

namespace bench {

/// Evaluates every (alpha, beta) cell: builds the transform, picks the filter
/// (the given fixed filter, or an empirical Wiener filter from the clean and
/// noisy blocks) and scores the SNR of the filtered signal. Failed cells are
/// kept with their error text. The best cell is the highest SNR, ties going
/// to the smaller alpha and then the smaller beta. Throws Error(EmptyReport)
/// when no cell evaluates.
BenchReport grid_search(const TimeVertexSignal& x_clean, const TimeVertexSignal& y_noisy,
                        const FracOpPtr& graph_op, const FracOpPtr& time_op,
                        const GridSpec& grid, FilterMode policy,
                        const std::optional<DiagonalFilter>& fixed_filter = std::nullopt,
                        int threads = 1);

struct RuntimeBenchConfig {
  int epochs = 10000;
  double grid_step = 0.1;
  double grid_lo = -2.0;
  double grid_hi = 2.0;
  int repeats = 3;  // timings are medians over repeats
  double sigma = 0.2;
  std::uint64_t seed = 1;
};

/// Wall-clock comparison of search and learn methods on synthetic
/// problems of each (N, T). Runs serially.
std::vector<BenchReport> runtime_bench(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& sizes,
                                       const std::vector<BenchMethod>& methods,
                                       const RuntimeBenchConfig& cfg);

/// Worker count from LJFRFT_THREADS, falling back to hardware concurrency.
int default_threads();

}  // namespace bench
}  // namespace ljfrft
