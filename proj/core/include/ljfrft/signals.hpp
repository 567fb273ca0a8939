#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ljfrft/jfrft.hpp"

namespace ljfrft {

/// N x (M*T) time-vertex signal split column-wise into M blocks of length T.
class TimeVertexSignal {
 public:
  TimeVertexSignal() = default;
  TimeVertexSignal(CplxMatrix data, Eigen::Index block_len);

  const CplxMatrix& data() const { return data_; }
  Eigen::Index n() const { return data_.rows(); }
  Eigen::Index t() const { return t_; }
  Eigen::Index m() const { return t_ == 0 ? 0 : data_.cols() / t_; }

  /// Columns [i*T, (i+1)*T).
  CplxMatrix block(Eigen::Index i) const;

 private:
  CplxMatrix data_;
  Eigen::Index t_ = 0;
};

/// Support of a K-L bandlimited signal: the first K rows and L columns of
/// the transformed N x T block.
struct BandSpec {
  Eigen::Index k_band = 1;
  Eigen::Index l_band = 1;
};

using SpectralIndex = std::pair<Eigen::Index, Eigen::Index>;  // (row, col)

struct NoiseSpec {
  double sigma = 0.2;
  std::vector<SpectralIndex> support;
  std::uint64_t seed = 0;
};

namespace signals {

void validate(const BandSpec& band, Eigen::Index n, Eigen::Index t);

/// "High-frequency" noise support: every spectral entry (r, c) with
/// r >= K - overlap or c >= L - overlap. The noise band therefore shares its
/// first `overlap` rows and columns with the trailing edge of the signal band;
/// overlap 0 is the exact complement of the band. Requires
/// 0 <= overlap <= min(K, L). Entries are listed in column-major order.
std::vector<SpectralIndex> highfreq_support(Eigen::Index n, Eigen::Index t, const BandSpec& band,
                                            Eigen::Index overlap);

/// M blocks, each with F_G^a X_i (F^b)^T supported on the K x L band with
/// i.i.d. standard normal (real) coefficients.
TimeVertexSignal gen_bandlimited(const JointTransform& jt, const BandSpec& band, Eigen::Index m,
                                 std::uint64_t seed);

/// i.i.d. N(0, sigma^2) coefficients on spec.support, mapped back to the
/// vertex domain with the inverse joint transform.
TimeVertexSignal gen_highfreq_noise(const JointTransform& jt, const NoiseSpec& spec,
                                    Eigen::Index m);

/// Real i.i.d. N(0, sigma^2) noise added in the vertex domain.
TimeVertexSignal add_white_noise(const TimeVertexSignal& x, double sigma, std::uint64_t seed);

TimeVertexSignal add(const TimeVertexSignal& a, const TimeVertexSignal& b);

/// vec() of every block, column stacking.
std::vector<CplxVector> blockify(const TimeVertexSignal& x);
TimeVertexSignal unblockify(const std::vector<CplxVector>& blocks, Eigen::Index n,
                            Eigen::Index t);

struct CsvLoadOptions {
  Eigen::Index n_expected = 0;     // 0: any
  Eigen::Index cols_expected = 0;  // 0: any
  Eigen::Index block_len = 0;      // 0: single block
  bool zscore = false;             // per-vertex normalization
};

/// Numeric CSV, one row per vertex. Cells are real ("1.5") or complex
/// ("1.5-0.25j"). Throws Error(ParseError) naming the offending line.
TimeVertexSignal load_timeseries_csv(const std::string& path, const CsvLoadOptions& opts);

/// Writes values in shortest round-trip form.
void write_timeseries_csv(const std::string& path, const TimeVertexSignal& x);

}  // namespace signals
}  // namespace ljfrft
