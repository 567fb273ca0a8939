#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "ljfrft/jfrft.hpp"
#include "ljfrft/signals.hpp"

namespace ljfrft {

enum class FilterMode { Fixed, Learnable, Wiener };

std::string_view to_string(FilterMode mode);
FilterMode parse_filter_mode(std::string_view name);

/// Diagonal of H_J in the joint spectral domain, indexed like vec(): entry
/// t*N + i belongs to vertex frequency i and time frequency t.
struct DiagonalFilter {
  CplxVector coeffs;
  FilterMode mode = FilterMode::Learnable;
};

/// Second-order model of y = (G_T^T (x) G_G) x + n.
struct CorrelationModel {
  CplxMatrix rxx;  // E{x x^H}
  CplxMatrix rnn;  // E{n n^H}
  CplxMatrix rxn;  // E{x n^H}
  CplxMatrix rnx;  // E{n x^H}
  CplxMatrix g_t;  // T x T
  CplxMatrix g_g;  // N x N

  /// Uncorrelated signal and noise with G_T = G_G = I.
  static CorrelationModel uncorrelated(const CplxMatrix& rxx, const CplxMatrix& rnn,
                                       Eigen::Index n, Eigen::Index t);
  void validate() const;
};

/// The statistics a diagonal Wiener filter needs: E{y y^H} and E{x y^H}.
struct WienerStats {
  CplxMatrix ryy;
  CplxMatrix rxy;
};

/// Normal equations T h = q of the diagonal Wiener problem.
struct WienerSystem {
  CplxMatrix lhs;  // T = E{S^H S}
  CplxVector rhs;  // q = E{S^H x}
};

namespace filtering {

/// 1 on the first k_band vertex frequencies x first l_band time frequencies.
DiagonalFilter fixed_lowpass(Eigen::Index n, Eigen::Index t, Eigen::Index k_band,
                             Eigen::Index l_band);

DiagonalFilter identity_filter(Eigen::Index size, FilterMode mode = FilterMode::Learnable);

/// Exact propagation of the correlation model through the observation model.
WienerStats analytic_stats(const CorrelationModel& corr);

/// Block means of x_i y_i^H and y_i y_i^H over paired samples.
WienerStats empirical_stats(const std::vector<CplxVector>& x_blocks,
                            const std::vector<CplxVector>& y_blocks);

/// With z = F_J y and w_k the k-th column of F_J^{-1}, s_k = w_k z_k, so
/// T = (W^H W) o E{z z^H}^T and q_k = w_k^H E{x z^H} e_k.
WienerSystem normal_system(const JointTransform& jt, const WienerStats& stats);

/// Solves T h = q. Throws Error(SingularNormalMatrix).
DiagonalFilter wiener_solve(const JointTransform& jt, const WienerStats& stats);
DiagonalFilter wiener_solve(const JointTransform& jt, const CorrelationModel& corr);

/// F_J^{-a,-b} diag(h) F_J^{a,b} y for one vectorized N x T block.
CplxVector apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                              const CplxVector& y);
/// Same, for an N x T matrix.
CplxMatrix apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                              const CplxMatrix& y_block);
/// Blockwise over a whole signal.
TimeVertexSignal apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                                    const TimeVertexSignal& y);

/// Returned by snr_db when the estimate is exact.
inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

/// 10 log10(||X||_F^2 / ||X - X_hat||_F^2). Throws Error(ZeroReference).
double snr_db(const CplxMatrix& x_true, const CplxMatrix& x_est);
double snr_db(const TimeVertexSignal& x_true, const TimeVertexSignal& x_est);

}  // namespace filtering
}  // namespace ljfrft
