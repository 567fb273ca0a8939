#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ljfrft/filtering.hpp"
#include "ljfrft/jfrft.hpp"
#include "ljfrft/signals.hpp"

namespace ljfrft {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
};

/// StepLR-style schedule: lr * factor^floor(epoch / period).
struct LrDecay {
  double factor = 1.0;
  int period = 0;
};


struct TrainConfig {
  double learning_rate = 5e-3;
  int epochs = 10000;
  AdamConfig adam;
  OrderPair init_orders{0.1, 0.1};
  int restarts = 1;
  /// With restarts > 1 every run draws (alpha, beta) uniformly from this interval.
  std::pair<double, double> order_init_range{-2.0, 2.0};
  std::uint64_t seed = 0;
  std::optional<LrDecay> lr_decay;
  bool train_alpha = true;
  bool train_beta = true;
  /// Worker threads for independent restarts (0: hardware concurrency).
  int threads = 1;

  /// Transform-learning protocol: lr 1e-3, 1200 epochs.
  static TrainConfig transform_defaults();
  /// Denoising protocol: lr 5e-3, 10000 epochs, init (0.1, 0.1).
  static TrainConfig denoise_defaults();

  void validate() const;
  double lr_at(int epoch) const;
};

struct RestartRecord {
  OrderPair init_orders;
  OrderPair learned_orders;
  double final_loss = 0.0;
  double snr_out = 0.0;
};

struct TrainReport {
  std::vector<OrderPair> layer_orders;  // one entry per layer
  OrderPair learned_orders;             // per-layer sums
  std::optional<DiagonalFilter> learned_filter;
  std::vector<double> loss_curve;  // loss evaluated at the start of each epoch
  double final_loss = 0.0;
  double snr_out = 0.0;
  double wall_time = 0.0;        // seconds
  double per_epoch_time = 0.0;   // seconds
  int epochs_run = 0;
  std::vector<RestartRecord> restarts;
  int best_restart = 0;
};

struct Gradients {
  double loss = 0.0;
  double d_alpha = 0.0;
  double d_beta = 0.0;
  RealVector d_h_re;
  RealVector d_h_im;
};

namespace learn {

/// (1/NT) ||y - y_hat||_F^2, normalized by the element count.
double mse_loss(const CplxMatrix& y_hat, const CplxMatrix& y);

/// One bias-corrected Adam update in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               double lr, const AdamConfig& cfg = {});

/// Closed-form gradients of L = (1/NT) ||x_hat - x||^2 with
/// x_hat = F_J^{-a,-b} diag(h) F_J^{a,b} y, for one vectorized block.
Gradients order_gradients(const JointTransform& jt, const DiagonalFilter& h, const CplxVector& y,
                          const CplxVector& x);

/// Same objective averaged over all blocks of a signal.
Gradients denoise_gradients(const JointTransform& jt, const DiagonalFilter& h,
                            const TimeVertexSignal& y, const TimeVertexSignal& x);

struct TransformProblem {
  CplxMatrix x;       // N x T input
  CplxMatrix target;  // F_G^a X (F^b)^T for the unknown orders
  FracOpPtr graph_op;
  FracOpPtr time_op;
};

/// Network output (prod_l F_G^{a_l}) X (prod_l (F^{b_l})^T).
CplxMatrix transform_network(const TransformProblem& p, const std::vector<OrderPair>& layers);

/// Default per-layer initial orders. For targets below order 1:
///   L=1 (0,0); L=2 (0,0),(1,1); L=3 (0,0),(0.25,0.25),(0.5,0.5).
/// When either target order is >= 1:
///   L=1 (1,1); L=2 (0,0),(1,1); L=3 (0,0),(0.75,0.75),(1.25,1.25).
/// Zeros beyond three layers.
std::vector<OrderPair> default_layer_init(int layers, const OrderPair& target = {0.0, 0.0});

/// Trains per-layer orders by Adam on the MSE between network output and target.
TrainReport train_transform(const TransformProblem& p, const std::vector<OrderPair>& init_layers,
                            const TrainConfig& cfg);

/// Trains (alpha, beta) and, for Learnable mode, the diagonal filter.
///
/// Fixed mode keeps `fixed_filter` constant. With cfg.restarts > 1 each run
/// starts from orders drawn uniformly in cfg.order_init_range and a pass-through
/// filter; the run with the highest output SNR is reported.
TrainReport train_denoiser(const TimeVertexSignal& x_clean, const TimeVertexSignal& y_noisy,
                           const FracOpPtr& graph_op, const FracOpPtr& time_op,
                           FilterMode filter_mode, const TrainConfig& cfg,
                           const std::optional<DiagonalFilter>& fixed_filter = std::nullopt);

}  // namespace learn
}  // namespace ljfrft
