#include "ljfrft/learn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "ljfrft/error.hpp"
#include "ljfrft/random.hpp"

namespace ljfrft {

TrainConfig TrainConfig::transform_defaults() {
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.epochs = 1200;
  cfg.init_orders = {0.0, 0.0};
  return cfg;
}

TrainConfig TrainConfig::denoise_defaults() { return TrainConfig{}; }

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::ConfigError, "learning rate must be > 0");
  if (epochs < 1) throw Error(ErrorCode::ConfigError, "epochs must be >= 1");
  if (!(adam.beta1 > 0.0 && adam.beta1 < 1.0 && adam.beta2 > 0.0 && adam.beta2 < 1.0)) {
    throw Error(ErrorCode::ConfigError, "Adam betas must lie in (0, 1)");
  }
  if (!(adam.epsilon > 0.0)) throw Error(ErrorCode::ConfigError, "Adam epsilon must be > 0");
  if (restarts < 1) throw Error(ErrorCode::ConfigError, "restarts must be >= 1");
  if (!(order_init_range.first <= order_init_range.second)) {
    throw Error(ErrorCode::ConfigError, "order init range is empty");
  }
  if (lr_decay && (lr_decay->period < 1 || !(lr_decay->factor > 0.0))) {
    throw Error(ErrorCode::ConfigError, "lr decay needs period >= 1 and factor > 0");
  }
  if (threads < 0) throw Error(ErrorCode::ConfigError, "threads must be >= 0");
}

double TrainConfig::lr_at(int epoch) const {
  if (!lr_decay) return learning_rate;
  return learning_rate * std::pow(lr_decay->factor, epoch / lr_decay->period);
}

namespace learn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

cplx inner(const CplxMatrix& p, const CplxMatrix& q) {
  return p.conjugate().cwiseProduct(q).sum();
}

// Per-epoch operators for one order pair.
struct ChainOperators {
  CplxMatrix g, g_inv, f, f_inv;

  ChainOperators(const JointTransform& jt)
      : g(fracops::frac_power(*jt.graph_op, jt.alpha)),
        g_inv(fracops::frac_power(*jt.graph_op, -jt.alpha)),
        f(fracops::frac_power(*jt.time_op, jt.beta)),
        f_inv(fracops::frac_power(*jt.time_op, -jt.beta)) {}
};

// Accumulates loss and gradients of sum_i ||x_hat_i - x_i||^2 (unscaled).
void accumulate_block(const ChainOperators& ops, const CplxMatrix& ta, const CplxMatrix& tb_t,
                      const CplxMatrix& h, const CplxMatrix& y, const CplxMatrix& x,
                      Gradients& acc, CplxMatrix& gh) {
  const CplxMatrix z = ops.g * y * ops.f.transpose();
  const CplxMatrix xhat = ops.g_inv * z.cwiseProduct(h) * ops.f_inv.transpose();
  const CplxMatrix r = xhat - x;
  const CplxMatrix w = ops.g_inv.adjoint() * r * ops.f_inv.conjugate();

  acc.loss += r.squaredNorm();
  const CplxMatrix ta_z = ta * z;
  const CplxMatrix z_tb = z * tb_t;
  acc.d_alpha += (-inner(r, ta * xhat) + inner(w, h.cwiseProduct(ta_z))).real();
  acc.d_beta += (-inner(r, xhat * tb_t) + inner(w, h.cwiseProduct(z_tb))).real();
  gh += w.conjugate().cwiseProduct(z);
}

Gradients chain_gradients(const JointTransform& jt, const DiagonalFilter& h,
                          const std::vector<CplxMatrix>& y_blocks,
                          const std::vector<CplxMatrix>& x_blocks) {
  const Eigen::Index n = jt.n();
  const Eigen::Index t = jt.t();
  if (h.coeffs.size() != n * t) {
    throw Error(ErrorCode::ShapeMismatch, "filter length does not match NT");
  }
  const ChainOperators ops(jt);
  const CplxMatrix& ta = jt.graph_op->generator;
  const CplxMatrix tb_t = jt.time_op->generator.transpose();
  const CplxMatrix hm = Eigen::Map<const CplxMatrix>(h.coeffs.data(), n, t);

  Gradients g;
  CplxMatrix gh = CplxMatrix::Zero(n, t);
  for (std::size_t i = 0; i < y_blocks.size(); ++i) {
    accumulate_block(ops, ta, tb_t, hm, y_blocks[i], x_blocks[i], g, gh);
  }
  const double scale = 1.0 / static_cast<double>(n * t * static_cast<Eigen::Index>(y_blocks.size()));
  g.loss *= scale;
  g.d_alpha *= 2.0 * scale;
  g.d_beta *= 2.0 * scale;
  const CplxVector ghv = jfrft::vec(gh);
  g.d_h_re = 2.0 * scale * ghv.real();
  g.d_h_im = -2.0 * scale * ghv.imag();
  return g;
}

std::vector<CplxMatrix> split_blocks(const TimeVertexSignal& s) {
  std::vector<CplxMatrix> out;
  out.reserve(static_cast<std::size_t>(s.m()));
  for (Eigen::Index i = 0; i < s.m(); ++i) out.push_back(s.block(i));
  return out;
}

struct SingleRun {
  OrderPair orders;
  DiagonalFilter filter;
  std::vector<double> loss_curve;
  double snr = 0.0;
};

SingleRun run_denoiser(const std::vector<CplxMatrix>& x_blocks,
                       const std::vector<CplxMatrix>& y_blocks, const TimeVertexSignal& x_clean,
                       const TimeVertexSignal& y_noisy, const FracOpPtr& graph_op,
                       const FracOpPtr& time_op, FilterMode mode, const TrainConfig& cfg,
                       OrderPair init, const DiagonalFilter& init_filter) {
  const Eigen::Index nt = graph_op->n * time_op->n;
  const bool learn_filter = mode == FilterMode::Learnable;
  // Layout: alpha, beta, then real parts and imaginary parts of h.
  std::vector<double> params(2 + (learn_filter ? 2 * static_cast<std::size_t>(nt) : 0));
  params[0] = init.first;
  params[1] = init.second;
  if (learn_filter) {
    for (Eigen::Index k = 0; k < nt; ++k) {
      params[2 + k] = init_filter.coeffs(k).real();
      params[2 + nt + k] = init_filter.coeffs(k).imag();
    }
  }
  DiagonalFilter h = init_filter;
  std::vector<double> grads(params.size(), 0.0);
  AdamState state;

  SingleRun run;
  run.loss_curve.reserve(static_cast<std::size_t>(cfg.epochs));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (learn_filter) {
      for (Eigen::Index k = 0; k < nt; ++k) h.coeffs(k) = cplx(params[2 + k], params[2 + nt + k]);
    }
    const JointTransform jt(graph_op, time_op, params[0], params[1]);
    const Gradients g = chain_gradients(jt, h, y_blocks, x_blocks);
    run.loss_curve.push_back(g.loss);
    if (epoch + 1 == cfg.epochs) break;

    grads[0] = cfg.train_alpha ? g.d_alpha : 0.0;
    grads[1] = cfg.train_beta ? g.d_beta : 0.0;
    if (learn_filter) {
      for (Eigen::Index k = 0; k < nt; ++k) {
        grads[2 + k] = g.d_h_re(k);
        grads[2 + nt + k] = g.d_h_im(k);
      }
    }
    adam_step(state, params, grads, cfg.lr_at(epoch), cfg.adam);
  }

  run.orders = {params[0], params[1]};
  run.filter = h;
  const JointTransform jt(graph_op, time_op, params[0], params[1]);
  run.snr = filtering::snr_db(x_clean, filtering::apply_filter_chain(jt, h, y_noisy));
  return run;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

double mse_loss(const CplxMatrix& y_hat, const CplxMatrix& y) {
  if (y_hat.rows() != y.rows() || y_hat.cols() != y.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "MSE inputs differ in shape");
  }
  if (y.size() == 0) return 0.0;
  return (y - y_hat).squaredNorm() / static_cast<double>(y.size());
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               double lr, const AdamConfig& cfg) {
  if (params.size() != grads.size()) {
    throw Error(ErrorCode::ShapeMismatch, "Adam parameter and gradient lengths differ");
  }
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.step = 0;
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

Gradients order_gradients(const JointTransform& jt, const DiagonalFilter& h, const CplxVector& y,
                          const CplxVector& x) {
  return chain_gradients(jt, h, {jfrft::unvec(y, jt.n(), jt.t())},
                         {jfrft::unvec(x, jt.n(), jt.t())});
}

Gradients denoise_gradients(const JointTransform& jt, const DiagonalFilter& h,
                            const TimeVertexSignal& y, const TimeVertexSignal& x) {
  if (y.n() != jt.n() || y.t() != jt.t() || x.data().cols() != y.data().cols() ||
      x.n() != y.n()) {
    throw Error(ErrorCode::ShapeMismatch, "signals do not match the transform");
  }
  return chain_gradients(jt, h, split_blocks(y), split_blocks(x));
}

CplxMatrix transform_network(const TransformProblem& p, const std::vector<OrderPair>& layers) {
  const Eigen::Index n = p.graph_op->n;
  const Eigen::Index t = p.time_op->n;
  CplxMatrix g = CplxMatrix::Identity(n, n);
  CplxMatrix f_t = CplxMatrix::Identity(t, t);
  for (const auto& [a, b] : layers) {
    g = g * fracops::frac_power(*p.graph_op, a);
    f_t = f_t * fracops::frac_power(*p.time_op, b).transpose();
  }
  return g * p.x * f_t;
}

std::vector<OrderPair> default_layer_init(int layers, const OrderPair& target) {
  const bool upper = target.first >= 1.0 || target.second >= 1.0;
  switch (layers) {
    case 1: return upper ? std::vector<OrderPair>{{1.0, 1.0}} : std::vector<OrderPair>{{0.0, 0.0}};
    case 2: return {{0.0, 0.0}, {1.0, 1.0}};
    case 3:
      if (upper) return {{0.0, 0.0}, {0.75, 0.75}, {1.25, 1.25}};
      return {{0.0, 0.0}, {0.25, 0.25}, {0.5, 0.5}};
    default: return std::vector<OrderPair>(static_cast<std::size_t>(std::max(layers, 0)), {0.0, 0.0});
  }
}

TrainReport train_transform(const TransformProblem& p, const std::vector<OrderPair>& init_layers,
                            const TrainConfig& cfg) {
  cfg.validate();
  if (init_layers.empty()) throw Error(ErrorCode::ConfigError, "need at least one layer");
  if (p.x.rows() != p.graph_op->n || p.x.cols() != p.time_op->n ||
      p.target.rows() != p.x.rows() || p.target.cols() != p.x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "transform-learning inputs do not match operators");
  }
  const auto start = Clock::now();
  const auto layers = init_layers.size();
  std::vector<double> params(2 * layers);
  for (std::size_t l = 0; l < layers; ++l) {
    params[2 * l] = init_layers[l].first;
    params[2 * l + 1] = init_layers[l].second;
  }
  std::vector<double> grads(params.size());
  AdamState state;
  const CplxMatrix& ta = p.graph_op->generator;
  const CplxMatrix tb_t = p.time_op->generator.transpose();
  const double scale = 2.0 / static_cast<double>(p.x.size());

  TrainReport rep;
  rep.loss_curve.reserve(static_cast<std::size_t>(cfg.epochs));
  std::vector<OrderPair> current(layers);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t l = 0; l < layers; ++l) current[l] = {params[2 * l], params[2 * l + 1]};
    const CplxMatrix yhat = transform_network(p, current);
    const CplxMatrix r = yhat - p.target;
    rep.loss_curve.push_back(r.squaredNorm() / static_cast<double>(r.size()));
    if (epoch + 1 == cfg.epochs) break;

    // All layers share one generator per axis, so every layer sees the same
    // derivative: T_G Y_hat for alpha and Y_hat T^T for beta.
    const double d_alpha = scale * inner(r, ta * yhat).real();
    const double d_beta = scale * inner(r, yhat * tb_t).real();
    for (std::size_t l = 0; l < layers; ++l) {
      grads[2 * l] = cfg.train_alpha ? d_alpha : 0.0;
      grads[2 * l + 1] = cfg.train_beta ? d_beta : 0.0;
    }
    adam_step(state, params, grads, cfg.lr_at(epoch), cfg.adam);
  }

  rep.layer_orders = current;
  rep.learned_orders = {0.0, 0.0};
  for (const auto& [a, b] : current) {
    rep.learned_orders.first += a;
    rep.learned_orders.second += b;
  }
  rep.epochs_run = cfg.epochs;
  rep.final_loss = rep.loss_curve.back();
  rep.wall_time = seconds_since(start);
  rep.per_epoch_time = rep.wall_time / cfg.epochs;
  return rep;
}

TrainReport train_denoiser(const TimeVertexSignal& x_clean, const TimeVertexSignal& y_noisy,
                           const FracOpPtr& graph_op, const FracOpPtr& time_op,
                           FilterMode filter_mode, const TrainConfig& cfg,
                           const std::optional<DiagonalFilter>& fixed_filter) {
  cfg.validate();
  if (filter_mode == FilterMode::Wiener) {
    throw Error(ErrorCode::ConfigError, "train_denoiser supports fixed and learnable filters");
  }
  if (x_clean.data().rows() != y_noisy.data().rows() ||
      x_clean.data().cols() != y_noisy.data().cols() || x_clean.t() != y_noisy.t() ||
      y_noisy.n() != graph_op->n || y_noisy.t() != time_op->n) {
    throw Error(ErrorCode::ShapeMismatch, "clean/noisy signals do not match the operators");
  }
  const Eigen::Index nt = graph_op->n * time_op->n;
  DiagonalFilter init_filter;
  if (filter_mode == FilterMode::Fixed) {
    if (!fixed_filter) throw Error(ErrorCode::ConfigError, "fixed mode needs a filter");
    if (fixed_filter->coeffs.size() != nt) {
      throw Error(ErrorCode::ShapeMismatch, "fixed filter length does not match NT");
    }
    init_filter = *fixed_filter;
  } else {
    init_filter = filtering::identity_filter(nt, FilterMode::Learnable);
  }

  const auto start = Clock::now();
  const auto x_blocks = split_blocks(x_clean);
  const auto y_blocks = split_blocks(y_noisy);

  std::vector<OrderPair> inits(static_cast<std::size_t>(cfg.restarts), cfg.init_orders);
  if (cfg.restarts > 1) {
    Rng rng(cfg.seed);
    for (auto& init : inits) {
      init.first = rng.uniform(cfg.order_init_range.first, cfg.order_init_range.second);
      init.second = rng.uniform(cfg.order_init_range.first, cfg.order_init_range.second);
    }
  }

  std::vector<SingleRun> runs(inits.size());
  std::vector<std::string> failures(inits.size());
  auto work = [&](std::size_t i) {
    try {
      runs[i] = run_denoiser(x_blocks, y_blocks, x_clean, y_noisy, graph_op, time_op,
                             filter_mode, cfg, inits[i], init_filter);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(cfg.threads)),
                                             inits.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < inits.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < inits.size(); i += workers) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw Error(ErrorCode::NonConvergence, "training run failed: " + f);
  }

  TrainReport rep;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    rep.restarts.push_back(RestartRecord{inits[i], runs[i].orders, runs[i].loss_curve.back(),
                                         runs[i].snr});
    if (runs[i].snr > runs[best].snr) best = i;
  }
  const SingleRun& b = runs[best];
  rep.best_restart = static_cast<int>(best);
  rep.layer_orders = {b.orders};
  rep.learned_orders = b.orders;
  rep.learned_filter = b.filter;
  rep.loss_curve = b.loss_curve;
  rep.final_loss = b.loss_curve.back();
  rep.snr_out = b.snr;
  rep.epochs_run = cfg.epochs;
  rep.wall_time = seconds_since(start);
  rep.per_epoch_time = rep.wall_time / (static_cast<double>(cfg.epochs) * static_cast<double>(runs.size()));
  return rep;
}

}  // namespace learn
}  // namespace ljfrft
