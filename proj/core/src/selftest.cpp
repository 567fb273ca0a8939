#include "ljfrft/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ljfrft/error.hpp"
#include "ljfrft/filtering.hpp"
#include "ljfrft/jfrft.hpp"
#include "ljfrft/learn.hpp"
#include "ljfrft/random.hpp"
#include "ljfrft/synthetic.hpp"

namespace ljfrft::selftest {

namespace {

using numkit::rel_diff;

CplxMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CplxMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = cplx(rng.normal(), rng.normal());
  }
  return m;
}

// A usable graph operator of size n, drawn from seeded random kNN graphs.
FracOpPtr random_graph_op(Eigen::Index n, std::uint64_t seed) {
  synthetic::SyntheticSpec spec;
  spec.n = n;
  spec.t = 2;
  spec.m = 1;
  spec.band = BandSpec{1, 1};
  spec.knn = n > 2 ? 2 : 1;
  spec.seed = seed;
  return synthetic::make_problem(spec).graph_op;
}

struct Tracker {
  CheckResult r;
  Tracker(std::string name, double tol) {
    r.name = std::move(name);
    r.tolerance = tol;
  }
  void observe(double err) { r.worst = std::max(r.worst, std::isnan(err) ? 1e300 : err); }
  CheckResult finish() {
    r.passed = r.worst <= r.tolerance;
    std::ostringstream ss;
    ss << "worst " << r.worst << " (tol " << r.tolerance << ")";
    if (r.detail.empty()) r.detail = ss.str();
    return r;
  }
};

}  // namespace

std::vector<CheckResult> transform_suite(std::uint64_t seed, int trials) {
  Rng rng(seed);
  Tracker additivity("index additivity", 1e-8);
  Tracker reversibility("reversibility", 1e-8);
  Tracker identity("identity at (0,0)", 1e-8);
  Tracker ordinary("ordinary JFT at (1,1)", 1e-8);
  Tracker separable("separability", 1e-8);
  Tracker commute("axis commutativity", 1e-8);
  Tracker unitary("time-axis unitarity", 1e-8);
  Tracker vec_compat("vec compatibility", 1e-10);

  for (int i = 0; i < trials; ++i) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.uniform() * 6);  // 3..8
    const Eigen::Index t = 2 + static_cast<Eigen::Index>(rng.uniform() * 5);  // 2..6
    const FracOpPtr g = random_graph_op(n, seed * 1000 + static_cast<std::uint64_t>(i));
    const auto time = std::make_shared<const FractionalOperator>(fracops::make_time_fracop(t));
    const double a1 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
    const double a2 = rng.uniform(-2, 2), b2 = rng.uniform(-2, 2);
    const JointTransform j1(g, time, a1, b1);
    const JointTransform j2(g, time, a2, b2);
    const JointTransform j12(g, time, a1 + a2, b1 + b2);
    const CplxMatrix f1 = jfrft::assemble_joint(j1);
    const CplxMatrix f2 = jfrft::assemble_joint(j2);
    const CplxMatrix f12 = jfrft::assemble_joint(j12);
    const CplxMatrix eye = CplxMatrix::Identity(n * t, n * t);

    additivity.observe(rel_diff(f1 * f2, f12));
    reversibility.observe(rel_diff(jfrft::assemble_joint(j1.inverse()) * f1, eye));
    identity.observe(rel_diff(jfrft::assemble_joint(j1.with_orders(0, 0)), eye));
    ordinary.observe(rel_diff(jfrft::assemble_joint(j1.with_orders(1, 1)),
                              numkit::kron(fracops::dft_matrix(t), g->base)));

    // Each axis acts on its own.
    const CplxMatrix ga = fracops::frac_power(*g, a1);
    const CplxMatrix tb = fracops::frac_power(*time, b1);
    const CplxMatrix gpart = numkit::kron(CplxMatrix::Identity(t, t), ga);
    const CplxMatrix tpart = numkit::kron(tb, CplxMatrix::Identity(n, n));
    separable.observe(rel_diff(f1, gpart * tpart));
    commute.observe(rel_diff(gpart * tpart, tpart * gpart));
    unitary.observe(rel_diff(tb.adjoint() * tb, CplxMatrix::Identity(t, t)));

    const CplxMatrix x = random_matrix(rng, n, t);
    vec_compat.observe(rel_diff(jfrft::vec(jfrft::apply_joint(j1, x)), f1 * jfrft::vec(x)));
  }
  return {additivity.finish(), reversibility.finish(), identity.finish(), ordinary.finish(),
          separable.finish(),  commute.finish(),       unitary.finish(),  vec_compat.finish()};
}

std::vector<CheckResult> gradient_suite(std::uint64_t seed, int trials) {
  Rng rng(seed);
  Tracker order_check("order gradients vs central differences", 1e-5);
  Tracker filter_check("filter gradients vs central differences", 1e-5);
  constexpr double kStep = 1e-6;

  for (int i = 0; i < trials; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform() * 3);  // 2..4
    const Eigen::Index t = 2 + static_cast<Eigen::Index>(rng.uniform() * 2);  // 2..3
    const FracOpPtr g = random_graph_op(n, seed * 1000 + 500 + static_cast<std::uint64_t>(i));
    const auto time = std::make_shared<const FractionalOperator>(fracops::make_time_fracop(t));
    const double a = rng.uniform(-1.5, 1.5), b = rng.uniform(-1.5, 1.5);
    DiagonalFilter h{random_matrix(rng, n * t, 1).col(0), FilterMode::Learnable};
    const CplxVector y = random_matrix(rng, n * t, 1).col(0);
    const CplxVector x = random_matrix(rng, n * t, 1).col(0);

    const JointTransform jt(g, time, a, b);
    const Gradients grad = learn::order_gradients(jt, h, y, x);
    auto loss_at = [&](double aa, double bb, const DiagonalFilter& hh) {
      return learn::order_gradients(jt.with_orders(aa, bb), hh, y, x).loss;
    };
    auto rel = [](double analytic, double numeric) {
      return std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
    };
    const double fd_a = (loss_at(a + kStep, b, h) - loss_at(a - kStep, b, h)) / (2 * kStep);
    const double fd_b = (loss_at(a, b + kStep, h) - loss_at(a, b - kStep, h)) / (2 * kStep);
    order_check.observe(rel(grad.d_alpha, fd_a));
    order_check.observe(rel(grad.d_beta, fd_b));

    for (Eigen::Index k = 0; k < h.coeffs.size(); ++k) {
      for (const cplx dir : {cplx(1, 0), cplx(0, 1)}) {
        DiagonalFilter hp = h, hm = h;
        hp.coeffs[k] += kStep * dir;
        hm.coeffs[k] -= kStep * dir;
        const double fd = (loss_at(a, b, hp) - loss_at(a, b, hm)) / (2 * kStep);
        const double an = dir.real() != 0 ? grad.d_h_re[k] : grad.d_h_im[k];
        filter_check.observe(rel(an, fd));
      }
    }
  }
  return {order_check.finish(), filter_check.finish()};
}

std::vector<CheckResult> wiener_suite(std::uint64_t seed, int trials) {
  Rng rng(seed);
  Tracker optimal("Wiener filter is a local MSE minimum", 1e-9);
  Tracker noiseless("noiseless Wiener filter is all-ones", 1e-8);

  for (int i = 0; i < trials; ++i) {
    synthetic::SyntheticSpec spec;
    spec.n = 4;
    spec.t = 3;
    spec.m = 8;
    spec.band = BandSpec{2, 2};
    spec.overlap = 1;
    spec.true_orders = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    spec.seed = seed * 1000 + 900 + static_cast<std::uint64_t>(i);
    const auto prob = synthetic::make_problem(spec);
    const JointTransform jt(prob.graph_op, prob.time_op, spec.true_orders.first,
                            spec.true_orders.second);
    const auto xb = signals::blockify(prob.clean);
    const auto yb = signals::blockify(prob.noisy);
    const WienerStats stats = filtering::empirical_stats(xb, yb);
    const DiagonalFilter h = filtering::wiener_solve(jt, stats);

    auto mse = [&](const DiagonalFilter& hh) {
      const auto est = filtering::apply_filter_chain(jt, hh, prob.noisy);
      return (est.data() - prob.clean.data()).squaredNorm() /
             static_cast<double>(prob.clean.data().size());
    };
    const double base = mse(h);
    for (int p = 0; p < 10; ++p) {
      CplxVector delta = random_matrix(rng, h.coeffs.size(), 1).col(0);
      delta *= 1e-3 / delta.norm();
      DiagonalFilter hp = h;
      hp.coeffs += delta;
      optimal.observe(std::max(0.0, base - mse(hp)));
    }

    // Full-rank signal correlation with no noise: the chain must pass everything.
    const CplxMatrix a_mat = random_matrix(rng, jt.size(), jt.size());
    const CplxMatrix rxx = a_mat * a_mat.adjoint() + CplxMatrix::Identity(jt.size(), jt.size());
    const auto corr = CorrelationModel::uncorrelated(
        rxx, CplxMatrix::Zero(jt.size(), jt.size()), jt.n(), jt.t());
    const DiagonalFilter ones = filtering::wiener_solve(jt, corr);
    noiseless.observe((ones.coeffs - CplxVector::Ones(jt.size())).cwiseAbs().maxCoeff());
  }
  return {optimal.finish(), noiseless.finish()};
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (auto suite : {transform_suite(seed, 20), gradient_suite(seed, 10), wiener_suite(seed, 10)}) {
    out.insert(out.end(), suite.begin(), suite.end());
  }
  return out;
}

}  // namespace ljfrft::selftest
