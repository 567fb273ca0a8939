#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "ljfrft/error.hpp"
#include "ljfrft/filtering.hpp"
#include "ljfrft/synthetic.hpp"
#include "oracles.hpp"

using namespace ljfrft;

namespace {

// Random complex F_G keeps every eigenvalue off the log branch cut.
JointTransform make_jt(Eigen::Index n, Eigen::Index t, double a, double b, std::uint64_t seed = 5) {
  const CplxMatrix f_g = CplxMatrix::Identity(n, n) + 0.5 * oracle::random_matrix(n, n, seed);
  return JointTransform(std::make_shared<const FractionalOperator>(fracops::make_graph_fracop(f_g)),
                        std::make_shared<const FractionalOperator>(fracops::make_time_fracop(t)),
                        a, b);
}

CplxMatrix random_psd(Eigen::Index n, std::uint64_t seed) {
  const CplxMatrix a = oracle::random_matrix(n, n, seed);
  return a * a.adjoint() + 0.1 * CplxMatrix::Identity(n, n);
}

// Dense oracle for F_J and its inverse.
CplxMatrix dense_fj(const JointTransform& jt, double sign) {
  return oracle::kron(fracops::frac_power(*jt.time_op, sign * jt.beta),
                      fracops::frac_power(*jt.graph_op, sign * jt.alpha));
}

// E||x - S y||^2 for the estimator S = F_J^-1 diag(h) F_J, straight from the
// second-order statistics.
double expected_mse(const JointTransform& jt, const CplxVector& h, const CplxMatrix& rxx,
                    const CplxMatrix& ryy, const CplxMatrix& rxy) {
  const CplxMatrix s = dense_fj(jt, -1.0) * h.asDiagonal() * dense_fj(jt, 1.0);
  return (rxx.trace() - 2.0 * (s * rxy.adjoint()).trace() + (s * ryy * s.adjoint()).trace()).real();
}

}  // namespace

TEST(FixedLowpass, BandPattern) {
  const auto h = filtering::fixed_lowpass(6, 6, 4, 4);
  ASSERT_EQ(h.coeffs.size(), 36);
  EXPECT_EQ(h.mode, FilterMode::Fixed);
  const std::vector<double> col{1, 1, 1, 1, 0, 0};
  for (int c = 0; c < 6; ++c) {
    for (int r = 0; r < 6; ++r) {
      const double expected = c < 4 ? col[static_cast<std::size_t>(r)] : 0.0;
      EXPECT_EQ(h.coeffs[c * 6 + r], cplx(expected)) << c << "," << r;
    }
  }
  EXPECT_EQ(filtering::fixed_lowpass(3, 2, 3, 2).coeffs, CplxVector::Ones(6));
  EXPECT_THROW(filtering::fixed_lowpass(3, 2, 0, 2), Error);
}

TEST(FilterMode, Names) {
  EXPECT_EQ(filtering::identity_filter(4).coeffs, CplxVector::Ones(4));
  EXPECT_EQ(parse_filter_mode("fixed"), FilterMode::Fixed);
  EXPECT_EQ(parse_filter_mode(to_string(FilterMode::Learnable)), FilterMode::Learnable);
  EXPECT_EQ(parse_filter_mode("wiener"), FilterMode::Wiener);
  EXPECT_THROW(parse_filter_mode("nope"), Error);
}

TEST(FilterChain, IdentityZeroAndDenseOracle) {
  const auto jt = make_jt(3, 4, 0.7, -0.4);
  const CplxVector y = oracle::random_matrix(12, 1, 3).col(0);
  EXPECT_LT(oracle::rel(filtering::apply_filter_chain(jt, filtering::identity_filter(12), y), y),
            1e-10);
  DiagonalFilter zero{CplxVector::Zero(12), FilterMode::Fixed};
  EXPECT_EQ(filtering::apply_filter_chain(jt, zero, y).norm(), 0.0);

  DiagonalFilter h{oracle::random_matrix(12, 1, 4).col(0), FilterMode::Learnable};
  const CplxVector dense = dense_fj(jt, -1.0) * h.coeffs.asDiagonal() * dense_fj(jt, 1.0) * y;
  EXPECT_LT(oracle::rel(filtering::apply_filter_chain(jt, h, y), dense), 1e-10);

  const CplxMatrix yb = jfrft::unvec(y, 3, 4);
  EXPECT_LT(oracle::rel(filtering::apply_filter_chain(jt, h, yb), jfrft::unvec(dense, 3, 4)), 1e-10);
}

TEST(Wiener, NoiselessGivesAllOnes) {
  const auto jt = make_jt(2, 3, 0.3, 0.8);
  const auto corr = CorrelationModel::uncorrelated(random_psd(6, 7), CplxMatrix::Zero(6, 6), 2, 3);
  const auto h = filtering::wiener_solve(jt, corr);
  EXPECT_LT((h.coeffs - CplxVector::Ones(6)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_EQ(h.mode, FilterMode::Wiener);
}

TEST(Wiener, DisjointSupportsGiveIndicator) {
  const auto jt = make_jt(4, 3, 0.55, 0.45);
  const Eigen::Index nt = 12;
  const CplxMatrix winv = dense_fj(jt, -1.0);
  Eigen::VectorXd dx = Eigen::VectorXd::Zero(nt), dn = Eigen::VectorXd::Zero(nt);
  for (Eigen::Index c = 0; c < 3; ++c)
    for (Eigen::Index r = 0; r < 4; ++r) {
      const bool in_band = r < 2 && c < 2;
      (in_band ? dx : dn)[c * 4 + r] = in_band ? 1.0 : 0.09;
    }
  const CplxMatrix rxx = winv * dx.cast<cplx>().asDiagonal() * winv.adjoint();
  const CplxMatrix rnn = winv * dn.cast<cplx>().asDiagonal() * winv.adjoint();
  const auto h = filtering::wiener_solve(jt, CorrelationModel::uncorrelated(rxx, rnn, 4, 3));
  for (Eigen::Index k = 0; k < nt; ++k) {
    // Per-coefficient oracle |x_k|^2 / (|x_k|^2 + |n_k|^2).
    const double expected = dx[k] / (dx[k] + dn[k]);
    EXPECT_NEAR(std::abs(h.coeffs[k] - expected), 0.0, 1e-6) << k;
  }
}

TEST(Wiener, MatchesNumericalMinimizer) {
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const auto jt = make_jt(2, 2, 0.2 + 0.3 * static_cast<double>(trial), -0.6, 11 + trial);
    const CplxMatrix rxx = random_psd(4, 20 + trial);
    const CplxMatrix rnn = 0.3 * random_psd(4, 30 + trial);
    const auto corr = CorrelationModel::uncorrelated(rxx, rnn, 2, 2);
    const auto h = filtering::wiener_solve(jt, corr);

    const CplxMatrix ryy = rxx + rnn;
    auto f = [&](const std::vector<double>& p) {
      CplxVector hv(4);
      for (int k = 0; k < 4; ++k) hv[k] = cplx(p[2 * k], p[2 * k + 1]);
      return expected_mse(jt, hv, rxx, ryy, rxx);
    };
    const auto best = oracle::minimize_quadratic(f, std::vector<double>(8, 0.0), 3000);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(h.coeffs[k].real(), best[2 * k], 1e-6);
      EXPECT_NEAR(h.coeffs[k].imag(), best[2 * k + 1], 1e-6);
    }
  }
}

TEST(Wiener, OptimalUnderPerturbation) {
  const auto jt = make_jt(3, 2, 0.4, 0.9);
  const CplxMatrix rxx = random_psd(6, 40);
  const CplxMatrix rnn = 0.5 * random_psd(6, 41);
  const auto h = filtering::wiener_solve(jt, CorrelationModel::uncorrelated(rxx, rnn, 3, 2));
  const double base = expected_mse(jt, h.coeffs, rxx, rxx + rnn, rxx);
  for (std::uint64_t i = 0; i < 10; ++i) {
    CplxVector d = oracle::random_matrix(6, 1, 50 + i).col(0);
    d *= 1e-3 / d.norm();
    EXPECT_GE(expected_mse(jt, h.coeffs + d, rxx, rxx + rnn, rxx), base - 1e-9);
  }
}

TEST(Wiener, AnalyticStatsWithTransforms) {
  const Eigen::Index n = 2, t = 2;
  auto corr = CorrelationModel::uncorrelated(random_psd(4, 60), 0.2 * random_psd(4, 61), n, t);
  corr.g_g = oracle::random_matrix(n, n, 62);
  corr.g_t = oracle::random_matrix(t, t, 63);
  corr.rxn = 0.01 * oracle::random_matrix(4, 4, 64);
  corr.rnx = corr.rxn.adjoint();
  const auto stats = filtering::analytic_stats(corr);
  const CplxMatrix a = oracle::kron(corr.g_t.transpose(), corr.g_g);
  const CplxMatrix ryy = a * corr.rxx * a.adjoint() + a * corr.rxn + corr.rnx * a.adjoint() + corr.rnn;
  EXPECT_LT(oracle::rel(stats.ryy, ryy), 1e-12);
  EXPECT_LT(oracle::rel(stats.rxy, corr.rxx * a.adjoint() + corr.rxn), 1e-12);
  EXPECT_EQ(stats.ryy.rows(), 4);
}

TEST(Wiener, EmpiricalStatsAreBlockMeans) {
  std::vector<CplxVector> xs, ys;
  CplxMatrix ryy = CplxMatrix::Zero(3, 3), rxy = CplxMatrix::Zero(3, 3);
  for (std::uint64_t i = 0; i < 5; ++i) {
    xs.push_back(oracle::random_matrix(3, 1, 70 + i).col(0));
    ys.push_back(oracle::random_matrix(3, 1, 80 + i).col(0));
    ryy += ys.back() * ys.back().adjoint() / 5.0;
    rxy += xs.back() * ys.back().adjoint() / 5.0;
  }
  const auto stats = filtering::empirical_stats(xs, ys);
  EXPECT_LT(oracle::rel(stats.ryy, ryy), 1e-14);
  EXPECT_LT(oracle::rel(stats.rxy, rxy), 1e-14);
}

TEST(Wiener, InvalidCorrelationRejected) {
  CplxMatrix neg = -CplxMatrix::Identity(4, 4);
  EXPECT_THROW(CorrelationModel::uncorrelated(neg, CplxMatrix::Zero(4, 4), 2, 2).validate(), Error);
  auto corr = CorrelationModel::uncorrelated(random_psd(4, 1), random_psd(4, 2), 2, 2);
  corr.rxn = oracle::random_matrix(4, 4, 3);
  EXPECT_THROW(corr.validate(), Error);
}

TEST(Wiener, SeparableSyntheticIsExact) {
  synthetic::SyntheticSpec spec;
  const auto p = synthetic::make_problem(spec);
  const JointTransform jt(p.graph_op, p.time_op, 0.55, 0.45);
  const auto stats = filtering::empirical_stats(signals::blockify(p.clean), signals::blockify(p.noisy));
  const auto h = filtering::wiener_solve(jt, stats);
  const auto est = filtering::apply_filter_chain(jt, h, p.noisy);
  EXPECT_LE((est.data() - p.clean.data()).squaredNorm(), 1e-12 * p.clean.data().squaredNorm());
}

TEST(SnrDb, Definition) {
  const CplxMatrix x = oracle::random_matrix(3, 4, 90);
  EXPECT_EQ(filtering::snr_db(x, x), filtering::kInfiniteSnr);
  CplxMatrix err = oracle::random_matrix(3, 4, 91);
  err *= 0.1 * x.norm() / err.norm();
  EXPECT_NEAR(filtering::snr_db(x, x + err), 20.0, 1e-10);
  EXPECT_NEAR(filtering::snr_db(3.0 * x, 3.0 * (x + err)), filtering::snr_db(x, x + err), 1e-10);
  try {
    filtering::snr_db(CplxMatrix::Zero(2, 2), x.topLeftCorner(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroReference);
  }
  EXPECT_THROW(filtering::snr_db(x, x.leftCols(2)), Error);
}

TEST(SnrDb, DecreasesWithNoiseScale) {
  const TimeVertexSignal x(oracle::random_matrix(4, 8, 92), 4);
  double prev = filtering::kInfiniteSnr;
  for (double s : {0.1, 0.3, 0.9}) {
    const double snr = filtering::snr_db(x, signals::add_white_noise(x, s, 17));
    EXPECT_LT(snr, prev);
    prev = snr;
  }
}
