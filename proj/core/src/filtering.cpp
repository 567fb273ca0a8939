#include "ljfrft/filtering.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "ljfrft/error.hpp"

namespace ljfrft {

std::string_view to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::Fixed: return "fixed";
    case FilterMode::Learnable: return "learnable";
    case FilterMode::Wiener: return "wiener";
  }
  return "unknown";
}

FilterMode parse_filter_mode(std::string_view name) {
  if (name == "fixed") return FilterMode::Fixed;
  if (name == "learnable" || name == "learn") return FilterMode::Learnable;
  if (name == "wiener" || name == "opt") return FilterMode::Wiener;
  throw Error(ErrorCode::ConfigError, "unknown filter mode '" + std::string(name) + "'");
}

CorrelationModel CorrelationModel::uncorrelated(const CplxMatrix& rxx, const CplxMatrix& rnn,
                                                Eigen::Index n, Eigen::Index t) {
  const Eigen::Index nt = n * t;
  return CorrelationModel{rxx,
                          rnn,
                          CplxMatrix::Zero(nt, nt),
                          CplxMatrix::Zero(nt, nt),
                          CplxMatrix::Identity(t, t),
                          CplxMatrix::Identity(n, n)};
}

namespace {

void require_psd(const CplxMatrix& m, const char* what) {
  if (!numkit::is_hermitian(m, 1e-8)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CplxMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().size() > 0 &&
      es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not positive semidefinite");
  }
}

}  // namespace

void CorrelationModel::validate() const {
  const Eigen::Index nt = g_t.rows() * g_g.rows();
  auto square_nt = [&](const CplxMatrix& m) { return m.rows() == nt && m.cols() == nt; };
  if (g_t.rows() != g_t.cols() || g_g.rows() != g_g.cols() || !square_nt(rxx) ||
      !square_nt(rnn) || !square_nt(rxn) || !square_nt(rnx)) {
    throw Error(ErrorCode::ShapeMismatch, "correlation model dimensions disagree");
  }
  require_psd(rxx, "E{xx^H}");
  require_psd(rnn, "E{nn^H}");
  if ((rnx - rxn.adjoint()).norm() > 1e-10 * std::max(1.0, rxn.norm())) {
    throw Error(ErrorCode::InvalidArgument, "E{nx^H} must equal E{xn^H}^H");
  }
}

namespace filtering {

DiagonalFilter fixed_lowpass(Eigen::Index n, Eigen::Index t, Eigen::Index k_band,
                             Eigen::Index l_band) {
  signals::validate(BandSpec{k_band, l_band}, n, t);
  DiagonalFilter h{CplxVector::Zero(n * t), FilterMode::Fixed};
  for (Eigen::Index c = 0; c < l_band; ++c) {
    for (Eigen::Index r = 0; r < k_band; ++r) h.coeffs(c * n + r) = 1.0;
  }
  return h;
}

DiagonalFilter identity_filter(Eigen::Index size, FilterMode mode) {
  return DiagonalFilter{CplxVector::Ones(size), mode};
}

WienerStats analytic_stats(const CorrelationModel& corr) {
  corr.validate();
  const CplxMatrix a = numkit::kron(corr.g_t.transpose(), corr.g_g);
  WienerStats s;
  s.rxy = corr.rxx * a.adjoint() + corr.rxn;
  s.ryy = a * corr.rxx * a.adjoint() + a * corr.rxn + corr.rnx * a.adjoint() + corr.rnn;
  return s;
}

WienerStats empirical_stats(const std::vector<CplxVector>& x_blocks,
                            const std::vector<CplxVector>& y_blocks) {
  if (x_blocks.empty() || x_blocks.size() != y_blocks.size()) {
    throw Error(ErrorCode::ShapeMismatch, "need matching, nonempty lists of x and y blocks");
  }
  const Eigen::Index nt = x_blocks.front().size();
  WienerStats s{CplxMatrix::Zero(nt, nt), CplxMatrix::Zero(nt, nt)};
  for (std::size_t i = 0; i < x_blocks.size(); ++i) {
    if (x_blocks[i].size() != nt || y_blocks[i].size() != nt) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(i) + " has wrong length");
    }
    s.ryy.noalias() += y_blocks[i] * y_blocks[i].adjoint();
    s.rxy.noalias() += x_blocks[i] * y_blocks[i].adjoint();
  }
  const double inv_m = 1.0 / static_cast<double>(x_blocks.size());
  s.ryy *= inv_m;
  s.rxy *= inv_m;
  return s;
}

namespace {

// Left-multiplies every column of m (length N*T) by kron(f, g), i.e. maps each
// reshaped N x T column X to g X f^T, without forming the Kronecker product.
CplxMatrix apply_kron_left(const CplxMatrix& g, const CplxMatrix& f, const CplxMatrix& m) {
  const Eigen::Index n = g.rows();
  const Eigen::Index t = f.rows();
  CplxMatrix out(m.rows(), m.cols());
  Eigen::Map<CplxMatrix>(out.data(), n, t * m.cols()).noalias() =
      g * Eigen::Map<const CplxMatrix>(m.data(), n, t * m.cols());
  const CplxMatrix ft = f.transpose();
  CplxMatrix tmp(n, t);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Map<CplxMatrix> col(out.col(c).data(), n, t);
    tmp.noalias() = col * ft;
    col = tmp;
  }
  return out;
}

}  // namespace

WienerSystem normal_system(const JointTransform& jt, const WienerStats& stats) {
  const Eigen::Index nt = jt.size();
  if (stats.ryy.rows() != nt || stats.ryy.cols() != nt || stats.rxy.rows() != nt ||
      stats.rxy.cols() != nt) {
    throw Error(ErrorCode::ShapeMismatch, "Wiener statistics do not match the transform size");
  }
  const CplxMatrix g = fracops::frac_power(*jt.graph_op, jt.alpha);
  const CplxMatrix f = fracops::frac_power(*jt.time_op, jt.beta);
  const CplxMatrix gi = fracops::frac_power(*jt.graph_op, -jt.alpha);
  const CplxMatrix fi = fracops::frac_power(*jt.time_op, -jt.beta);
  const CplxMatrix inv = numkit::kron(fi, gi);
  const CplxMatrix gram = numkit::kron(fi.adjoint() * fi, gi.adjoint() * gi);
  // fwd * R * fwd^H computed as two structured left products.
  const CplxMatrix half = apply_kron_left(g, f, stats.ryy);
  const CplxMatrix rzz = apply_kron_left(g, f, half.adjoint()).adjoint();
  const CplxMatrix rxz = apply_kron_left(g, f, stats.rxy.adjoint()).adjoint();

  WienerSystem sys;
  sys.lhs = gram.cwiseProduct(rzz.transpose());
  sys.rhs = (inv.conjugate().cwiseProduct(rxz)).colwise().sum().transpose();
  return sys;
}

DiagonalFilter wiener_solve(const JointTransform& jt, const WienerStats& stats) {
  const WienerSystem sys = normal_system(jt, stats);
  // The normal matrix is a Hadamard product of two PSD matrices, so Cholesky
  // applies; a tiny pivot relative to the matrix norm counts as singular.
  const CplxMatrix herm = 0.5 * (sys.lhs + sys.lhs.adjoint());
  const Eigen::LLT<CplxMatrix> llt(herm);
  const double floor = numkit::kSingularPivot * herm.norm();
  bool singular = llt.info() != Eigen::Success || !(herm.norm() > 0.0);
  if (!singular) {
    const CplxMatrix& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      const double piv = std::norm(l(i, i));
      if (!(piv > floor)) {
        singular = true;
        break;
      }
    }
  }
  if (singular) {
    throw Error(ErrorCode::SingularNormalMatrix,
                "Wiener normal matrix is singular (degenerate correlation model)");
  }
  return DiagonalFilter{llt.solve(sys.rhs), FilterMode::Wiener};
}

DiagonalFilter wiener_solve(const JointTransform& jt, const CorrelationModel& corr) {
  return wiener_solve(jt, analytic_stats(corr));
}

CplxMatrix apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                              const CplxMatrix& y_block) {
  if (h.coeffs.size() != jt.size()) {
    throw Error(ErrorCode::ShapeMismatch, "filter length " + std::to_string(h.coeffs.size()) +
                                              " != NT = " + std::to_string(jt.size()));
  }
  const CplxMatrix z = jfrft::apply_joint(jt, y_block);
  const CplxMatrix hz =
      z.cwiseProduct(Eigen::Map<const CplxMatrix>(h.coeffs.data(), jt.n(), jt.t()));
  return jfrft::apply_joint(jt.inverse(), hz);
}

CplxVector apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                              const CplxVector& y) {
  return jfrft::vec(apply_filter_chain(jt, h, jfrft::unvec(y, jt.n(), jt.t())));
}

TimeVertexSignal apply_filter_chain(const JointTransform& jt, const DiagonalFilter& h,
                                    const TimeVertexSignal& y) {
  if (y.n() != jt.n() || y.t() != jt.t()) {
    throw Error(ErrorCode::ShapeMismatch, "signal blocks do not match the transform");
  }
  CplxMatrix out(y.data().rows(), y.data().cols());
  for (Eigen::Index i = 0; i < y.m(); ++i) {
    out.middleCols(i * y.t(), y.t()) = apply_filter_chain(jt, h, y.block(i));
  }
  return TimeVertexSignal(std::move(out), y.t());
}

double snr_db(const CplxMatrix& x_true, const CplxMatrix& x_est) {
  if (x_true.rows() != x_est.rows() || x_true.cols() != x_est.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "SNR inputs differ in shape");
  }
  const double sig = x_true.squaredNorm();
  if (sig == 0.0) throw Error(ErrorCode::ZeroReference, "reference signal is all zero");
  const double err = (x_true - x_est).norm();
  if (err < 1e-300) return kInfiniteSnr;
  return 10.0 * std::log10(sig / (err * err));
}

double snr_db(const TimeVertexSignal& x_true, const TimeVertexSignal& x_est) {
  return snr_db(x_true.data(), x_est.data());
}

}  // namespace filtering
}  // namespace ljfrft
