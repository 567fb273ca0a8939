#include "ljfrft/signals.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "ljfrft/error.hpp"
#include "ljfrft/random.hpp"

namespace ljfrft {

TimeVertexSignal::TimeVertexSignal(CplxMatrix data, Eigen::Index block_len)
    : data_(std::move(data)), t_(block_len) {
  if (t_ <= 0 || data_.cols() % t_ != 0) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(data_.cols()) +
                                              " columns do not split into blocks of " +
                                              std::to_string(t_));
  }
  numkit::require_finite(data_, "time-vertex signal");
}

CplxMatrix TimeVertexSignal::block(Eigen::Index i) const {
  if (i < 0 || i >= m()) {
    throw Error(ErrorCode::InvalidArgument, "block index " + std::to_string(i) + " out of range");
  }
  return data_.middleCols(i * t_, t_);
}

namespace signals {

void validate(const BandSpec& band, Eigen::Index n, Eigen::Index t) {
  if (band.k_band < 1 || band.k_band > n || band.l_band < 1 || band.l_band > t) {
    throw Error(ErrorCode::InvalidArgument,
                "band (" + std::to_string(band.k_band) + "," + std::to_string(band.l_band) +
                    ") outside 1..N x 1..T for N=" + std::to_string(n) +
                    ", T=" + std::to_string(t));
  }
}

std::vector<SpectralIndex> highfreq_support(Eigen::Index n, Eigen::Index t, const BandSpec& band,
                                            Eigen::Index overlap) {
  validate(band, n, t);
  if (overlap < 0 || overlap > std::min(band.k_band, band.l_band)) {
    throw Error(ErrorCode::InvalidArgument, "overlap must be within 0..min(K, L)");
  }
  Eigen::MatrixXi mask = Eigen::MatrixXi::Ones(n, t);
  mask.topLeftCorner(band.k_band - overlap, band.l_band - overlap).setZero();
  std::vector<SpectralIndex> support;
  for (Eigen::Index c = 0; c < t; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (mask(r, c) != 0) support.emplace_back(r, c);
    }
  }
  return support;
}

TimeVertexSignal gen_bandlimited(const JointTransform& jt, const BandSpec& band, Eigen::Index m,
                                 std::uint64_t seed) {
  validate(band, jt.n(), jt.t());
  const JointTransform inv = jt.inverse();
  Rng rng(seed);
  CplxMatrix data(jt.n(), m * jt.t());
  for (Eigen::Index i = 0; i < m; ++i) {
    CplxMatrix spec = CplxMatrix::Zero(jt.n(), jt.t());
    for (Eigen::Index c = 0; c < band.l_band; ++c) {
      for (Eigen::Index r = 0; r < band.k_band; ++r) spec(r, c) = rng.normal();
    }
    data.middleCols(i * jt.t(), jt.t()) = jfrft::apply_joint(inv, spec);
  }
  return TimeVertexSignal(std::move(data), jt.t());
}

TimeVertexSignal gen_highfreq_noise(const JointTransform& jt, const NoiseSpec& spec,
                                    Eigen::Index m) {
  if (!(spec.sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be >= 0");
  for (const auto& [r, c] : spec.support) {
    if (r < 0 || r >= jt.n() || c < 0 || c >= jt.t()) {
      throw Error(ErrorCode::InvalidArgument, "noise support index outside N x T");
    }
  }
  const JointTransform inv = jt.inverse();
  Rng rng(spec.seed);
  CplxMatrix data(jt.n(), m * jt.t());
  for (Eigen::Index i = 0; i < m; ++i) {
    CplxMatrix coeffs = CplxMatrix::Zero(jt.n(), jt.t());
    for (const auto& [r, c] : spec.support) coeffs(r, c) = spec.sigma * rng.normal();
    data.middleCols(i * jt.t(), jt.t()) = jfrft::apply_joint(inv, coeffs);
  }
  return TimeVertexSignal(std::move(data), jt.t());
}

TimeVertexSignal add_white_noise(const TimeVertexSignal& x, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  CplxMatrix data = x.data();
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    for (Eigen::Index r = 0; r < data.rows(); ++r) data(r, c) += sigma * rng.normal();
  }
  return TimeVertexSignal(std::move(data), x.t());
}

TimeVertexSignal add(const TimeVertexSignal& a, const TimeVertexSignal& b) {
  if (a.data().rows() != b.data().rows() || a.data().cols() != b.data().cols() ||
      a.t() != b.t()) {
    throw Error(ErrorCode::ShapeMismatch, "cannot add signals of different shapes");
  }
  return TimeVertexSignal(a.data() + b.data(), a.t());
}

std::vector<CplxVector> blockify(const TimeVertexSignal& x) {
  std::vector<CplxVector> out;
  out.reserve(static_cast<std::size_t>(x.m()));
  for (Eigen::Index i = 0; i < x.m(); ++i) out.push_back(jfrft::vec(x.block(i)));
  return out;
}

TimeVertexSignal unblockify(const std::vector<CplxVector>& blocks, Eigen::Index n,
                            Eigen::Index t) {
  CplxMatrix data(n, static_cast<Eigen::Index>(blocks.size()) * t);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    data.middleCols(static_cast<Eigen::Index>(i) * t, t) = jfrft::unvec(blocks[i], n, t);
  }
  return TimeVertexSignal(std::move(data), t);
}

TimeVertexSignal load_timeseries_csv(const std::string& path, const CsvLoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::vector<std::vector<cplx>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    std::vector<cplx> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::parse_complex(cells[c]);
      if (!v || !std::isfinite(v->real()) || !std::isfinite(v->imag())) {
        throw Error(ErrorCode::ParseError, path + ": line " + std::to_string(lineno) +
                                               ", column " + std::to_string(c + 1) +
                                               ": not a finite number: '" + cells[c] + "'");
      }
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, path + ": line " + std::to_string(lineno) + " (row " +
                                             std::to_string(rows.size()) + ") has " +
                                             std::to_string(row.size()) + " columns, expected " +
                                             std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, path + ": no data rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto cols = static_cast<Eigen::Index>(rows.front().size());
  if (opts.n_expected > 0 && n != opts.n_expected) {
    throw Error(ErrorCode::ParseError, path + ": " + std::to_string(n) + " rows, expected " +
                                           std::to_string(opts.n_expected));
  }
  if (opts.cols_expected > 0 && cols != opts.cols_expected) {
    throw Error(ErrorCode::ParseError, path + ": " + std::to_string(cols) +
                                           " columns, expected " +
                                           std::to_string(opts.cols_expected));
  }
  const Eigen::Index t = opts.block_len > 0 ? opts.block_len : cols;
  if (cols % t != 0) {
    throw Error(ErrorCode::ParseError, path + ": " + std::to_string(cols) +
                                           " columns are not a multiple of block length " +
                                           std::to_string(t));
  }

  CplxMatrix data(n, cols);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      data(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  if (opts.zscore) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const cplx mean = data.row(r).mean();
      data.row(r).array() -= mean;
      const double sd = std::sqrt(data.row(r).squaredNorm() / static_cast<double>(cols));
      if (sd > 0.0) data.row(r) /= sd;
    }
  }
  return TimeVertexSignal(std::move(data), t);
}

void write_timeseries_csv(const std::string& path, const TimeVertexSignal& x) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  const CplxMatrix& d = x.data();
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      if (c > 0) out << ',';
      out << detail::format_complex(d(r, c));
    }
    out << '\n';
  }
}

}  // namespace signals
}  // namespace ljfrft
