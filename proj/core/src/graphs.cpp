#include "ljfrft/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "csv_util.hpp"
#include "ljfrft/error.hpp"

namespace ljfrft::graphs {

namespace {

constexpr double kSymTol = 1e-12;

RealVector degrees(const Graph& g) {
  return g.adjacency.real().rowwise().sum();
}

void require_no_isolated(const RealVector& d, ShiftKind kind) {
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) {
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) +
                                                 " has zero degree; " +
                                                 std::string(to_string(kind)) +
                                                 " needs positive degrees");
    }
  }
}

// Rotates the first component with magnitude above 1e-8 onto the positive real axis.
void fix_phase(CplxMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, k));
      if (mag > 1e-8) {
        v.col(k) *= std::conj(v(i, k)) / mag;
        v(i, k) = cplx(mag, 0.0);
        break;
      }
    }
  }
}

}  // namespace

std::string_view to_string(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::Adjacency: return "adjacency";
    case ShiftKind::Laplacian: return "laplacian";
    case ShiftKind::RowNormAdjacency: return "row-norm-adjacency";
    case ShiftKind::SymNormAdjacency: return "sym-norm-adjacency";
    case ShiftKind::NormLaplacian: return "norm-laplacian";
  }
  return "unknown";
}

ShiftKind parse_shift_kind(std::string_view name) {
  for (auto kind : {ShiftKind::Adjacency, ShiftKind::Laplacian, ShiftKind::RowNormAdjacency,
                    ShiftKind::SymNormAdjacency, ShiftKind::NormLaplacian}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::ConfigError, "unknown shift kind '" + std::string(name) + "'");
}

Graph make_graph(const CplxMatrix& adjacency, bool directed) {
  if (adjacency.rows() != adjacency.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "adjacency must be square");
  }
  numkit::require_finite(adjacency, "adjacency");
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    if (adjacency(i, i) != cplx(0.0, 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "adjacency diagonal must be zero (vertex " + std::to_string(i) + ")");
    }
  }
  if (!directed && (adjacency - adjacency.transpose()).norm() >
                       kSymTol * std::max(1.0, adjacency.norm())) {
    throw Error(ErrorCode::InvalidArgument, "undirected graph needs a symmetric adjacency");
  }
  return Graph{adjacency.rows(), adjacency, directed};
}

Graph knn_graph(const std::vector<std::vector<double>>& coords, int k, bool symmetrize) {
  const auto n = static_cast<Eigen::Index>(coords.size());
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "k must satisfy 1 <= k < number of points, got k=" + std::to_string(k));
  }
  const std::size_t dim = coords.front().size();
  for (const auto& p : coords) {
    if (p.size() != dim || dim == 0) {
      throw Error(ErrorCode::ShapeMismatch, "all points need the same nonzero dimension");
    }
  }

  auto dist2 = [&](Eigen::Index a, Eigen::Index b) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = coords[a][d] - coords[b][d];
      s += diff * diff;
    }
    return s;
  };

  CplxMatrix adj = CplxMatrix::Zero(n, n);
  std::vector<Eigen::Index> others;
  for (Eigen::Index i = 0; i < n; ++i) {
    others.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      if (dist2(i, j) == 0.0) {
        throw Error(ErrorCode::DuplicatePoints, "points " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " coincide");
      }
      others.push_back(j);
    }
    std::stable_sort(others.begin(), others.end(), [&](Eigen::Index a, Eigen::Index b) {
      return dist2(i, a) < dist2(i, b);
    });
    for (int r = 0; r < k; ++r) adj(i, others[r]) = 1.0;
  }
  if (symmetrize) {
    const CplxMatrix t = adj.transpose();
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        adj(i, j) = std::max(adj(i, j).real(), t(i, j).real());
      }
    }
  }
  return Graph{n, adj, !symmetrize};
}

CplxMatrix shift_operator(const Graph& g, ShiftKind kind) {
  const CplxMatrix& a = g.adjacency;
  const RealVector d = degrees(g);
  switch (kind) {
    case ShiftKind::Adjacency:
      return a;
    case ShiftKind::Laplacian: {
      CplxMatrix l = -a;
      l.diagonal() += d.cast<cplx>();
      return l;
    }
    case ShiftKind::RowNormAdjacency: {
      require_no_isolated(d, kind);
      return d.cwiseInverse().cast<cplx>().asDiagonal() * a;
    }
    case ShiftKind::SymNormAdjacency: {
      require_no_isolated(d, kind);
      const CplxVector s = d.cwiseSqrt().cwiseInverse().cast<cplx>();
      return s.asDiagonal() * a * s.asDiagonal();
    }
    case ShiftKind::NormLaplacian: {
      require_no_isolated(d, kind);
      const CplxVector s = d.cwiseSqrt().cwiseInverse().cast<cplx>();
      CplxMatrix l = -a;
      l.diagonal() += d.cast<cplx>();
      return s.asDiagonal() * l * s.asDiagonal();
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown shift kind");
}

GftFactorization gft_factorize(const CplxMatrix& z) {
  const numkit::EigResult eig = numkit::eig_decompose(z);
  const Eigen::Index n = eig.values.size();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& lam = eig.values;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return lam(a).real() > lam(b).real();
  });
  // Real parts that differ only by rounding (conjugate pairs, repeated
  // eigenvalues) are ordered by descending imaginary part.
  const double tie = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const cplx x = lam(order[i]);
      const cplx y = lam(order[i + 1]);
      if (std::abs(x.real() - y.real()) <= tie && y.imag() > x.imag() + tie) {
        std::swap(order[i], order[i + 1]);
        swapped = true;
      }
    }
  }

  GftFactorization gft;
  gft.shift = z;
  gft.eigenvalues.resize(n);
  gft.v.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    gft.eigenvalues(k) = lam(order[static_cast<std::size_t>(k)]);
    gft.v.col(k) = eig.vectors.col(order[static_cast<std::size_t>(k)]);
  }
  fix_phase(gft.v);

  const bool real_v = gft.v.imag().cwiseAbs().maxCoeff() <= 1e-14;
  if (eig.unitary_vectors && real_v && n > 0) {
    gft.v = gft.v.real().cast<cplx>();
    if (gft.v.real().determinant() < 0.0) gft.v.col(n - 1) *= -1.0;
  }

  if (eig.unitary_vectors) {
    gft.f_g = gft.v.adjoint();
  } else {
    gft.f_g = numkit::solve_linear(gft.v, CplxMatrix::Identity(n, n));
  }
  return gft;
}

Graph load_edge_list_csv(const std::string& path, Eigen::Index n, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open edge list '" + path + "'");
  CplxMatrix adj = CplxMatrix::Zero(n, n);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(line);
    const auto src = cells.size() == 3 ? detail::parse_real(cells[0]) : std::nullopt;
    const auto dst = cells.size() == 3 ? detail::parse_real(cells[1]) : std::nullopt;
    const auto w = cells.size() == 3 ? detail::parse_real(cells[2]) : std::nullopt;
    if (!src || !dst || !w) {
      if (lineno == 1) continue;  // header
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(lineno) + ": expected src,dst,weight");
    }
    const auto i = static_cast<Eigen::Index>(*src);
    const auto j = static_cast<Eigen::Index>(*dst);
    if (static_cast<double>(i) != *src || static_cast<double>(j) != *dst || i < 0 || j < 0 ||
        i >= n || j >= n || !std::isfinite(*w)) {
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(lineno) + ": vertex index out of range");
    }
    if (i == j) {
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": self loop");
    }
    adj(i, j) = *w;
    if (!directed) adj(j, i) = *w;
  }
  return make_graph(adj, directed);
}

std::vector<std::vector<double>> load_coords_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open coordinates '" + path + "'");
  std::vector<std::vector<double>> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    std::vector<double> p;
    bool ok = true;
    for (const auto& cell : detail::split_csv_line(line)) {
      auto v = detail::parse_real(cell);
      if (!v || !std::isfinite(*v)) {
        ok = false;
        break;
      }
      p.push_back(*v);
    }
    if (!ok) {
      if (lineno == 1 && pts.empty()) continue;  // header
      throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": bad coordinate");
    }
    if (!pts.empty() && p.size() != pts.front().size()) {
      throw Error(ErrorCode::ParseError,
                  path + ":" + std::to_string(lineno) + ": dimension differs from first row");
    }
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw Error(ErrorCode::ParseError, path + ": no coordinates");
  return pts;
}

}  // namespace ljfrft::graphs
