#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "ljfrft/error.hpp"
#include "ljfrft/graphs.hpp"
#include "ljfrft/synthetic.hpp"
#include "oracles.hpp"

using namespace ljfrft;
using graphs::ShiftKind;

namespace {

graphs::Graph path2() {
  CplxMatrix a = CplxMatrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  return graphs::make_graph(a, false);
}

graphs::Graph complete3() {
  CplxMatrix a = CplxMatrix::Ones(3, 3) - CplxMatrix::Identity(3, 3);
  return graphs::make_graph(a, false);
}

CplxMatrix cycle4() {
  CplxMatrix c = CplxMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) c(i, (i + 1) % 4) = c((i + 1) % 4, i) = 1.0;
  return c;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(MakeGraph, ValidatesDiagonalAndSymmetry) {
  EXPECT_THROW(graphs::make_graph(CplxMatrix::Identity(2, 2), true), Error);
  CplxMatrix a = CplxMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(graphs::make_graph(a, false), Error);
  EXPECT_NO_THROW(graphs::make_graph(a, true));
}

TEST(KnnGraph, CollinearPointsK1) {
  const std::vector<std::vector<double>> pts{{0.0}, {1.0}, {3.0}};
  const auto directed = graphs::knn_graph(pts, 1, false);
  EXPECT_TRUE(directed.directed);
  EXPECT_EQ(directed.adjacency(0, 1), cplx(1.0));
  EXPECT_EQ(directed.adjacency(1, 0), cplx(1.0));
  EXPECT_EQ(directed.adjacency(2, 1), cplx(1.0));
  EXPECT_EQ(directed.adjacency(1, 2), cplx(0.0));

  const auto sym = graphs::knn_graph(pts, 1, true);
  EXPECT_EQ(sym.adjacency(1, 2), cplx(1.0));
  EXPECT_EQ(sym.adjacency(2, 1), cplx(1.0));
  EXPECT_EQ(sym.adjacency(0, 2), cplx(0.0));
}

TEST(KnnGraph, SquareCornersK2) {
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto g = graphs::knn_graph(pts, 2, true);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(g.adjacency(i, (i + 1) % 4), cplx(1.0));
    EXPECT_EQ(g.adjacency(i, (i + 3) % 4), cplx(1.0));
    EXPECT_EQ(g.adjacency(i, (i + 2) % 4), cplx(0.0));
  }
}

TEST(KnnGraph, MatchesExhaustiveDistanceSort) {
  const auto pts = synthetic::random_coords(10, 77);
  const auto g = graphs::knn_graph(pts, 3, false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
      d.emplace_back(dx * dx + dy * dy, j);
    }
    std::sort(d.begin(), d.end());
    for (std::size_t r = 0; r < d.size(); ++r) {
      const double expected = r < 3 ? 1.0 : 0.0;
      EXPECT_EQ(g.adjacency(i, d[r].second).real(), expected);
    }
  }
}

TEST(KnnGraph, Errors) {
  const std::vector<std::vector<double>> dup{{0, 0}, {0, 0}, {1, 1}};
  try {
    graphs::knn_graph(dup, 1, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicatePoints);
  }
  EXPECT_THROW(graphs::knn_graph(dup, 3, true), Error);
}

TEST(ShiftOperator, TextbookCases) {
  const CplxMatrix l = graphs::shift_operator(path2(), ShiftKind::Laplacian);
  CplxMatrix expected(2, 2);
  expected << 1.0, -1.0, -1.0, 1.0;
  EXPECT_LT((l - expected).norm(), 1e-15);

  const CplxMatrix s = graphs::shift_operator(path2(), ShiftKind::SymNormAdjacency);
  expected << 0.0, 1.0, 1.0, 0.0;
  EXPECT_LT((s - expected).norm(), 1e-15);

  const CplxMatrix r = graphs::shift_operator(complete3(), ShiftKind::RowNormAdjacency);
  const CplxMatrix a = complete3().adjacency;
  CplxMatrix direct = a;
  for (int i = 0; i < 3; ++i) direct.row(i) /= a.row(i).sum();
  EXPECT_LT((r - direct).norm(), 1e-15);
  EXPECT_LT((r - 0.5 * (CplxMatrix::Ones(3, 3) - CplxMatrix::Identity(3, 3))).norm(), 1e-15);
}

TEST(ShiftOperator, RowSumsAndSpectra) {
  const auto pts = synthetic::random_coords(9, 5);
  const auto g = graphs::knn_graph(pts, 3, true);
  const CplxMatrix lap = graphs::shift_operator(g, ShiftKind::Laplacian);
  EXPECT_LT(lap.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  const CplxMatrix rn = graphs::shift_operator(g, ShiftKind::RowNormAdjacency);
  EXPECT_LT((rn.rowwise().sum() - CplxVector::Ones(9)).cwiseAbs().maxCoeff(), 1e-12);

  const CplxMatrix nl = graphs::shift_operator(g, ShiftKind::NormLaplacian);
  const auto gft = graphs::gft_factorize(nl);
  double smallest = 1e9;
  for (Eigen::Index i = 0; i < gft.eigenvalues.size(); ++i) {
    smallest = std::min(smallest, gft.eigenvalues[i].real());
  }
  EXPECT_NEAR(smallest, 0.0, 1e-8);
}

TEST(ShiftOperator, IsolatedVertexRejectedForNormalizedKinds) {
  CplxMatrix a = CplxMatrix::Zero(3, 3);
  a(0, 1) = a(1, 0) = 1.0;
  const auto g = graphs::make_graph(a, false);
  EXPECT_NO_THROW(graphs::shift_operator(g, ShiftKind::Laplacian));
  try {
    graphs::shift_operator(g, ShiftKind::SymNormAdjacency);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IsolatedVertex);
  }
}

TEST(ShiftKind, NamesRoundTrip) {
  for (auto k : {ShiftKind::Adjacency, ShiftKind::Laplacian, ShiftKind::RowNormAdjacency,
                 ShiftKind::SymNormAdjacency, ShiftKind::NormLaplacian}) {
    EXPECT_EQ(graphs::parse_shift_kind(graphs::to_string(k)), k);
  }
  EXPECT_THROW(graphs::parse_shift_kind("bogus"), Error);
}

TEST(GftFactorize, IdentityShift) {
  const auto gft = graphs::gft_factorize(CplxMatrix::Identity(4, 4));
  EXPECT_LT((gft.f_g * gft.v - CplxMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(GftFactorize, SymmetricShiftGivesUnitaryGft) {
  CplxMatrix z = oracle::random_matrix(6, 6, 9, true);
  z = (z + z.transpose()).eval();
  const auto gft = graphs::gft_factorize(z);
  EXPECT_LT((gft.f_g * gft.f_g.adjoint() - CplxMatrix::Identity(6, 6)).norm(), 1e-8);
  EXPECT_LT((gft.v * gft.eigenvalues.asDiagonal() * gft.f_g - z).norm(), 1e-8 * z.norm());
}

TEST(GftFactorize, CycleOrderingAndResidual) {
  const CplxMatrix c = cycle4();
  const auto gft = graphs::gft_factorize(c);
  const std::vector<double> expected{2.0, 0.0, 0.0, -2.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(gft.eigenvalues[i].real(), expected[static_cast<std::size_t>(i)], 1e-12);
  }
  // Oracle: same multiset as the characteristic-polynomial roots.
  auto roots = oracle::poly_roots(oracle::char_poly(c));
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(roots[static_cast<std::size_t>(i)] - gft.eigenvalues[i]), 0.0, 1e-6);
  EXPECT_LT((gft.v * gft.eigenvalues.asDiagonal() * gft.f_g - c).norm(), 1e-8 * c.norm());
  EXPECT_EQ(gft.ordering, graphs::kOrderingRule);
}

TEST(GftFactorize, DirectedGraphInverseRelation) {
  const auto g = synthetic::random_directed_graph(7, 3);
  const auto gft = graphs::gft_factorize(g.adjacency);
  EXPECT_LT((gft.f_g * gft.v - CplxMatrix::Identity(7, 7)).norm(), 1e-8);
  for (Eigen::Index i = 1; i < 7; ++i) {
    EXPECT_GE(gft.eigenvalues[i - 1].real() + 1e-12, gft.eigenvalues[i].real());
  }
  // Phase rule: first non-negligible entry of each eigenvector is real positive.
  for (Eigen::Index c = 0; c < 7; ++c) {
    Eigen::Index r = 0;
    while (std::abs(gft.v(r, c)) <= 1e-8) ++r;
    EXPECT_GT(gft.v(r, c).real(), 0.0);
    EXPECT_NEAR(gft.v(r, c).imag(), 0.0, 1e-12);
  }
}

TEST(GraphIo, EdgeListAndCoords) {
  const auto edges = write_temp("ljfrft_edges.csv", "src,dst,weight\n0,1,2.5\n1,2,1\n");
  const auto g = graphs::load_edge_list_csv(edges, 3, false);
  EXPECT_EQ(g.adjacency(0, 1), cplx(2.5));
  EXPECT_EQ(g.adjacency(1, 0), cplx(2.5));
  EXPECT_EQ(g.adjacency(2, 1), cplx(1.0));

  const auto bad = write_temp("ljfrft_edges_bad.csv", "0,5,1\n");
  EXPECT_THROW(graphs::load_edge_list_csv(bad, 3, true), Error);

  const auto coords = write_temp("ljfrft_coords.csv", "x,y\n0,0\n1,0.5\n");
  const auto pts = graphs::load_coords_csv(coords);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1][1], 0.5);
}
