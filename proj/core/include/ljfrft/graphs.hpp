#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ljfrft/numkit.hpp"

namespace ljfrft::graphs {

struct Graph {
  Eigen::Index n = 0;
  CplxMatrix adjacency;  // zero diagonal; symmetric when !directed
  bool directed = false;
};

enum class ShiftKind { Adjacency, Laplacian, RowNormAdjacency, SymNormAdjacency, NormLaplacian };

std::string_view to_string(ShiftKind kind);
/// Accepts "adjacency", "laplacian", "row-norm-adjacency", "sym-norm-adjacency",
/// "norm-laplacian". Throws Error(ConfigError) otherwise.
ShiftKind parse_shift_kind(std::string_view name);

/// Eigenpairs sorted by descending real part, ties by descending imaginary part.
inline constexpr std::string_view kOrderingRule = "descending-real-then-imag";

struct GftFactorization {
  CplxMatrix shift;        // Z
  CplxVector eigenvalues;  // ordered per kOrderingRule
  CplxMatrix v;            // eigenvector columns, same order
  CplxMatrix f_g;          // GFT matrix, V^{-1}
  std::string ordering{kOrderingRule};
};

/// Validates and wraps an adjacency matrix.
Graph make_graph(const CplxMatrix& adjacency, bool directed);

/// k-nearest-neighbour graph with binary weights. Each vertex links to its k
/// closest points (Euclidean, ties by lower index); with `symmetrize` the
/// adjacency becomes max(A, A^T).
Graph knn_graph(const std::vector<std::vector<double>>& coords, int k, bool symmetrize);

CplxMatrix shift_operator(const Graph& g, ShiftKind kind);

/// Eigendecomposition of the shift operator plus F_G = V^{-1}.
///
/// Eigenvectors have unit norm with their first nonzero component rotated to
/// the positive real axis. When V comes out real orthogonal with det(V) = -1
/// the last column is negated so that F_G lies in SO(N); otherwise F_G would
/// always carry an eigenvalue at -1, on the branch cut of the matrix log.
GftFactorization gft_factorize(const CplxMatrix& z);

/// Edge list CSV `src,dst,weight` (0-based). Undirected lists set both
/// directions. An optional non-numeric header line is skipped.
Graph load_edge_list_csv(const std::string& path, Eigen::Index n, bool directed);

/// Coordinates CSV `x,y[,z...]`, one row per vertex.
std::vector<std::vector<double>> load_coords_csv(const std::string& path);

}  // namespace ljfrft::graphs
