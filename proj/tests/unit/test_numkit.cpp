#include <algorithm>
#include <complex>

#include <gtest/gtest.h>

#include "ljfrft/error.hpp"
#include "ljfrft/numkit.hpp"
#include "oracles.hpp"

using namespace ljfrft;

namespace {

std::vector<double> sorted_real(const CplxVector& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i].real());
  std::sort(out.begin(), out.end());
  return out;
}

double reconstruction_error(const CplxMatrix& m, const numkit::EigResult& e) {
  const CplxMatrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.inverse();
  return (rebuilt - m).norm() / m.norm();
}

}  // namespace

TEST(EigDecompose, IdentityReconstructsExactly) {
  const CplxMatrix eye = CplxMatrix::Identity(3, 3);
  const auto e = numkit::eig_decompose(eye);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(e.values[i] - 1.0), 0.0, 1e-14);
  EXPECT_LT(reconstruction_error(eye, e), 1e-14);
  EXPECT_TRUE(e.unitary_vectors);
}

TEST(EigDecompose, DiagonalInputGivesPermutedIdentityVectors) {
  CplxMatrix d = CplxMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  const auto e = numkit::eig_decompose(d);
  EXPECT_EQ(sorted_real(e.values), (std::vector<double>{-1.0, 0.5, 2.0}));
  for (Eigen::Index c = 0; c < 3; ++c) {
    EXPECT_NEAR(e.vectors.col(c).cwiseAbs().maxCoeff(), 1.0, 1e-12);
    EXPECT_NEAR(e.vectors.col(c).cwiseAbs().sum(), 1.0, 1e-12);
  }
}

TEST(EigDecompose, CycleGraphMatchesCharacteristicPolynomialRoots) {
  CplxMatrix c4 = CplxMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    c4(i, (i + 1) % 4) = 1.0;
    c4((i + 1) % 4, i) = 1.0;
  }
  const auto e = numkit::eig_decompose(c4);
  const auto roots = oracle::poly_roots(oracle::char_poly(c4));
  std::vector<double> expected;
  for (const auto& r : roots) expected.push_back(r.real());
  std::sort(expected.begin(), expected.end());
  const auto got = sorted_real(e.values);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-6);
  EXPECT_NEAR(got.front(), -2.0, 1e-12);
  EXPECT_NEAR(got.back(), 2.0, 1e-12);
}

TEST(EigDecompose, RandomGeneralMatricesReconstruct) {
  for (int n = 2; n <= 10; ++n) {
    const CplxMatrix m = oracle::random_matrix(n, n, 100 + n);
    const auto e = numkit::eig_decompose(m);
    EXPECT_LT(reconstruction_error(m, e), 1e-8) << "n=" << n;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double resid = (m * e.vectors.col(k) - e.values[k] * e.vectors.col(k)).norm();
      EXPECT_LE(resid, numkit::kEigTol * m.norm());
    }
  }
}

TEST(EigDecompose, RejectsDefectiveMatrix) {
  CplxMatrix jordan = CplxMatrix::Zero(2, 2);
  jordan(0, 0) = 1.0;
  jordan(1, 1) = 1.0;
  jordan(0, 1) = 1.0;
  try {
    numkit::eig_decompose(jordan);
    FAIL() << "expected NearDefective";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NearDefective);
  }
}

TEST(EigDecompose, RejectsNonFinite) {
  CplxMatrix m = CplxMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(numkit::eig_decompose(m), Error);
}

TEST(SolveLinear, TrivialCases) {
  const CplxMatrix b = oracle::random_matrix(3, 2, 5);
  EXPECT_LT((numkit::solve_linear(CplxMatrix::Identity(3, 3), b) - b).norm(), 1e-15);

  CplxMatrix a = CplxMatrix::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 4.0;
  CplxMatrix rhs(2, 1);
  rhs << 2.0, 4.0;
  const CplxMatrix x = numkit::solve_linear(a, rhs);
  EXPECT_NEAR(std::abs(x(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x(1, 0) - 1.0), 0.0, 1e-15);
}

TEST(SolveLinear, RecoversSolutionByMultiplyBack) {
  const CplxMatrix a = oracle::random_matrix(5, 5, 11) + 3.0 * CplxMatrix::Identity(5, 5);
  const CplxMatrix x0 = oracle::random_matrix(5, 3, 12);
  const CplxMatrix x = numkit::solve_linear(a, a * x0);
  EXPECT_LT(oracle::rel(x, x0), 1e-8);
  EXPECT_LT(oracle::rel(a * x, a * x0), 1e-12);
}

TEST(SolveLinear, SingularThrows) {
  CplxMatrix a = CplxMatrix::Ones(3, 3);
  try {
    numkit::solve_linear(a, CplxMatrix::Ones(3, 1));
    FAIL() << "expected Singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Kron, IdentityAndShape) {
  EXPECT_LT((numkit::kron(CplxMatrix::Identity(2, 2), CplxMatrix::Identity(3, 3)) -
             CplxMatrix::Identity(6, 6)).norm(), 1e-15);
  const CplxMatrix k = numkit::kron(oracle::random_matrix(2, 3, 1), oracle::random_matrix(4, 5, 2));
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(k.cols(), 15);
}

TEST(Kron, MatchesIndexOracle) {
  const CplxMatrix a = oracle::random_matrix(3, 2, 3);
  const CplxMatrix b = oracle::random_matrix(2, 4, 4);
  EXPECT_LT((numkit::kron(a, b) - oracle::kron(a, b)).norm(), 1e-15);
}

TEST(Kron, MixedProductAndInverse) {
  for (int n : {2, 3}) {
    const CplxMatrix a = oracle::random_matrix(n, n, 20 + n) + 2.0 * CplxMatrix::Identity(n, n);
    const CplxMatrix b = oracle::random_matrix(n, n, 30 + n) + 2.0 * CplxMatrix::Identity(n, n);
    const CplxMatrix c = oracle::random_matrix(n, n, 40 + n);
    const CplxMatrix d = oracle::random_matrix(n, n, 50 + n);
    EXPECT_LT(oracle::rel(numkit::kron(a, b) * numkit::kron(c, d), numkit::kron(a * c, b * d)), 1e-8);

    const CplxMatrix eye = CplxMatrix::Identity(n, n);
    const CplxMatrix inv_kron =
        numkit::solve_linear(numkit::kron(a, b), CplxMatrix::Identity(n * n, n * n));
    const CplxMatrix kron_inv =
        numkit::kron(numkit::solve_linear(a, eye), numkit::solve_linear(b, eye));
    EXPECT_LT(oracle::rel(inv_kron, kron_inv), 1e-8);
  }
}

TEST(Kron, ElementCapThrows) {
  try {
    numkit::kron(CplxMatrix::Ones(4, 4), CplxMatrix::Ones(4, 4), 100);
    FAIL() << "expected DimensionOverflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionOverflow);
  }
}

TEST(FrobNorm, HandCases) {
  EXPECT_EQ(numkit::frob_norm(CplxMatrix::Zero(3, 3)), 0.0);
  EXPECT_DOUBLE_EQ(numkit::frob_norm(CplxMatrix::Identity(4, 4)), 2.0);
  CplxMatrix row(1, 2);
  row << 3.0, 4.0;
  EXPECT_DOUBLE_EQ(numkit::frob_norm(row), 5.0);
}
