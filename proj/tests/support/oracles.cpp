#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

Mat random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, bool real) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = u(gen);
      m(r, c) = cplx(re, real ? 0.0 : u(gen));
    }
  }
  return m;
}

Mat dft(Eigen::Index n) {
  Mat f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((m * k) % n) / static_cast<double>(n);
      f(m, k) = scale * cplx(std::cos(ang), std::sin(ang));
    }
  }
  return f;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Vec vec(const Mat& x) {
  Vec v(x.size());
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r) v(idx++) = x(r, c);
  return v;
}

std::vector<cplx> char_poly(const Mat& a) {
  const Eigen::Index n = a.rows();
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  c[0] = 1.0;
  Mat m = Mat::Zero(n, n);
  const Mat eye = Mat::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(k - 1)] * eye;
    c[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& p) {
  const std::size_t deg = p.size() - 1;
  std::vector<cplx> z(deg);
  const cplx seed(0.4, 0.9);
  for (std::size_t i = 0; i < deg; ++i) z[i] = std::pow(seed, static_cast<double>(i));
  auto eval = [&](cplx x) {
    cplx acc = 0.0;
    for (const cplx& coef : p) acc = acc * x + coef;
    return acc;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double delta = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      cplx denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= z[i] - z[j];
      const cplx step = eval(z[i]) / denom;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-15) break;
  }
  return z;
}

Mat expm(const Mat& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double mse(const Mat& a, const Mat& b) {
  double acc = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) acc += std::norm(a(r, c) - b(r, c));
  return acc / static_cast<double>(a.size());
}

double rel(const Mat& a, const Mat& b) {
  const double denom = std::max(b.norm(), 1e-300);
  return (a - b).norm() / denom;
}

std::vector<double> minimize_quadratic(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, int sweeps) {
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1.0;
      const double x0 = x[i];
      const double f0 = f(x);
      x[i] = x0 + h;
      const double fp = f(x);
      x[i] = x0 - h;
      const double fm = f(x);
      const double curv = (fp - 2 * f0 + fm) / (h * h);
      const double slope = (fp - fm) / (2 * h);
      x[i] = curv > 0 ? x0 - slope / curv : x0;
    }
  }
  return x;
}

}  // namespace oracle
