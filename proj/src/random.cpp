#include "mpinv/random.hpp"

#include <cmath>

namespace mpinv {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

bool Rng::bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

Complex Rng::complex_normal() {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(engine_);
  const double im = n(engine_);
  return {re, im};
}

Matrix Rng::gaussian(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (Complex& z : m.data()) z = complex_normal();
  return m;
}

Matrix Rng::orthonormal_columns(std::size_t rows, std::size_t cols) {
  if (cols > rows) {
    throw Error(ErrorCode::InvalidArgument, "orthonormal_columns: cols > rows");
  }
  Matrix q(rows, cols);
  std::vector<Complex> col(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    // Redraw on the (measure-zero) event of a dependent column.
    for (;;) {
      for (Complex& z : col) z = complex_normal();
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          Complex proj{};
          for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * col[i];
          for (std::size_t i = 0; i < rows; ++i) col[i] -= proj * q(i, k);
        }
      }
      double nrm = 0.0;
      for (const Complex& z : col) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > 1e-8) {
        for (std::size_t i = 0; i < rows; ++i) q(i, j) = col[i] / nrm;
        break;
      }
    }
  }
  return q;
}

Matrix compose_svd(const Matrix& u, std::span<const double> sigma, const Matrix& v) {
  if (u.cols() != sigma.size() || v.cols() != sigma.size()) {
    throw Error(ErrorCode::DimensionMismatch, "compose_svd: factor widths differ");
  }
  Matrix us = u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t k = 0; k < sigma.size(); ++k) us(i, k) *= sigma[k];
  return us * v.adjoint();
}

}  // namespace mpinv
