#pragma once

#include <cstdint>
#include <random>

#include "mpinv/matrix.hpp"

namespace mpinv {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for trial `index` of a campaign started with `seed`.  Depends only
/// on the pair, so trials can run in any order and be replayed alone.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator for test matrices.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);
  bool bernoulli(double p);
  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

  Matrix gaussian(std::size_t rows, std::size_t cols);
  /// rows x cols with orthonormal columns (cols <= rows), from QR of a
  /// Gaussian matrix with the R diagonal made positive (Haar distributed).
  Matrix orthonormal_columns(std::size_t rows, std::size_t cols);
  Matrix unitary(std::size_t n) { return orthonormal_columns(n, n); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// U * diag(sigma) * V^* with U (m x r) and V (n x r) orthonormal, r = sigma.size().
Matrix compose_svd(const Matrix& u, std::span<const double> sigma, const Matrix& v);

}  // namespace mpinv
