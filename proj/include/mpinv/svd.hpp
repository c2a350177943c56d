#pragma once

#include <cstddef>
#include <vector>

#include "mpinv/matrix.hpp"

namespace mpinv {

/// A = U * diag(sigma) * V^*, with U (m x m) and V (n x n) unitary and sigma
/// non-increasing, length min(m, n).
struct Svd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  std::size_t rows() const { return u.rows(); }
  std::size_t cols() const { return v.rows(); }
  double sigma_max() const { return sigma.empty() ? 0.0 : sigma.front(); }

  /// U * Sigma * V^*.
  Matrix reconstruct() const;
};

inline constexpr int kMaxJacobiSweeps = 30;

/// One-sided (Hestenes) Jacobi SVD on the taller of A and A^*.
///
/// Deterministic: the same input bits always produce the same output bits.
/// Throws Error{NoConvergence} carrying the largest remaining relative
/// column coupling if the sweep cap is reached.
Svd svd(const Matrix& a);

/// sigma_max * max(m, n) * eps * rank_tol_factor.
///
/// `noise_scale`, when larger than sigma_max, replaces it: a matrix computed
/// as a product carries rounding error proportional to the norms of its
/// factors, not to its own norm.
double rank_threshold(const Svd& f, const Tolerance& t, double noise_scale = 0.0);

/// Number of singular values strictly above rank_threshold.
std::size_t numerical_rank(const Svd& f, const Tolerance& t, double noise_scale = 0.0);

/// Spectral norm, sigma_1.  Zero for the zero (or empty) matrix.
double operator_norm(const Matrix& m);

/// Orthonormal basis of the column space (first `rank` left singular vectors).
Matrix range_basis(const Svd& f, std::size_t rank);

/// Orthonormal basis of the null space (trailing right singular vectors).
Matrix null_basis(const Svd& f, std::size_t rank);

}  // namespace mpinv
