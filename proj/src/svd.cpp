#include "mpinv/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mpinv {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Column-major working storage: column j occupies [j * rows, (j + 1) * rows).
struct ColumnMajor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> buf;

  Complex* col(std::size_t j) { return buf.data() + j * rows; }
  const Complex* col(std::size_t j) const { return buf.data() + j * rows; }
};

// x^H y
Complex dot(const Complex* x, const Complex* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::norm(x[k]);
  return s;
}

// [x, y] <- [c*x - s*conj(phase)*y ... ] with phase = gamma/|gamma|:
//   x' = c x - s e^{-i phi} y,  y' = s x + c e^{-i phi} y
// Written out by hand: std::complex multiplication goes through the
// NaN-recovering __muldc3 path, which dominates the sweep otherwise.
// Returns the new squared norms of x and y through nx, ny.
void rotate(Complex* x, Complex* y, std::size_t n, double c, double s, Complex phase_conj,
            double* nx = nullptr, double* ny = nullptr) {
  const double pr = phase_conj.real(), pi = phase_conj.imag();
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double yr = pr * y[k].real() - pi * y[k].imag();
    const double yi = pr * y[k].imag() + pi * y[k].real();
    const double xr = x[k].real(), xi = x[k].imag();
    const double ar = c * xr - s * yr, ai = c * xi - s * yi;
    const double br = s * xr + c * yr, bi = s * xi + c * yi;
    x[k] = Complex(ar, ai);
    y[k] = Complex(br, bi);
    sx += ar * ar + ai * ai;
    sy += br * br + bi * bi;
  }
  if (nx) *nx = sx;
  if (ny) *ny = sy;
}

double column_norm(const Complex* x, std::size_t n) {
  Matrix tmp(n, 1, std::vector<Complex>(x, x + n));
  return tmp.frobenius_norm();
}

// Cyclic one-sided Jacobi on the columns of w (rows x cols).  On return the
// columns of w are mutually orthogonal and z (cols x cols, unitary) holds the
// accumulated rotations, so that w_out = w_in * z.
ColumnMajor jacobi_sweeps(ColumnMajor& w) {
  const std::size_t m = w.rows;
  const std::size_t n = w.cols;
  ColumnMajor z{n, n, std::vector<Complex>(n * n)};
  for (std::size_t j = 0; j < n; ++j) z.col(j)[j] = 1.0;

  std::vector<double> sq(n);
  for (std::size_t j = 0; j < n; ++j) sq[j] = norm2(w.col(j), m);

  // Pairs whose cosine is already below sqrt(m) * eps are left alone; that
  // is the accuracy the rotations themselves can deliver.
  const double rotate_tol = std::sqrt(static_cast<double>(m)) * kEps;
  bool converged = (n < 2);
  double worst = 0.0;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = sq[i];
        const double beta = sq[j];
        if (alpha == 0.0 || beta == 0.0) continue;
        Complex* wi = w.col(i);
        Complex* wj = w.col(j);
        const Complex gamma = dot(wi, wj, m);
        const double g = std::abs(gamma);
        const double coupling = g / std::sqrt(alpha * beta);
        worst = std::max(worst, coupling);
        if (!(coupling > rotate_tol)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        const Complex phase_conj = std::conj(gamma) / g;
        rotate(wi, wj, m, c, s, phase_conj, &sq[i], &sq[j]);
        rotate(z.col(i), z.col(j), n, c, s, phase_conj);
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    std::ostringstream os;
    os << "Jacobi SVD did not converge in " << kMaxJacobiSweeps
       << " sweeps; largest relative column coupling " << worst;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return z;
}

// Householder QR with column pivoting of a tall m x n matrix held column
// major: a * P = Q * R.  Returns Q (m x m, explicit), R (n x n, upper
// triangular, column major) and the permutation (column k of a*P is column
// perm[k] of a).
struct PivotedQr {
  Matrix q;
  ColumnMajor r;
  std::vector<std::size_t> perm;
};

PivotedQr pivoted_qr(ColumnMajor a) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<Complex>> reflectors;
  std::vector<double> betas;
  reflectors.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    // Pivot: the trailing column with the largest remaining norm.
    std::size_t best = k;
    double best_sq = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      const double sq = norm2(a.col(j) + k, m - k);
      if (sq > best_sq) {
        best_sq = sq;
        best = j;
      }
    }
    if (best != k) {
      std::swap_ranges(a.col(k), a.col(k) + m, a.col(best));
      std::swap(perm[k], perm[best]);
    }

    Complex* x = a.col(k) + k;
    const std::size_t len = m - k;
    const double xnorm = std::sqrt(norm2(x, len));
    std::vector<Complex> v(x, x + len);
    double beta = 0.0;
    if (xnorm > 0.0) {
      const double ax0 = std::abs(x[0]);
      const Complex phase = ax0 > 0.0 ? x[0] / ax0 : Complex(1.0);
      const Complex alpha = -phase * xnorm;
      v[0] -= alpha;
      const double vv = norm2(v.data(), len);
      if (vv > 0.0) beta = 2.0 / vv;
      // Apply H = I - beta v v^* to the trailing columns.
      for (std::size_t j = k; j < n; ++j) {
        Complex* y = a.col(j) + k;
        const Complex w = beta * dot(v.data(), y, len);
        for (std::size_t i = 0; i < len; ++i) y[i] -= w * v[i];
      }
      x[0] = alpha;
      for (std::size_t i = 1; i < len; ++i) x[i] = 0.0;
    }
    reflectors.push_back(std::move(v));
    betas.push_back(beta);
  }

  // Q = H_0 H_1 ... H_{n-1}, accumulated from the right onto the identity.
  Matrix q = Matrix::identity(m);
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = reflectors[kk];
    const double beta = betas[kk];
    if (beta == 0.0) continue;
    const std::size_t len = m - kk;
    for (std::size_t j = kk; j < m; ++j) {
      Complex w{};
      for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * q(kk + i, j);
      w *= beta;
      for (std::size_t i = 0; i < len; ++i) q(kk + i, j) -= w * v[i];
    }
  }

  // Rows of R whose trailing block is below eps * |R_00| are set to zero: a
  // backward perturbation of at most eps * ||a||, far under any rank
  // threshold, that spares the sweeps from rotating pure rounding noise.
  std::size_t keep = n;
  if (n > 0) {
    const double cut = kEps * std::abs(a.col(0)[0]);
    double tail = 0.0;  // squared Frobenius norm of R[k:, k:]
    for (std::size_t k = n; k-- > 0;) {
      for (std::size_t j = k; j < n; ++j) tail += std::norm(a.col(j)[k]);
      if (std::sqrt(tail) > cut) break;
      keep = k;
    }
  }
  ColumnMajor r{n, n, std::vector<Complex>(n * n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j && i < keep; ++i) r.col(j)[i] = a.col(j)[i];
  return {std::move(q), std::move(r), std::move(perm)};
}

// Fill columns [filled, q.cols()) of q, whose first `filled` columns are
// orthonormal, with an orthonormal basis of their complement: the trailing
// columns of a full Householder Q of the filled block.
void complete_basis(Matrix& q, std::size_t filled) {
  if (filled == q.cols()) return;
  const std::size_t m = q.rows();
  ColumnMajor block{m, filled, std::vector<Complex>(m * filled)};
  for (std::size_t j = 0; j < filled; ++j)
    for (std::size_t i = 0; i < m; ++i) block.col(j)[i] = q(i, j);
  const Matrix full = pivoted_qr(std::move(block)).q;
  for (std::size_t k = filled; k < q.cols(); ++k)
    for (std::size_t i = 0; i < m; ++i) q(i, k) = full(i, k);
}

// Factor a tall (rows >= cols) matrix with a full rows x rows U.
//
// Preconditioned as in the QR-Jacobi method: a P = Q R, then Jacobi on
// X = R^*.  X Z = W Sigma gives R = Z Sigma W^*, hence
// a = (Q diag(Z, I)) Sigma (P W)^*.  The rotations converge in markedly fewer
// sweeps on X than on a, most of all for rank-deficient inputs.
Svd jacobi_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Exact power-of-two prescaling keeps squared column norms in range.
  double max_abs = 0.0;
  for (const Complex& z : a.data()) {
    max_abs = std::max({max_abs, std::abs(z.real()), std::abs(z.imag())});
  }
  int exponent = 0;
  if (max_abs > 0.0) std::frexp(max_abs, &exponent);
  const double down = std::ldexp(1.0, -exponent);

  ColumnMajor w{m, n, std::vector<Complex>(m * n)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w.col(j)[i] = a(i, j) * down;

  PivotedQr qr = pivoted_qr(std::move(w));

  ColumnMajor x{n, n, std::vector<Complex>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x.col(i)[j] = std::conj(qr.r.col(j)[i]);

  const ColumnMajor z = jacobi_sweeps(x);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = column_norm(x.col(j), n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t p, std::size_t q) { return norms[p] > norms[q]; });

  const double up = std::ldexp(1.0, exponent);
  Svd out;
  out.sigma.resize(n);

  // W: normalized columns of X in sigma order.  Columns whose norm is exactly
  // zero (or denormal) carry no direction and are completed below.
  constexpr double kTiny = std::numeric_limits<double>::min() * 0x1p52;
  Matrix wm(n, n);
  Matrix zs(n, n);
  std::size_t filled = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = norms[j] * up;
    for (std::size_t i = 0; i < n; ++i) zs(i, k) = z.col(j)[i];
    if (norms[j] > kTiny) {
      const double inv = 1.0 / norms[j];
      for (std::size_t i = 0; i < n; ++i) wm(i, k) = x.col(j)[i] * inv;
      filled = k + 1;
    }
  }
  complete_basis(wm, filled);

  // V = P W: row perm[i] of V is row i of W.
  out.v = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) out.v(qr.perm[i], k) = wm(i, k);

  // U = Q diag(Z, I): only the leading n columns of Q mix.
  out.u = qr.q;
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex qv = qr.q(row, i), zv = zs(i, k);
        re += qv.real() * zv.real() - qv.imag() * zv.imag();
        im += qv.real() * zv.imag() + qv.imag() * zv.real();
      }
      out.u(row, k) = Complex(re, im);
    }
  }
  return out;
}

}  // namespace

Matrix Svd::reconstruct() const {
  Matrix us(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < sigma.size(); ++k) us(i, k) = u(i, k) * sigma[k];
  return us * v.adjoint();
}

Svd svd(const Matrix& a) {
  if (!a.all_finite()) throw Error(ErrorCode::NonFinite, "svd: non-finite entry");
  if (a.rows() >= a.cols()) return jacobi_tall(a);
  Svd t = jacobi_tall(a.adjoint());
  return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

double rank_threshold(const Svd& f, const Tolerance& t, double noise_scale) {
  const double dim = static_cast<double>(std::max(f.rows(), f.cols()));
  return std::max(f.sigma_max(), noise_scale) * dim * kEps * t.rank_tol_factor;
}

std::size_t numerical_rank(const Svd& f, const Tolerance& t, double noise_scale) {
  const double cut = rank_threshold(f, t, noise_scale);
  return static_cast<std::size_t>(
      std::count_if(f.sigma.begin(), f.sigma.end(), [cut](double s) { return s > cut; }));
}

double operator_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  return svd(m).sigma_max();
}

Matrix range_basis(const Svd& f, std::size_t rank) { return f.u.columns(0, rank); }

Matrix null_basis(const Svd& f, std::size_t rank) {
  return f.v.columns(rank, f.v.cols() - rank);
}

}  // namespace mpinv
