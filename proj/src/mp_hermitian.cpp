#include "mpinv/mp_hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"
#include "mpinv/svd.hpp"

namespace mpinv {
namespace {

// sqrt(sum of squared sines of the principal angles) between span(x) and
// span(y), both orthonormal; infinite when the dimensions differ.
double subspace_gap(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.cols()) return INFINITY;
  if (x.cols() == 0) return 0.0;
  return (y - x * (x.adjoint() * y)).frobenius_norm();
}

}  // namespace

bool is_mp_hermitian(const Matrix& a, const Tolerance& t) {
  require_square(a, "is_mp_hermitian");
  return approx_eq(dagger(a, t), a, t);
}

bool algebraic_mph_check(const Matrix& a, const Tolerance& t) {
  require_square(a, "algebraic_mph_check");
  const Matrix a2 = a * a;
  const Matrix a3 = a2 * a;
  return relative_diff(a, a3) <= t.eq_tol && relative_diff(a2.adjoint(), a2) <= t.eq_tol;
}

bool annihilator_spectrum_check(const Matrix& a, const Tolerance& t) {
  require_square(a, "annihilator_spectrum_check");
  return relative_diff(a * a * a, a) <= t.eq_tol;
}

ConditionReport theorem51_check(const Matrix& a, const Tolerance& t) {
  require_square(a, "theorem51_check");
  t.validate();
  const Svd f = svd(a);
  const std::size_t r = numerical_rank(f, t);
  const Matrix col_a = range_basis(f, r);
  const Matrix col_as = f.v.columns(0, r);
  const Matrix null_a = null_basis(f, r);
  const Matrix null_as = f.u.columns(r, f.u.cols() - r);

  ConditionReport report;
  report.tolerance = t;

  const double col_gap = subspace_gap(col_a, col_as);
  report.add("COL_EQ", col_gap <= t.eq_tol, col_gap);

  const double null_gap = subspace_gap(null_a, null_as);
  report.add("NULL_EQ", null_gap <= t.eq_tol, null_gap);

  // Residual slot holds the smallest singular value of [col(a) | null(a)].
  const double smin = svd(hstack(col_a, null_a)).sigma.back();
  report.add("DIRECT_SUM", smin > 1e-6, smin);

  const Matrix a2 = a * a;
  const Matrix as2 = a2.adjoint();
  const double sq = std::max(relative_diff(a2 * col_a, col_a), relative_diff(as2 * col_a, col_a));
  report.add("SQUARES_IDENTITY", sq <= t.eq_tol, sq);
  return report;
}

MphDecomposition theorem52_decompose(const Matrix& a, const Tolerance& t) {
  require_square(a, "theorem52_decompose");
  const Svd f = svd(a);
  const PinvResult p = pinv(a, f, t);
  const double gap = relative_diff(p.pinv, a);
  if (gap > t.eq_tol) {
    std::ostringstream os;
    os << "decompose: matrix is not Moore-Penrose hermitian (||a^+ - a|| relative = " << gap
       << ")";
    throw Error(ErrorCode::Precondition, os.str());
  }
  MphDecomposition d;
  d.h1.columns = null_basis(f, p.rank);
  d.h2.columns = range_basis(f, p.rank);
  const Matrix h2s = d.h2.columns.adjoint();
  d.t2 = h2s * a * d.h2.columns;
  d.orthogonality_residual = (d.h1.columns.adjoint() * d.h2.columns).frobenius_norm();
  d.involution_residual = (d.t2 * d.t2 - Matrix::identity(p.rank)).frobenius_norm();
  d.reconstruction_residual = relative_diff(d.h2.columns * d.t2 * h2s, a);
  return d;
}

Matrix generate_mp_hermitian(std::size_t n, std::size_t rank, std::uint64_t seed,
                             const MphGeneratorOptions& opts) {
  if (rank > n) {
    throw Error(ErrorCode::InvalidArgument, "generate_mp_hermitian: rank exceeds dimension");
  }
  if (!(opts.max_condition >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "generate_mp_hermitian: max_condition must be >= 1");
  }
  if (opts.positive && *opts.positive > rank) {
    throw Error(ErrorCode::InvalidArgument, "generate_mp_hermitian: positive count exceeds rank");
  }
  Rng rng(seed);
  const Matrix q = rng.orthonormal_columns(n, rank);
  if (rank == 0) return Matrix(n, n);

  std::size_t positive = 0;
  if (opts.positive) {
    positive = *opts.positive;
  } else if (rank == 1) {
    positive = rng.bernoulli(0.5) ? 1 : 0;
  } else {
    positive = rng.uniform_index(1, rank - 1);
  }

  std::vector<double> s(rank);
  for (double& x : s) x = rng.uniform(1.0, opts.max_condition);
  const Matrix su = rng.unitary(rank);
  const Matrix sv = rng.unitary(rank);
  std::vector<double> s_inv(rank);
  std::transform(s.begin(), s.end(), s_inv.begin(), [](double x) { return 1.0 / x; });

  Matrix d(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) d(i, i) = i < positive ? 1.0 : -1.0;

  // T2 = S D S^{-1} with S = su diag(s) sv^*, S^{-1} = sv diag(1/s) su^*.
  const Matrix t2 = compose_svd(su, s, sv) * d * compose_svd(sv, s_inv, su);
  return q * t2 * q.adjoint();
}

}  // namespace mpinv
