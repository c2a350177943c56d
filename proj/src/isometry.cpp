#include "mpinv/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"
#include "mpinv/svd.hpp"

namespace mpinv {

double conorm(const Matrix& a, const Tolerance& t) {
  const Svd f = svd(a);
  const std::size_t r = numerical_rank(f, t);
  if (r == 0) throw Error(ErrorCode::Precondition, "conorm undefined for the zero element");
  return f.sigma[r - 1];
}

bool is_partial_isometry(const Matrix& a, const Tolerance& t) {
  return approx_eq(dagger(a, t), a.adjoint(), t);
}

bool is_hermitian_idempotent(const Matrix& m, const Tolerance& t) {
  require_square(m, "is_hermitian_idempotent");
  return approx_eq(m.adjoint(), m, t) && approx_eq(m * m, m, t);
}

double normality_residual(const Matrix& a) {
  require_square(a, "normality_residual");
  const double fa = a.frobenius_norm();
  if (fa == 0.0) return 0.0;
  const Matrix as = a.adjoint();
  return (a * as - as * a).frobenius_norm() / (fa * fa);
}

double hermitian_residual(const Matrix& a) {
  require_square(a, "hermitian_residual");
  return (a - a.adjoint()).frobenius_norm() / std::max(1.0, a.frobenius_norm());
}

ConditionReport prop53_check(const Matrix& a, const Tolerance& t) {
  const Svd f = svd(a);
  const PinvResult p = pinv(a, f, t);
  if (p.rank == 0) {
    throw Error(ErrorCode::Precondition, "prop53_check requires a non-zero element");
  }
  const double c = f.sigma[p.rank - 1];
  const double nrm = f.sigma_max();

  ConditionReport report;
  report.tolerance = t;
  const double pi_res = relative_diff(p.pinv, a.adjoint());
  const bool lhs = pi_res <= t.eq_tol;
  const double unit_res = std::max(std::abs(c - 1.0), std::abs(nrm - 1.0));
  const bool rhs = unit_res <= t.eq_tol;
  report.add("LHS", lhs, pi_res);
  report.add("RHS", rhs, unit_res);
  report.add("CONSISTENT", lhs == rhs, 0.0);
  return report;
}

ConditionReport theorem54_check(const Matrix& a, const Tolerance& t) {
  require_square(a, "theorem54_check");
  const Matrix x = dagger(a, t);
  const Matrix as = a.adjoint();

  const double normal = normality_residual(a);
  const double mph = relative_diff(x, a);
  const double herm = hermitian_residual(a);
  const double pi = relative_diff(x, as);

  const bool lhs = normal <= t.eq_tol && mph <= t.eq_tol;
  const bool rhs = herm <= t.eq_tol && pi <= t.eq_tol;
  ConditionReport report;
  report.tolerance = t;
  report.add("LHS", lhs, std::max(normal, mph));
  report.add("RHS", rhs, std::max(herm, pi));
  report.add("CONSISTENT", lhs == rhs, 0.0);
  return report;
}

ClassificationReport classify(const Matrix& a, const Tolerance& t) {
  const Svd f = svd(a);
  const PinvResult p = pinv(a, f, t);
  ClassificationReport c;
  c.rank = p.rank;
  c.op_norm = f.sigma_max();
  c.pinv_norm = operator_norm(p.pinv);
  if (p.rank > 0) c.conorm = f.sigma[p.rank - 1];
  c.partial_isometry = approx_eq(p.pinv, a.adjoint(), t);
  if (a.is_square()) {
    c.hermitian = hermitian_residual(a) <= t.eq_tol;
    c.normal = normality_residual(a) <= t.eq_tol;
    c.mp_hermitian = approx_eq(p.pinv, a, t);
  }
  return c;
}

Matrix generate_special(SpecialKind kind, std::size_t n, const SpecialParams& params,
                        std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "generate_special: n must be positive");
  Rng rng(seed);
  switch (kind) {
    case SpecialKind::PartialIsometry: {
      if (params.rank > n) {
        throw Error(ErrorCode::InvalidArgument, "generate_special: rank exceeds n");
      }
      const Matrix u = rng.orthonormal_columns(n, params.rank);
      const Matrix v = rng.orthonormal_columns(n, params.rank);
      return u * v.adjoint();
    }
    case SpecialKind::HermitianPartialIsometry: {
      const std::size_t r = params.positive + params.negative;
      if (r > n) {
        throw Error(ErrorCode::InvalidArgument, "generate_special: inertia exceeds n");
      }
      const Matrix q = rng.orthonormal_columns(n, r);
      std::vector<double> d(r);
      for (std::size_t i = 0; i < r; ++i) d[i] = i < params.positive ? 1.0 : -1.0;
      return compose_svd(q, d, q);
    }
    case SpecialKind::PrescribedSingularValues: {
      const auto& sv = params.singular_values;
      if (sv.size() > n) {
        throw Error(ErrorCode::InvalidArgument, "generate_special: too many singular values");
      }
      if (std::any_of(sv.begin(), sv.end(), [](double s) { return !(s >= 0.0) || !std::isfinite(s); })) {
        throw Error(ErrorCode::InvalidArgument,
                    "generate_special: singular values must be finite and non-negative");
      }
      const Matrix u = rng.orthonormal_columns(n, sv.size());
      const Matrix v = rng.orthonormal_columns(n, sv.size());
      return compose_svd(u, sv, v);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "generate_special: unknown kind");
}

}  // namespace mpinv
