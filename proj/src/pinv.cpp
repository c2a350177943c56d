#include "mpinv/pinv.hpp"

#include <algorithm>
#include <sstream>

namespace mpinv {

const ConditionVerdict& ConditionReport::at(std::string_view name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "no condition named " + std::string(name));
}

bool ConditionReport::contains(std::string_view name) const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [&](const ConditionVerdict& v) { return v.name == name; });
}

double PenroseResiduals::max_relative() const {
  return *std::max_element(relative.begin(), relative.end());
}

PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "penrose_residuals: x must be " + std::to_string(a.cols()) + "x" +
                    std::to_string(a.rows()));
  }
  const Matrix ax = a * x;
  const Matrix xa = x * a;
  PenroseResiduals r;
  r.absolute[0] = (ax * a - a).frobenius_norm();
  r.absolute[1] = (xa * x - x).frobenius_norm();
  r.absolute[2] = (ax.adjoint() - ax).frobenius_norm();
  r.absolute[3] = (xa.adjoint() - xa).frobenius_norm();
  const double scale = std::max({1.0, a.frobenius_norm(), x.frobenius_norm()});
  for (std::size_t k = 0; k < 4; ++k) r.relative[k] = r.absolute[k] / scale;
  return r;
}

namespace {

PinvResult pinv_impl(const Matrix& a, const Svd& f, const Tolerance& t, double noise_scale) {
  t.validate();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t rank = numerical_rank(f, t, noise_scale);

  // x = sum_k v_k sigma_k^{-1} u_k^*
  Matrix x(n, m);
  for (std::size_t k = 0; k < rank; ++k) {
    const double inv = 1.0 / f.sigma[k];
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = f.v(i, k) * inv;
      for (std::size_t j = 0; j < m; ++j) x(i, j) += vik * std::conj(f.u(j, k));
    }
  }

  PinvResult out{std::move(x), rank, {}};
  out.residuals = penrose_residuals(a, out.pinv);
  if (out.residuals.max_relative() > t.eq_tol) {
    std::ostringstream os;
    os << "pinv: Penrose residuals exceed tolerance " << t.eq_tol << " (r1=" << out.residuals.relative[0]
       << ", r2=" << out.residuals.relative[1] << ", r3=" << out.residuals.relative[2]
       << ", r4=" << out.residuals.relative[3] << ")";
    throw Error(ErrorCode::Precondition, os.str());
  }
  return out;
}

}  // namespace

PinvResult pinv(const Matrix& a, const Svd& f, const Tolerance& t) {
  return pinv_impl(a, f, t, 0.0);
}

PinvResult pinv(const Matrix& a, const Tolerance& t) { return pinv(a, svd(a), t); }

PinvResult pinv_of_product(const Matrix& lhs, const Matrix& rhs, const Tolerance& t) {
  const Matrix prod = lhs * rhs;
  return pinv_impl(prod, svd(prod), t, lhs.frobenius_norm() * rhs.frobenius_norm());
}

Matrix dagger(const Matrix& a, const Tolerance& t) { return pinv(a, t).pinv; }

namespace {

struct Names {
  Formulation id;
  std::string_view name;
};

constexpr std::array kNames = {
    Names{Formulation::P21_I, "P21_I"},     Names{Formulation::P21_II, "P21_II"},
    Names{Formulation::P21_III, "P21_III"}, Names{Formulation::P21_IV, "P21_IV"},
    Names{Formulation::P22_II, "P22_II"},   Names{Formulation::P22_III, "P22_III"},
    Names{Formulation::R23_II, "R23_II"},   Names{Formulation::R23_III, "R23_III"},
    Names{Formulation::P24_II, "P24_II"},   Names{Formulation::P24_III, "P24_III"},
    Names{Formulation::P24_IV, "P24_IV"},   Names{Formulation::P24_V, "P24_V"},
};

// The eight distinct equations the formulations are built from.
struct Equations {
  const Matrix& a;
  const Matrix& x;
  Matrix as = a.adjoint();
  Matrix xs = x.adjoint();

  double a_eq_xs_as_a() const { return relative_diff(a, xs * as * a); }
  double a_eq_a_as_xs() const { return relative_diff(a, a * as * xs); }
  double x_eq_x_xs_as() const { return relative_diff(x, x * xs * as); }
  double x_eq_as_xs_x() const { return relative_diff(x, as * xs * x); }
  double as_eq_as_a_x() const { return relative_diff(as, as * a * x); }
  double as_eq_x_a_as() const { return relative_diff(as, x * a * as); }
  double xs_eq_xs_x_a() const { return relative_diff(xs, xs * x * a); }
  double xs_eq_a_x_xs() const { return relative_diff(xs, a * x * xs); }
};

}  // namespace

std::string_view to_string(Formulation f) {
  for (const auto& n : kNames) {
    if (n.id == f) return n.name;
  }
  return "?";
}

Formulation formulation_from_string(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown formulation " + std::string(name));
}

double formulation_residual(const Matrix& a, const Matrix& x, Formulation f) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "formulation: x must have the shape of a^*");
  }
  const Equations e{a, x};
  switch (f) {
    case Formulation::P21_I: return e.a_eq_xs_as_a();
    case Formulation::P21_II: return e.a_eq_a_as_xs();
    case Formulation::P21_III: return e.x_eq_x_xs_as();
    case Formulation::P21_IV: return e.x_eq_as_xs_x();
    case Formulation::P22_II: return std::max(e.a_eq_xs_as_a(), e.x_eq_as_xs_x());
    case Formulation::P22_III: return std::max(e.a_eq_a_as_xs(), e.x_eq_x_xs_as());
    case Formulation::R23_II: return std::max(e.as_eq_as_a_x(), e.xs_eq_xs_x_a());
    case Formulation::R23_III: return std::max(e.as_eq_x_a_as(), e.xs_eq_a_x_xs());
    case Formulation::P24_II: return std::max(e.as_eq_x_a_as(), e.x_eq_x_xs_as());
    case Formulation::P24_III: return std::max(e.a_eq_a_as_xs(), e.xs_eq_a_x_xs());
    case Formulation::P24_IV: return std::max(e.as_eq_as_a_x(), e.x_eq_as_xs_x());
    case Formulation::P24_V: return std::max(e.a_eq_xs_as_a(), e.xs_eq_xs_x_a());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown formulation");
}

bool formulation_holds(const Matrix& a, const Matrix& x, Formulation f, const Tolerance& t) {
  return formulation_residual(a, x, f) <= t.eq_tol;
}

ConditionReport involution_laws_check(const Matrix& a, const Tolerance& t) {
  const Matrix x = dagger(a, t);
  ConditionReport report;
  report.tolerance = t;
  const double adj = relative_diff(dagger(a.adjoint(), t), x.adjoint());
  report.add("ADJOINT_COMMUTES", adj <= t.eq_tol, adj);
  const double dbl = relative_diff(dagger(x, t), a);
  report.add("DOUBLE_DAGGER", dbl <= t.eq_tol, dbl);
  return report;
}

}  // namespace mpinv
