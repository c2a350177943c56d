#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "mpinv/condition_report.hpp"
#include "mpinv/matrix.hpp"
#include "mpinv/svd.hpp"

namespace mpinv {

/// The four defining equations of the Moore-Penrose inverse, evaluated as
/// residuals.  `relative[k]` is `absolute[k] / max(1, ||a||_F, ||x||_F)`.
///
///   r1: ||a x a - a||      r2: ||x a x - x||
///   r3: ||(a x)^* - a x||  r4: ||(x a)^* - x a||
struct PenroseResiduals {
  std::array<double, 4> relative{};
  std::array<double, 4> absolute{};

  double max_relative() const;
};

PenroseResiduals penrose_residuals(const Matrix& a, const Matrix& x);

struct PinvResult {
  Matrix pinv;
  std::size_t rank = 0;
  PenroseResiduals residuals;
};

/// V * Sigma^+ * U^*, inverting only singular values above the rank
/// threshold.  Throws Error{Precondition} if any Penrose residual of the
/// result exceeds t.eq_tol.
PinvResult pinv(const Matrix& a, const Tolerance& t = {});

/// Same, reusing an existing factorization of `a`.
PinvResult pinv(const Matrix& a, const Svd& f, const Tolerance& t = {});

/// Pseudoinverse of the computed product lhs * rhs.  Rounding in the product
/// is of order eps * ||lhs|| * ||rhs||, which can exceed eps * ||lhs * rhs||
/// by orders of magnitude when the factors nearly annihilate each other, so
/// the rank cut-off is measured against ||lhs||_F * ||rhs||_F instead.
PinvResult pinv_of_product(const Matrix& lhs, const Matrix& rhs, const Tolerance& t = {});

/// Shorthand for pinv(a, t).pinv.
Matrix dagger(const Matrix& a, const Tolerance& t = {});

/// The equivalent reformulations of the Penrose system.  The P21_* entries
/// are single equations, each equivalent to a pair of Penrose equations; the
/// rest are conjunctions of two equations, each pair equivalent to x = a^+.
enum class Formulation {
  P21_I,    // a = x* a* a
  P21_II,   // a = a a* x*
  P21_III,  // x = x x* a*
  P21_IV,   // x = a* x* x
  P22_II,   // a = x* a* a  and  x = a* x* x
  P22_III,  // a = a a* x*  and  x = x x* a*
  R23_II,   // a* = a* a x  and  x* = x* x a
  R23_III,  // a* = x a a*  and  x* = a x x*
  P24_II,   // a* = x a a*  and  x = x x* a*
  P24_III,  // a = a a* x*  and  x* = a x x*
  P24_IV,   // a* = a* a x  and  x = a* x* x
  P24_V,    // a = x* a* a  and  x* = x* x a
};

inline constexpr std::array kAllFormulations = {
    Formulation::P21_I,   Formulation::P21_II,  Formulation::P21_III, Formulation::P21_IV,
    Formulation::P22_II,  Formulation::P22_III, Formulation::R23_II,  Formulation::R23_III,
    Formulation::P24_II,  Formulation::P24_III, Formulation::P24_IV,  Formulation::P24_V,
};

std::string_view to_string(Formulation f);
Formulation formulation_from_string(std::string_view name);

/// Largest relative residual over the formulation's equation(s).
double formulation_residual(const Matrix& a, const Matrix& x, Formulation f);

bool formulation_holds(const Matrix& a, const Matrix& x, Formulation f, const Tolerance& t = {});

/// Reports "ADJOINT_COMMUTES" ((a^*)^+ = (a^+)^*) and "DOUBLE_DAGGER"
/// ((a^+)^+ = a).  Both always hold; the residuals are the point.
ConditionReport involution_laws_check(const Matrix& a, const Tolerance& t = {});

}  // namespace mpinv
