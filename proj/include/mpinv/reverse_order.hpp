#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "mpinv/condition_report.hpp"
#include "mpinv/matrix.hpp"

namespace mpinv {

/// Auxiliary elements built from a pair (a, b) with ab defined; all n x n
/// where a is m x n.
///
///   p = b b^+      q = a^+ (a^+)^*      r = b b^*      s = a^+ a
///
/// plus q^+ (which equals a^* a) and r^+ (which equals (b b^*)^+).
struct RolIntermediates {
  Matrix p;
  Matrix q;
  Matrix r;
  Matrix s;
  Matrix q_dag;
  Matrix r_dag;
};

RolIntermediates rol_intermediates(const Matrix& a, const Matrix& b, const Tolerance& t = {});

/// Reverse-order-law conditions.  For every (a, b) each of these is
/// equivalent to ROL_DIRECT, except the three MBEKHTA_* entries, which are
/// equivalent to each other and decide whether b^+ a^+ is merely a
/// generalized inverse of ab.
enum class Condition {
  G1,
  G2,
  G3,
  G4,
  G5,
  MBEKHTA_GI,
  MBEKHTA_COMM,
  MBEKHTA_IDEM,
  T31_II,
  T31_III,
  T32_II,
  T32_III,
  T33_II,
  T33_III,
  T34_II,
  T34_III,
  R35_COMM,
  R35_DAG_COMM,
  ROL_DIRECT,
};

inline constexpr std::array kAllConditions = {
    Condition::G1,           Condition::G2,          Condition::G3,
    Condition::G4,           Condition::G5,          Condition::MBEKHTA_GI,
    Condition::MBEKHTA_COMM, Condition::MBEKHTA_IDEM, Condition::T31_II,
    Condition::T31_III,      Condition::T32_II,      Condition::T32_III,
    Condition::T33_II,       Condition::T33_III,     Condition::T34_II,
    Condition::T34_III,      Condition::R35_COMM,    Condition::R35_DAG_COMM,
    Condition::ROL_DIRECT,
};

std::string_view to_string(Condition c);
Condition condition_from_string(std::string_view name);
bool is_mbekhta(Condition c);

struct ConditionResult {
  bool holds = false;
  /// Relative Frobenius residual; max over the equations of a conjunction.
  double residual = 0.0;
};

/// Everything a condition evaluation needs, computed once per pair.
class RolContext {
 public:
  RolContext(const Matrix& a, const Matrix& b, const Tolerance& t = {});

  ConditionResult evaluate(Condition c) const;

  const RolIntermediates& intermediates() const { return mid_; }
  std::size_t rank_a() const { return rank_a_; }
  std::size_t rank_b() const { return rank_b_; }
  std::size_t rank_ab() const { return rank_ab_; }

 private:
  double residual(Condition c) const;

  Tolerance tol_;
  Matrix a_, b_, ab_;
  Matrix a_dag_, b_dag_, ab_dag_;
  Matrix a_adj_, b_adj_, a_dag_adj_, b_dag_adj_;
  RolIntermediates mid_;
  std::size_t rank_a_ = 0, rank_b_ = 0, rank_ab_ = 0;
};

ConditionResult evaluate_condition(const Matrix& a, const Matrix& b, Condition c,
                                   const Tolerance& t = {});

struct RolReport {
  ConditionReport conditions;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t rank_ab = 0;

  bool holds(Condition c) const { return conditions.holds(to_string(c)); }
  double residual(Condition c) const { return conditions.at(to_string(c)).residual; }
};

/// Evaluates every Condition, in declaration order.
RolReport full_report(const Matrix& a, const Matrix& b, const Tolerance& t = {});

}  // namespace mpinv
