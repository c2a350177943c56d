#include "mpinv/reverse_order.hpp"

#include <algorithm>

#include "mpinv/pinv.hpp"

namespace mpinv {
namespace {

struct Name {
  Condition id;
  std::string_view name;
};

constexpr std::array kNames = {
    Name{Condition::G1, "G1"},
    Name{Condition::G2, "G2"},
    Name{Condition::G3, "G3"},
    Name{Condition::G4, "G4"},
    Name{Condition::G5, "G5"},
    Name{Condition::MBEKHTA_GI, "MBEKHTA_GI"},
    Name{Condition::MBEKHTA_COMM, "MBEKHTA_COMM"},
    Name{Condition::MBEKHTA_IDEM, "MBEKHTA_IDEM"},
    Name{Condition::T31_II, "T31_II"},
    Name{Condition::T31_III, "T31_III"},
    Name{Condition::T32_II, "T32_II"},
    Name{Condition::T32_III, "T32_III"},
    Name{Condition::T33_II, "T33_II"},
    Name{Condition::T33_III, "T33_III"},
    Name{Condition::T34_II, "T34_II"},
    Name{Condition::T34_III, "T34_III"},
    Name{Condition::R35_COMM, "R35_COMM"},
    Name{Condition::R35_DAG_COMM, "R35_DAG_COMM"},
    Name{Condition::ROL_DIRECT, "ROL_DIRECT"},
};

using Factors = std::initializer_list<const Matrix*>;

double norm_product(Factors fs) {
  double s = 1.0;
  for (const Matrix* m : fs) s *= m->frobenius_norm();
  return s;
}

// ||prod(lhs) - prod(rhs)|| / max(prod ||lhs_i||, prod ||rhs_i||).  The
// denominator is homogeneous in every operand, so the residual does not
// change when a or b is rescaled.
double equation(Factors lhs, Factors rhs) {
  const double scale = std::max(norm_product(lhs), norm_product(rhs));
  if (scale == 0.0) return 0.0;
  return (product(lhs) - product(rhs)).frobenius_norm() / scale;
}

// x (u v - v u) y = 0
double commutator(const Matrix& x, const Matrix& u, const Matrix& v, const Matrix& y) {
  return equation({&x, &u, &v, &y}, {&x, &v, &u, &y});
}

void require_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "reverse order: ab undefined for " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

std::string_view to_string(Condition c) {
  for (const auto& n : kNames) {
    if (n.id == c) return n.name;
  }
  return "?";
}

Condition condition_from_string(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown condition " + std::string(name));
}

bool is_mbekhta(Condition c) {
  return c == Condition::MBEKHTA_GI || c == Condition::MBEKHTA_COMM ||
         c == Condition::MBEKHTA_IDEM;
}

RolContext::RolContext(const Matrix& a, const Matrix& b, const Tolerance& t)
    : tol_(t), a_(a), b_(b) {
  t.validate();
  require_product(a, b);
  ab_ = a * b;
  auto pa = pinv(a, t);
  auto pb = pinv(b, t);
  auto pab = pinv_of_product(a, b, t);
  rank_a_ = pa.rank;
  rank_b_ = pb.rank;
  rank_ab_ = pab.rank;
  a_dag_ = std::move(pa.pinv);
  b_dag_ = std::move(pb.pinv);
  ab_dag_ = std::move(pab.pinv);
  a_adj_ = a.adjoint();
  b_adj_ = b.adjoint();
  a_dag_adj_ = a_dag_.adjoint();
  b_dag_adj_ = b_dag_.adjoint();

  mid_.p = b_ * b_dag_;
  mid_.q = a_dag_ * a_dag_adj_;
  mid_.r = b_ * b_adj_;
  mid_.s = a_dag_ * a_;
  // ab, q and r are computed products; their cut-offs follow the factors.
  mid_.q_dag = pinv_of_product(a_dag_, a_dag_adj_, t).pinv;
  mid_.r_dag = pinv_of_product(b_, b_adj_, t).pinv;
}

double RolContext::residual(Condition c) const {
  const Matrix& a = a_;
  const Matrix& b = b_;
  const Matrix& as = a_adj_;
  const Matrix& bs = b_adj_;
  const Matrix& ad = a_dag_;
  const Matrix& bd = b_dag_;
  const Matrix& ads = a_dag_adj_;
  const Matrix& bds = b_dag_adj_;
  const Matrix& abd = ab_dag_;
  const auto& [p, q, r, s, qd, rd] = mid_;

  switch (c) {
    case Condition::G1:
    case Condition::ROL_DIRECT:
      return equation({&abd}, {&bd, &ad});
    case Condition::G2:
      return std::max(equation({&ad, &a, &b, &bs, &as}, {&b, &bs, &as}),
                      equation({&b, &bd, &as, &a, &b}, {&as, &a, &b}));
    case Condition::G3:
      return std::max(equation({&s, &r}, {&r, &s}), equation({&as, &a, &p}, {&p, &as, &a}));
    case Condition::G4:
      return equation({&ad, &a, &b, &bs, &as, &a, &b, &bd}, {&b, &bs, &as, &a});
    case Condition::G5:
      return std::max(equation({&ad, &a, &b}, {&b, &abd, &a, &b}),
                      equation({&b, &bd, &as}, {&as, &a, &b, &abd}));
    // Generalized-inverse criterion with a' = a^+, b' = b^+, so its
    // "q" = a'a is s here and its "p" = bb' is p.
    case Condition::MBEKHTA_GI:
      return equation({&a, &b, &bd, &ad, &a, &b}, {&a, &b});
    case Condition::MBEKHTA_COMM:
      return commutator(a, p, s, b);
    case Condition::MBEKHTA_IDEM:
      return equation({&s, &p, &s, &p}, {&s, &p});
    case Condition::T31_II:
      return std::max(commutator(a, p, q, bds), commutator(a, r, s, bds));
    case Condition::T31_III:
      return std::max(equation({&s, &p, &q, &p}, {&q, &p}), equation({&s, &r, &s, &p}, {&s, &r}));
    case Condition::T32_II:
      return std::max(commutator(bd, q, p, as), commutator(bd, s, r, as));
    case Condition::T32_III:
      return std::max(equation({&p, &q, &p, &s}, {&p, &q}), equation({&p, &s, &r, &s}, {&r, &s}));
    case Condition::T33_II:
      return std::max(commutator(bs, qd, p, ad), commutator(bs, s, rd, ad));
    case Condition::T33_III:
      return std::max(equation({&p, &qd, &p, &s}, {&p, &qd}),
                      equation({&p, &s, &rd, &s}, {&rd, &s}));
    case Condition::T34_II:
      return std::max(commutator(ads, p, qd, b), commutator(ads, rd, s, b));
    case Condition::T34_III:
      return std::max(equation({&s, &p, &qd, &p}, {&qd, &p}),
                      equation({&s, &rd, &s, &p}, {&s, &rd}));
    case Condition::R35_COMM:
      return std::max(equation({&p, &q}, {&q, &p}), equation({&r, &s}, {&s, &r}));
    case Condition::R35_DAG_COMM:
      return std::max(equation({&qd, &p}, {&p, &qd}), equation({&rd, &s}, {&s, &rd}));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown condition");
}

ConditionResult RolContext::evaluate(Condition c) const {
  const double res = residual(c);
  return {res <= tol_.eq_tol, res};
}

RolIntermediates rol_intermediates(const Matrix& a, const Matrix& b, const Tolerance& t) {
  return RolContext(a, b, t).intermediates();
}

ConditionResult evaluate_condition(const Matrix& a, const Matrix& b, Condition c,
                                   const Tolerance& t) {
  return RolContext(a, b, t).evaluate(c);
}

RolReport full_report(const Matrix& a, const Matrix& b, const Tolerance& t) {
  const RolContext ctx(a, b, t);
  RolReport report;
  report.conditions.tolerance = t;
  report.rank_a = ctx.rank_a();
  report.rank_b = ctx.rank_b();
  report.rank_ab = ctx.rank_ab();
  for (Condition c : kAllConditions) {
    const auto res = ctx.evaluate(c);
    report.conditions.add(std::string(to_string(c)), res.holds, res.residual);
  }
  return report;
}

}  // namespace mpinv
