#include "mpinv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "mpinv/isometry.hpp"
#include "mpinv/mp_hermitian.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"
#include "mpinv/reverse_order.hpp"
#include "mpinv/svd.hpp"

namespace mpinv {

Matrix generate_regular(std::size_t m, std::size_t n, std::size_t rank, double sv_low,
                        double sv_high, std::uint64_t seed) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::InvalidArgument, "generate_regular: dimensions must be positive");
  }
  if (rank > std::min(m, n)) {
    throw Error(ErrorCode::InvalidArgument, "generate_regular: rank exceeds min(m, n)");
  }
  if (!(sv_low > 0.0) || !(sv_low <= sv_high) || !std::isfinite(sv_high)) {
    throw Error(ErrorCode::InvalidArgument,
                "generate_regular: need 0 < sv_low <= sv_high < inf");
  }
  Rng rng(seed);
  const Matrix u = rng.orthonormal_columns(m, rank);
  const Matrix v = rng.orthonormal_columns(n, rank);
  std::vector<double> sigma(rank);
  for (double& s : sigma) s = sv_low == sv_high ? sv_low : rng.uniform(sv_low, sv_high);
  return compose_svd(u, sigma, v);
}

namespace {

constexpr double kRolSvLow = 0.5;
constexpr double kRolSvHigh = 2.0;

// Uniform rank in [0, max_rank] with rank zero floored at 5%.
std::size_t draw_rank(Rng& rng, std::size_t max_rank) {
  if (rng.bernoulli(0.05)) return 0;
  return rng.uniform_index(0, max_rank);
}

std::uint64_t draw_seed(Rng& rng) { return rng.engine()(); }

}  // namespace

std::string_view to_string(RolPairMode mode) {
  switch (mode) {
    case RolPairMode::ForcedUnitary: return "forced_unitary";
    case RolPairMode::ForcedPinv: return "forced_pinv";
    case RolPairMode::Random: return "random";
  }
  return "?";
}

RolPairMode rol_pair_mode_from_string(std::string_view name) {
  if (name == "forced_unitary") return RolPairMode::ForcedUnitary;
  if (name == "forced_pinv") return RolPairMode::ForcedPinv;
  if (name == "random") return RolPairMode::Random;
  throw Error(ErrorCode::InvalidArgument, "unknown pair mode " + std::string(name));
}

std::pair<Matrix, Matrix> generate_rol_pair(std::size_t n, RolPairMode mode, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "generate_rol_pair: n must be positive");
  Rng rng(seed);
  switch (mode) {
    case RolPairMode::ForcedUnitary: {
      Matrix a = rng.unitary(n);
      const std::size_t k = rng.uniform_index(1, n);
      const std::size_t rb = draw_rank(rng, std::min(n, k));
      Matrix b = generate_regular(n, k, rb, kRolSvLow, kRolSvHigh, draw_seed(rng));
      return {std::move(a), std::move(b)};
    }
    case RolPairMode::ForcedPinv: {
      const std::size_t m = rng.uniform_index(1, n);
      const std::size_t ra = draw_rank(rng, std::min(m, n));
      Matrix a = generate_regular(m, n, ra, kRolSvLow, kRolSvHigh, draw_seed(rng));
      Matrix b = dagger(a);
      return {std::move(a), std::move(b)};
    }
    case RolPairMode::Random: {
      const std::size_t m = rng.uniform_index(1, n);
      const std::size_t k = rng.uniform_index(1, n);
      const std::size_t ra = draw_rank(rng, std::min(m, n));
      const std::size_t rb = draw_rank(rng, std::min(n, k));
      Matrix a = generate_regular(m, n, ra, kRolSvLow, kRolSvHigh, draw_seed(rng));
      Matrix b = generate_regular(n, k, rb, kRolSvLow, kRolSvHigh, draw_seed(rng));
      return {std::move(a), std::move(b)};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "generate_rol_pair: unknown mode");
}

std::string_view to_string(FuzzSuite suite) {
  switch (suite) {
    case FuzzSuite::Penrose: return "penrose";
    case FuzzSuite::Formulations: return "formulations";
    case FuzzSuite::Rol: return "rol";
    case FuzzSuite::Mph: return "mph";
    case FuzzSuite::Isometry: return "isometry";
    case FuzzSuite::All: return "all";
  }
  return "?";
}

FuzzSuite fuzz_suite_from_string(std::string_view name) {
  for (FuzzSuite s : {FuzzSuite::Penrose, FuzzSuite::Formulations, FuzzSuite::Rol,
                      FuzzSuite::Mph, FuzzSuite::Isometry, FuzzSuite::All}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fuzz suite " + std::string(name));
}

void FuzzConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "fuzz: trials must be >= 1");
  if (max_dim < 1 || max_dim > 64) {
    throw Error(ErrorCode::InvalidArgument, "fuzz: max_dim must be in [1, 64]");
  }
  tolerance.validate();
}

namespace {

// Collects failures and verdicts for one trial.
class Trial {
 public:
  Trial(FuzzSuite suite, std::uint64_t seed, std::size_t index)
      : suite_(suite), seed_(seed), index_(index) {
    out_.record.suite = suite;
    out_.record.trial_index = index;
  }

  void family(std::string name) { out_.record.family = std::move(name); }
  void input(std::string name, const Matrix& m) { inputs_.emplace_back(std::move(name), m); }
  void verdict(const std::string& name, bool v) { out_.record.verdicts[name] = v; }
  void residual(const std::string& name, double r) { out_.residuals[name] = r; }
  void count(const std::string& name) { ++out_.stats[name]; }

  /// Records a failure unless `ok`.
  void expect(bool ok, std::string what, std::map<std::string, double> residuals = {}) {
    if (ok) return;
    FuzzFailure f;
    f.suite = suite_;
    f.seed = seed_;
    f.trial_index = index_;
    f.condition_pair = std::move(what);
    f.residuals = std::move(residuals);
    f.matrices = inputs_;
    out_.failures.push_back(std::move(f));
  }

  TrialOutcome take() { return std::move(out_); }

 private:
  FuzzSuite suite_;
  std::uint64_t seed_;
  std::size_t index_;
  std::vector<std::pair<std::string, Matrix>> inputs_;
  TrialOutcome out_;
};

void penrose_trial(Trial& trial, Rng& rng, std::size_t max_dim, const Tolerance& t) {
  const std::size_t m = rng.uniform_index(1, max_dim);
  const std::size_t n = rng.uniform_index(1, max_dim);
  Matrix a;
  if (rng.bernoulli(0.2)) {
    trial.family("gaussian");
    a = rng.gaussian(m, n);
  } else {
    trial.family("low_rank");
    a = generate_regular(m, n, draw_rank(rng, std::min(m, n)), 0.1, 10.0, draw_seed(rng));
  }
  trial.input("a", a);

  const PinvResult p = pinv(a, t);
  const auto& rel = p.residuals.relative;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string name = "r" + std::to_string(k + 1);
    trial.residual(name, rel[k]);
    trial.verdict("PENROSE_" + name, rel[k] <= t.eq_tol);
    trial.expect(rel[k] <= t.eq_tol, "PENROSE_" + name, {{name, rel[k]}});
  }

  const PinvResult pp = pinv(p.pinv, t);
  const double dbl = relative_diff(pp.pinv, a);
  trial.residual("double_dagger", dbl);
  trial.verdict("DOUBLE_DAGGER", dbl <= t.eq_tol);
  trial.expect(dbl <= t.eq_tol, "DOUBLE_DAGGER", {{"double_dagger", dbl}});
  trial.expect(pp.rank == p.rank, "RANK_PRESERVED",
               {{"rank_a", double(p.rank)}, {"rank_pinv", double(pp.rank)}});

  const double adj = relative_diff(dagger(a.adjoint(), t), p.pinv.adjoint());
  trial.residual("adjoint_commutes", adj);
  trial.verdict("ADJOINT_COMMUTES", adj <= t.eq_tol);
  trial.expect(adj <= t.eq_tol, "ADJOINT_COMMUTES", {{"adjoint_commutes", adj}});

  const Matrix left = a * p.pinv;
  const Matrix right = p.pinv * a;
  const double proj = std::max(relative_diff(pinv_of_product(a, p.pinv, t).pinv, left),
                               relative_diff(pinv_of_product(p.pinv, a, t).pinv, right));
  trial.residual("projection_self_dagger", proj);
  trial.expect(proj <= t.eq_tol, "PROJECTION_SELF_DAGGER", {{"projection_self_dagger", proj}});
}

void formulations_trial(Trial& trial, Rng& rng, std::size_t max_dim, const Tolerance& t) {
  const std::size_t m = rng.uniform_index(1, max_dim);
  const std::size_t n = rng.uniform_index(1, max_dim);
  const std::size_t r = rng.uniform_index(1, std::min(m, n));
  trial.family("regular");
  const Matrix a = generate_regular(m, n, r, kRolSvLow, kRolSvHigh, draw_seed(rng));
  const Matrix x = dagger(a, t);

  Matrix delta = rng.gaussian(n, m);
  delta *= 1e-3 * x.frobenius_norm() / delta.frobenius_norm();
  const Matrix perturbed = x + delta;
  trial.input("a", a);
  trial.input("x_perturbed", perturbed);

  for (Formulation f : kAllFormulations) {
    const std::string name(to_string(f));
    const double exact = formulation_residual(a, x, f);
    const double off = formulation_residual(a, perturbed, f);
    trial.verdict(name, exact <= t.eq_tol);
    trial.verdict(name + "_perturbed", off <= t.eq_tol);
    trial.expect(exact <= t.eq_tol, name + " on pinv", {{"residual", exact}});
    trial.expect(off > t.eq_tol, name + " on perturbed pinv", {{"residual", off}});
  }
}

// Unitary images of the 2x2 fixture pairs: (a, b) -> (l U a W^*, m W b Z^*)
// preserves every reverse-order verdict.
std::pair<Matrix, Matrix> fixture_pair(int which, Rng& rng) {
  Matrix a = Matrix::diagonal({1.0, 0.0});
  Matrix b;
  switch (which) {
    case 0: b = Matrix{{0.0, 1.0}, {0.0, 0.0}}; break;  // reverse order law holds
    case 1: b = Matrix{{1.0, 0.0}, {1.0, 0.0}}; break;  // fails
    default: b = Matrix{{1.0, 1.0}, {0.0, 1.0}}; break; // fails, generalized inverse holds
  }
  const Matrix u = rng.unitary(2);
  const Matrix w = rng.unitary(2);
  const Matrix z = rng.unitary(2);
  const double la = rng.uniform(0.5, 2.0);
  const double lb = rng.uniform(0.5, 2.0);
  return {la * (u * a * w.adjoint()), lb * (w * b * z.adjoint())};
}

// Zero with probability 0.3, otherwise modulus in [0.5, 2] with random phase.
Complex random_diagonal_entry(Rng& rng) {
  if (rng.bernoulli(0.3)) return 0.0;
  return std::polar(rng.uniform(kRolSvLow, kRolSvHigh), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

void rol_trial(Trial& trial, Rng& rng, std::size_t max_dim, const Tolerance& t) {
  const double u = rng.uniform(0.0, 1.0);
  const std::size_t n = rng.uniform_index(1, max_dim);
  Matrix a, b;
  bool expect_holds = false, expect_fails = false, expect_gi = false;
  if (u < 0.40) {
    trial.family("random");
    std::tie(a, b) = generate_rol_pair(n, RolPairMode::Random, draw_seed(rng));
  } else if (u < 0.55) {
    trial.family("forced_unitary");
    std::tie(a, b) = generate_rol_pair(n, RolPairMode::ForcedUnitary, draw_seed(rng));
    expect_holds = true;
  } else if (u < 0.70) {
    // Square diagonal factors commute entrywise, so (ab)^+ = b^+ a^+.
    trial.family("diagonal");
    std::vector<Complex> da(n), db(n);
    for (std::size_t i = 0; i < n; ++i) {
      da[i] = random_diagonal_entry(rng);
      db[i] = random_diagonal_entry(rng);
    }
    a = Matrix::diagonal(da);
    b = Matrix::diagonal(db);
    expect_holds = true;
  } else if (u < 0.85) {
    trial.family("forced_pinv");
    std::tie(a, b) = generate_rol_pair(n, RolPairMode::ForcedPinv, draw_seed(rng));
    expect_holds = true;
  } else {
    const int which = static_cast<int>(rng.uniform_index(0, 2));
    static constexpr const char* kNames[] = {"fixture_holding", "fixture_failing",
                                             "fixture_gi_witness"};
    trial.family(kNames[which]);
    std::tie(a, b) = fixture_pair(which, rng);
    expect_holds = which == 0;
    expect_fails = which != 0;
    expect_gi = which == 2;
  }
  trial.input("a", a);
  trial.input("b", b);

  const RolContext ctx(a, b, t);
  std::map<Condition, ConditionResult> res;
  for (Condition c : kAllConditions) {
    res[c] = ctx.evaluate(c);
    trial.verdict(std::string(to_string(c)), res[c].holds);
    trial.residual(std::string(to_string(c)), res[c].residual);
  }

  const auto& rol = res[Condition::ROL_DIRECT];
  for (Condition c : kAllConditions) {
    if (c == Condition::ROL_DIRECT || is_mbekhta(c)) continue;
    trial.expect(res[c].holds == rol.holds, "ROL_DIRECT vs " + std::string(to_string(c)),
                 {{"ROL_DIRECT", rol.residual}, {std::string(to_string(c)), res[c].residual}});
  }
  const auto& gi = res[Condition::MBEKHTA_GI];
  for (Condition c : {Condition::MBEKHTA_COMM, Condition::MBEKHTA_IDEM}) {
    trial.expect(res[c].holds == gi.holds, "MBEKHTA_GI vs " + std::string(to_string(c)),
                 {{"MBEKHTA_GI", gi.residual}, {std::string(to_string(c)), res[c].residual}});
  }
  trial.expect(!rol.holds || gi.holds, "ROL_DIRECT implies MBEKHTA_GI",
               {{"ROL_DIRECT", rol.residual}, {"MBEKHTA_GI", gi.residual}});

  const auto& t31 = res[Condition::T31_II];
  if (t31.holds) {
    const double chain = res[Condition::T31_III].residual;
    trial.expect(chain <= 10.0 * t.eq_tol, "T31_II implies T31_III",
                 {{"T31_II", t31.residual}, {"T31_III", chain}});
  }
  if (expect_holds) trial.expect(rol.holds, "constructed pair must satisfy ROL_DIRECT",
                                 {{"ROL_DIRECT", rol.residual}});
  if (expect_fails) trial.expect(!rol.holds, "fixture pair must violate ROL_DIRECT",
                                 {{"ROL_DIRECT", rol.residual}});
  if (expect_gi) trial.expect(gi.holds, "witness pair must satisfy MBEKHTA_GI",
                              {{"MBEKHTA_GI", gi.residual}});

  trial.count(rol.holds ? "rol_holds" : "rol_fails");
  if (gi.holds && !rol.holds) trial.count("mbekhta_gi_without_rol");
  if (t31.holds && !res[Condition::R35_COMM].holds) trial.count("t31_ii_without_r35_comm");
}

// Oblique projection S diag(1.., 0..) S^{-1}: a^3 = a but a^2 not hermitian.
Matrix oblique_projection(std::size_t n, std::size_t rank, Rng& rng) {
  const Matrix su = rng.unitary(n);
  const Matrix sv = rng.unitary(n);
  std::vector<double> s(n), s_inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = rng.uniform(1.0, 10.0);
    s_inv[i] = 1.0 / s[i];
  }
  Matrix d(n, n);
  for (std::size_t i = 0; i < rank; ++i) d(i, i) = 1.0;
  return compose_svd(su, s, sv) * d * compose_svd(sv, s_inv, su);
}

void mph_trial(Trial& trial, Rng& rng, std::size_t max_dim, const Tolerance& t) {
  const std::size_t n = rng.uniform_index(1, max_dim);
  const double u = rng.uniform(0.0, 1.0);
  Matrix a;
  bool generated = false;
  std::size_t k = 0;
  if (u < 0.5) {
    trial.family("generated");
    k = rng.uniform_index(0, n);
    a = generate_mp_hermitian(n, k, draw_seed(rng));
    generated = true;
  } else if (u < 0.65) {
    trial.family("hermitian_partial_isometry");
    const std::size_t pos = rng.uniform_index(0, n);
    const std::size_t neg = rng.uniform_index(0, n - pos);
    a = generate_special(SpecialKind::HermitianPartialIsometry, n, {0, pos, neg, {}},
                         draw_seed(rng));
  } else if (u < 0.75) {
    trial.family("oblique_projection");
    a = oblique_projection(n, rng.uniform_index(1, n), rng);
  } else {
    trial.family("random");
    a = generate_regular(n, n, draw_rank(rng, n), 0.1, 10.0, draw_seed(rng));
  }
  trial.input("a", a);

  const bool mph = is_mp_hermitian(a, t);
  const bool alg = algebraic_mph_check(a, t);
  const bool adj = is_mp_hermitian(a.adjoint(), t);
  trial.verdict("MP_HERMITIAN", mph);
  trial.verdict("ALGEBRAIC", alg);
  trial.expect(mph == alg, "MP_HERMITIAN vs ALGEBRAIC");
  trial.expect(mph == adj, "MP_HERMITIAN vs ADJOINT_MP_HERMITIAN");

  const ConditionReport t51 = theorem51_check(a, t);
  bool all51 = true;
  for (const auto& v : t51.verdicts) {
    trial.verdict("T51_" + v.name, v.holds);
    all51 = all51 && v.holds;
  }
  trial.expect(all51 == mph, "MP_HERMITIAN vs THEOREM51_CONJUNCTION");

  if (generated) {
    trial.expect(mph, "generated fixture must be MP-hermitian");
    const std::size_t rank = pinv(a, t).rank;
    trial.expect(rank == k, "generated fixture rank",
                 {{"rank", double(rank)}, {"requested", double(k)}});
  }
  if (!mph) return;

  trial.expect(annihilator_spectrum_check(a, t), "ANNIHILATOR");
  // a^e is a computed product, so its pseudoinverse takes the cut-off of one.
  Matrix power = a;
  for (int e = 2; e <= 5; ++e) {
    const Matrix power_dag = pinv_of_product(power, a, t).pinv;
    power = power * a;
    const double res = relative_diff(power_dag, power);
    trial.expect(res <= t.eq_tol, "POWER_CLOSURE a^" + std::to_string(e), {{"residual", res}});
  }
  const MphDecomposition d = theorem52_decompose(a, t);
  trial.residual("orthogonality", d.orthogonality_residual);
  trial.residual("involution", d.involution_residual);
  trial.residual("reconstruction", d.reconstruction_residual);
  trial.expect(d.h1.dim() + d.h2.dim() == n, "DECOMPOSITION_DIMENSIONS");
  trial.expect(d.orthogonality_residual <= t.eq_tol && d.involution_residual <= t.eq_tol &&
                   d.reconstruction_residual <= t.eq_tol,
               "DECOMPOSITION_RESIDUALS",
               {{"orthogonality", d.orthogonality_residual},
                {"involution", d.involution_residual},
                {"reconstruction", d.reconstruction_residual}});
}

void isometry_trial(Trial& trial, Rng& rng, std::size_t max_dim, const Tolerance& t) {
  const std::size_t n = rng.uniform_index(1, max_dim);
  const double u = rng.uniform(0.0, 1.0);
  Matrix a;
  enum { Other, Hpi, NonNormalMph, NonHermitianPi } expectation = Other;
  if (u < 0.3) {
    trial.family("random");
    a = generate_regular(n, n, draw_rank(rng, n), 0.1, 10.0, draw_seed(rng));
  } else if (u < 0.5) {
    trial.family("partial_isometry");
    const std::size_t r = rng.uniform_index(0, n);
    a = generate_special(SpecialKind::PartialIsometry, n, {r, 0, 0, {}}, draw_seed(rng));
    if (r > 0) expectation = NonHermitianPi;
  } else if (u < 0.7) {
    trial.family("hermitian_partial_isometry");
    const std::size_t pos = rng.uniform_index(0, n);
    const std::size_t neg = rng.uniform_index(0, n - pos);
    a = generate_special(SpecialKind::HermitianPartialIsometry, n, {0, pos, neg, {}},
                         draw_seed(rng));
    expectation = Hpi;
  } else if (u < 0.85 && n >= 2) {
    trial.family("non_normal_mph");
    a = generate_mp_hermitian(n, rng.uniform_index(2, n), draw_seed(rng));
    expectation = NonNormalMph;
  } else {
    trial.family("prescribed_singular_values");
    std::vector<double> sv(rng.uniform_index(1, n));
    for (double& s : sv) s = rng.bernoulli(0.3) ? 1.0 : rng.uniform(0.1, 3.0);
    a = generate_special(SpecialKind::PrescribedSingularValues, n, {0, 0, 0, sv},
                         draw_seed(rng));
  }
  trial.input("a", a);

  const ClassificationReport c = classify(a, t);
  trial.verdict("PARTIAL_ISOMETRY", c.partial_isometry);
  trial.verdict("MP_HERMITIAN", c.mp_hermitian);
  trial.verdict("HERMITIAN", c.hermitian);
  trial.verdict("NORMAL", c.normal);

  if (c.rank > 0) {
    const double duality = std::abs(*c.conorm * c.pinv_norm - 1.0);
    trial.residual("conorm_duality", duality);
    trial.expect(duality <= t.eq_tol, "CONORM_DUALITY", {{"conorm_duality", duality}});
    const ConditionReport p53 = prop53_check(a, t);
    trial.verdict("P53_LHS", p53.holds("LHS"));
    trial.verdict("P53_RHS", p53.holds("RHS"));
    trial.expect(p53.holds("CONSISTENT"), "PROP53 LHS vs RHS",
                 {{"LHS", p53.at("LHS").residual}, {"RHS", p53.at("RHS").residual}});
    if (c.partial_isometry) {
      trial.expect(std::abs(c.op_norm - 1.0) <= t.eq_tol && std::abs(*c.conorm - 1.0) <= t.eq_tol,
                   "PARTIAL_ISOMETRY unit norms",
                   {{"op_norm", c.op_norm}, {"conorm", *c.conorm}});
    }
  }

  const ConditionReport t54 = theorem54_check(a, t);
  trial.verdict("T54_LHS", t54.holds("LHS"));
  trial.verdict("T54_RHS", t54.holds("RHS"));
  trial.expect(t54.holds("CONSISTENT"), "THEOREM54 LHS vs RHS",
               {{"LHS", t54.at("LHS").residual}, {"RHS", t54.at("RHS").residual}});

  const Matrix as = a.adjoint();
  trial.expect(is_partial_isometry(as, t) == c.partial_isometry,
               "PARTIAL_ISOMETRY vs ADJOINT_PARTIAL_ISOMETRY");
  trial.expect(is_hermitian_idempotent(as * a, t) == c.partial_isometry,
               "PARTIAL_ISOMETRY vs GRAM_IDEMPOTENT");
  trial.expect(is_hermitian_idempotent(a * as, t) == c.partial_isometry,
               "PARTIAL_ISOMETRY vs CO_GRAM_IDEMPOTENT");

  switch (expectation) {
    case Hpi:
      trial.expect(t54.holds("LHS") && t54.holds("RHS"), "hermitian partial isometry family");
      break;
    case NonNormalMph:
    case NonHermitianPi:
      trial.expect(!t54.holds("LHS") && !t54.holds("RHS"), "non-normal / non-hermitian family");
      break;
    case Other:
      break;
  }
}

using TrialFn = void (*)(Trial&, Rng&, std::size_t, const Tolerance&);

TrialFn trial_fn(FuzzSuite suite) {
  switch (suite) {
    case FuzzSuite::Penrose: return penrose_trial;
    case FuzzSuite::Formulations: return formulations_trial;
    case FuzzSuite::Rol: return rol_trial;
    case FuzzSuite::Mph: return mph_trial;
    case FuzzSuite::Isometry: return isometry_trial;
    case FuzzSuite::All: break;
  }
  throw Error(ErrorCode::InvalidArgument, "run_trial: suite 'all' has no single trial");
}

}  // namespace

TrialOutcome run_trial(FuzzSuite suite, std::uint64_t seed, std::size_t index,
                       std::size_t max_dim, const Tolerance& t) {
  const TrialFn fn = trial_fn(suite);
  // Suites draw from distinct streams so "all" does not reuse instances.
  Rng rng(trial_seed(seed ^ mix64(static_cast<std::uint64_t>(suite)), index));
  Trial trial(suite, seed, index);
  try {
    fn(trial, rng, max_dim, t);
  } catch (const std::exception& e) {
    trial.expect(false, std::string("exception: ") + e.what());
  }
  return trial.take();
}

FuzzReport fuzz(const FuzzConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<FuzzSuite> suites;
  if (config.suite == FuzzSuite::All) {
    suites = {FuzzSuite::Penrose, FuzzSuite::Formulations, FuzzSuite::Rol, FuzzSuite::Mph,
              FuzzSuite::Isometry};
  } else {
    suites = {config.suite};
  }

  FuzzReport report;
  report.suite = config.suite;
  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(config.trials)));

  for (FuzzSuite suite : suites) {
    std::vector<TrialOutcome> outcomes(config.trials);
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < config.trials; i += workers) {
        outcomes[i] = run_trial(suite, config.seed, i, config.max_dim, config.tolerance);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    const std::string prefix = std::string(to_string(suite)) + ".";
    for (auto& o : outcomes) {
      for (auto& f : o.failures) report.failures.push_back(std::move(f));
      for (const auto& [k, v] : o.stats) report.stats[prefix + k] += v;
      ++report.stats[prefix + "family." + o.record.family];
      if (config.record_verdicts) report.trials.push_back(std::move(o.record));
    }
    report.trials_run += config.trials;
  }
  report.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace mpinv
