#include <doctest.h>

#include "../oracle.hpp"
#include "mpinv/harness.hpp"
#include "mpinv/isometry.hpp"
#include "mpinv/mp_hermitian.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"
#include "mpinv/svd.hpp"

using namespace mpinv;

namespace {
const Matrix kShift{{0.0, 1.0}, {0.0, 0.0}};
const Matrix kInvolution{{1.0, 1.0}, {0.0, -1.0}};
}  // namespace

TEST_SUITE("isometry") {

TEST_CASE("conorm examples") {
  CHECK(conorm(Matrix::diagonal({3.0, 2.0, 0.0})) == doctest::Approx(2.0).epsilon(1e-15));
  Rng rng(700);
  CHECK(conorm(rng.unitary(4)) == doctest::Approx(1.0).epsilon(1e-13));
  try {
    (void)conorm(Matrix(2, 2));
    FAIL("accepted zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
    CHECK(std::string(e.what()) == "conorm undefined for the zero element");
  }
}

TEST_CASE("conorm of a planted spectrum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a =
        generate_special(SpecialKind::PrescribedSingularValues, 5, {0, 0, 0, {5.0, 3.0, 0.5}}, seed);
    const double c = conorm(a);
    CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c * operator_norm(dagger(a)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("is_partial_isometry examples") {
  CHECK(is_partial_isometry(kShift));
  CHECK_FALSE(is_partial_isometry(Matrix::diagonal({2.0, 0.0})));
  CHECK(is_partial_isometry(Matrix(2, 3)));
  // Non-square partial isometries are fine too.
  CHECK(is_partial_isometry(Matrix{{1.0, 0.0, 0.0}}));
}

TEST_CASE("prop53_check examples") {
  const ConditionReport shift = prop53_check(kShift);
  CHECK(shift.holds("LHS"));
  CHECK(shift.holds("RHS"));
  CHECK(shift.holds("CONSISTENT"));

  const ConditionReport half = prop53_check(Matrix::diagonal({1.0, 0.5}));
  CHECK_FALSE(half.holds("LHS"));
  CHECK_FALSE(half.holds("RHS"));
  CHECK(half.holds("CONSISTENT"));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const Matrix a = generate_special(SpecialKind::PartialIsometry, n, {1 + seed % n, 0, 0, {}}, seed);
    const Svd f = svd(a);
    for (std::size_t k = 0; k < f.sigma.size(); ++k) {
      CHECK(f.sigma[k] == doctest::Approx(k < 1 + seed % n ? 1.0 : 0.0).epsilon(1e-10));
    }
    const ConditionReport r = prop53_check(a);
    CHECK(r.holds("LHS"));
    CHECK(r.holds("RHS"));
  }
  CHECK_THROWS_AS(prop53_check(Matrix(2, 2)), Error);
}

TEST_CASE("theorem54_check examples") {
  const ConditionReport sign = theorem54_check(Matrix::diagonal({1.0, -1.0, 0.0}));
  CHECK(sign.holds("LHS"));
  CHECK(sign.holds("RHS"));

  // [[1,1],[0,-1]]: a a^* = [[2,-1],[-1,1]] but a^* a = [[1,1],[1,2]].
  const Matrix aas = oracle::multiply(kInvolution, oracle::conj_transpose(kInvolution));
  const Matrix asa = oracle::multiply(oracle::conj_transpose(kInvolution), kInvolution);
  CHECK(aas == Matrix{{2.0, -1.0}, {-1.0, 1.0}});
  CHECK(asa == Matrix{{1.0, 1.0}, {1.0, 2.0}});
  const ConditionReport inv = theorem54_check(kInvolution);
  CHECK_FALSE(inv.holds("LHS"));
  CHECK_FALSE(inv.holds("RHS"));
  CHECK(inv.holds("CONSISTENT"));

  const ConditionReport shift = theorem54_check(kShift);
  CHECK_FALSE(shift.holds("LHS"));
  CHECK_FALSE(shift.holds("RHS"));
  CHECK_THROWS_AS(theorem54_check(Matrix(2, 3)), Error);
}

TEST_CASE("generate_special examples") {
  SUBCASE("hermitian partial isometry with inertia (1,1,1)") {
    const Matrix a = generate_special(SpecialKind::HermitianPartialIsometry, 3, {0, 1, 1, {}}, 5);
    CHECK(is_mp_hermitian(a));
    CHECK(normality_residual(a) <= 1e-12);
    const ConditionReport r = theorem54_check(a);
    CHECK(r.holds("LHS"));
    CHECK(r.holds("RHS"));
  }
  SUBCASE("partial isometry of rank 2") {
    const Matrix a = generate_special(SpecialKind::PartialIsometry, 4, {2, 0, 0, {}}, 5);
    const Svd f = svd(a);
    const std::vector<double> expected{1.0, 1.0, 0.0, 0.0};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(f.sigma[k] - expected[k]) <= 1e-10);
  }
  SUBCASE("unit-modulus scalar") {
    const Matrix a = generate_special(SpecialKind::PrescribedSingularValues, 1, {0, 0, 0, {1.0}}, 5);
    CHECK(std::abs(a(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("deterministic per seed") {
    const SpecialParams p{2, 0, 0, {}};
    CHECK(generate_special(SpecialKind::PartialIsometry, 4, p, 1) ==
          generate_special(SpecialKind::PartialIsometry, 4, p, 1));
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(generate_special(SpecialKind::PartialIsometry, 2, {3, 0, 0, {}}, 0), Error);
    CHECK_THROWS_AS(generate_special(SpecialKind::HermitianPartialIsometry, 2, {0, 2, 1, {}}, 0),
                    Error);
    CHECK_THROWS_AS(generate_special(SpecialKind::PrescribedSingularValues, 2, {0, 0, 0, {-1.0}}, 0),
                    Error);
    CHECK_THROWS_AS(generate_special(SpecialKind::PrescribedSingularValues, 1, {0, 0, 0, {1.0, 1.0}}, 0),
                    Error);
    CHECK_THROWS_AS(generate_special(SpecialKind::PartialIsometry, 0, {}, 0), Error);
  }
}

TEST_CASE("classify examples") {
  const ClassificationReport sign = classify(Matrix::diagonal({1.0, -1.0, 0.0}));
  CHECK(sign.regular);
  CHECK(sign.hermitian);
  CHECK(sign.normal);
  CHECK(sign.partial_isometry);
  CHECK(sign.mp_hermitian);
  REQUIRE(sign.conorm);
  CHECK(*sign.conorm == doctest::Approx(1.0));
  CHECK(sign.rank == 2);

  const ClassificationReport zero = classify(Matrix(2, 2));
  CHECK_FALSE(zero.conorm.has_value());
  CHECK(zero.partial_isometry);
  CHECK(zero.rank == 0);

  const ClassificationReport inv = classify(kInvolution);
  CHECK(inv.mp_hermitian);
  CHECK_FALSE(inv.normal);
  CHECK_FALSE(inv.hermitian);
  CHECK(inv.op_norm == doctest::Approx(oracle::norm2x2(kInvolution)).epsilon(1e-14));
}

TEST_CASE("properties on a mixed corpus") {
  Rng rng(701);
  int bad = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = rng.uniform_index(1, 12);
    Matrix a;
    switch (trial % 4) {
      case 0: a = generate_regular(n, n, rng.uniform_index(0, n), 0.1, 10.0, rng.engine()()); break;
      case 1:
        a = generate_special(SpecialKind::PartialIsometry, n, {rng.uniform_index(0, n), 0, 0, {}},
                             rng.engine()());
        break;
      case 2: {
        const std::size_t pos = rng.uniform_index(0, n);
        a = generate_special(SpecialKind::HermitianPartialIsometry, n,
                             {0, pos, rng.uniform_index(0, n - pos), {}}, rng.engine()());
        break;
      }
      default: a = generate_mp_hermitian(n, rng.uniform_index(0, n), rng.engine()()); break;
    }
    const ClassificationReport c = classify(a);
    if (c.rank > 0) {
      if (std::abs(*c.conorm * c.pinv_norm - 1.0) > 1e-9) ++bad;
      if (!prop53_check(a).holds("CONSISTENT")) ++bad;
    }
    if (!theorem54_check(a).holds("CONSISTENT")) ++bad;
    const Matrix as = a.adjoint();
    if (is_partial_isometry(as) != c.partial_isometry) ++bad;
    if (is_hermitian_idempotent(as * a) != c.partial_isometry) ++bad;
    if (is_hermitian_idempotent(a * as) != c.partial_isometry) ++bad;
  }
  CHECK(bad == 0);
}

}  // TEST_SUITE
