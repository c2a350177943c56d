#include <doctest.h>

#include "../oracle.hpp"
#include "mpinv/harness.hpp"
#include "mpinv/pinv.hpp"
#include "mpinv/random.hpp"

using namespace mpinv;

TEST_SUITE("pinv") {

TEST_CASE("pinv examples") {
  SUBCASE("diag(2,0)") {
    const PinvResult p = pinv(Matrix::diagonal({2.0, 0.0}));
    CHECK(p.pinv == Matrix::diagonal({0.5, 0.0}));
    CHECK(p.rank == 1);
  }
  SUBCASE("identity") {
    for (std::size_t n : {1, 2, 5}) CHECK(pinv(Matrix::identity(n)).pinv == Matrix::identity(n));
  }
  SUBCASE("nilpotent shift against the regularized oracle") {
    const Matrix a{{0.0, 1.0}, {0.0, 0.0}};
    const Matrix expected{{0.0, 0.0}, {1.0, 0.0}};
    CHECK(oracle::max_abs_diff(oracle::tikhonov_pinv(a), expected) <= 1e-10);
    CHECK(oracle::max_abs_diff(pinv(a).pinv, expected) <= 1e-15);
  }
  SUBCASE("zero matrix gives the transposed zero") {
    const PinvResult p = pinv(Matrix(3, 2));
    CHECK(p.pinv == Matrix(2, 3));
    CHECK(p.rank == 0);
  }
}

TEST_CASE("pinv agrees with the regularized oracle on small fixtures") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.uniform_index(1, 6), n = rng.uniform_index(1, 6);
    const std::size_t r = rng.uniform_index(0, std::min(m, n));
    const Matrix a = generate_regular(m, n, r, 0.5, 2.0, rng.engine()());
    CHECK(oracle::max_abs_diff(pinv(a).pinv, oracle::tikhonov_pinv(a)) <= 1e-7);
  }
}

TEST_CASE("pinv of an invertible matrix is its inverse") {
  Rng rng(405);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.uniform_index(1, 8);
    const Matrix a = generate_regular(n, n, n, 0.5, 2.0, rng.engine()());
    CHECK(relative_diff(dagger(a), oracle::inverse(a)) <= 1e-12);
  }
}

TEST_CASE("penrose_residuals examples") {
  const PenroseResiduals id = penrose_residuals(Matrix::identity(3), Matrix::identity(3));
  for (double r : id.relative) CHECK(r == 0.0);
  const PenroseResiduals off =
      penrose_residuals(Matrix::diagonal({1.0, 0.0}), Matrix::diagonal({1.0, 1.0}));
  CHECK(off.relative[1] > 0.0);
  CHECK(off.relative[0] == 0.0);
  CHECK_THROWS_AS(penrose_residuals(Matrix(2, 3), Matrix(2, 3)), Error);

  Rng rng(406);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = rng.gaussian(rng.uniform_index(1, 10), rng.uniform_index(1, 10));
    CHECK(penrose_residuals(a, dagger(a)).max_relative() <= 1e-9);
  }
}

TEST_CASE("pinv rejects non-finite input") {
  try {
    Matrix a(1, 1);
    a(0, 0) = Complex(std::numeric_limits<double>::infinity(), 0.0);
    (void)pinv(a);
    FAIL("accepted infinity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("uniqueness: perturbing the pseudoinverse breaks a Penrose equation") {
  Rng rng(407);
  const Tolerance t;
  for (int a_trial = 0; a_trial < 20; ++a_trial) {
    const std::size_t m = rng.uniform_index(1, 8), n = rng.uniform_index(1, 8);
    const Matrix a = generate_regular(m, n, rng.uniform_index(1, std::min(m, n)), 0.5, 2.0,
                                      rng.engine()());
    const Matrix x = dagger(a);
    for (int d = 0; d < 100; ++d) {
      Matrix delta = rng.gaussian(n, m);
      delta *= 10.0 * t.eq_tol * x.frobenius_norm() * rng.uniform(1.0, 1e4) / delta.frobenius_norm();
      CHECK(penrose_residuals(a, x + delta).max_relative() > t.eq_tol);
    }
  }
}

TEST_CASE("formulation names round-trip") {
  for (Formulation f : kAllFormulations) CHECK(formulation_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(formulation_from_string("P99"), Error);
}

TEST_CASE("formulation examples") {
  Rng rng(408);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = generate_regular(5, 4, 3, 0.5, 2.0, rng.engine()());
    CHECK(formulation_holds(a, dagger(a), Formulation::P24_III));
  }
  for (Formulation f : kAllFormulations) {
    CHECK(formulation_holds(Matrix::identity(3), Matrix::identity(3), f));
  }
  CHECK_FALSE(formulation_holds(Matrix::diagonal({1.0, 0.0}), Matrix::diagonal({1.0, 1.0}),
                                Formulation::P24_II));
  CHECK_THROWS_AS(formulation_holds(Matrix(2, 3), Matrix(2, 3), Formulation::P21_I), Error);
}

TEST_CASE("each formulation's equations, evaluated independently") {
  // x = diag(1,1) is not the inverse of a = diag(1,0); which single equations
  // survive is fixed by hand: x* a* a = a, a a* x* = a, x x* a* = diag(1,0) != x.
  const Matrix a = Matrix::diagonal({1.0, 0.0});
  const Matrix x = Matrix::identity(2);
  CHECK(formulation_holds(a, x, Formulation::P21_I));
  CHECK(formulation_holds(a, x, Formulation::P21_II));
  CHECK_FALSE(formulation_holds(a, x, Formulation::P21_III));
  CHECK_FALSE(formulation_holds(a, x, Formulation::P21_IV));
  CHECK_FALSE(formulation_holds(a, x, Formulation::P22_II));
  CHECK(formulation_residual(a, x, Formulation::P21_I) == 0.0);
}

TEST_CASE("equivalence sweep: every formulation on pinv, none on a perturbation") {
  Rng rng(409);
  const Tolerance t;
  int bad = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = rng.uniform_index(1, 16), n = rng.uniform_index(1, 16);
    const Matrix a = generate_regular(m, n, rng.uniform_index(1, std::min(m, n)), 0.5, 2.0,
                                      rng.engine()());
    const Matrix x = dagger(a);
    Matrix delta = rng.gaussian(n, m);
    delta *= 1e-3 * x.frobenius_norm() / delta.frobenius_norm();
    for (Formulation f : kAllFormulations) {
      if (!formulation_holds(a, x, f, t)) ++bad;
      if (formulation_holds(a, x + delta, f, t)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("involution laws") {
  const ConditionReport id = involution_laws_check(Matrix::identity(3));
  CHECK(id.holds("ADJOINT_COMMUTES"));
  CHECK(id.holds("DOUBLE_DAGGER"));
  CHECK(id.at("DOUBLE_DAGGER").residual == 0.0);

  const ConditionReport zero = involution_laws_check(Matrix(2, 4));
  CHECK(zero.holds("ADJOINT_COMMUTES"));
  CHECK(zero.holds("DOUBLE_DAGGER"));

  Rng rng(410);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = generate_regular(8, 5, 3, 0.1, 10.0, rng.engine()());
    const ConditionReport r = involution_laws_check(a);
    CHECK(r.holds("ADJOINT_COMMUTES"));
    CHECK(r.holds("DOUBLE_DAGGER"));
    CHECK(r.at("DOUBLE_DAGGER").residual <= 1e-9);
  }
  CHECK_THROWS_AS((void)id.at("NOPE"), Error);
}

TEST_CASE("projections are their own pseudoinverse") {
  Rng rng(411);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = rng.uniform_index(1, 12), n = rng.uniform_index(1, 12);
    const Matrix a = generate_regular(m, n, rng.uniform_index(0, std::min(m, n)), 0.1, 10.0,
                                      rng.engine()());
    const Matrix x = dagger(a);
    CHECK(relative_diff(pinv_of_product(a, x).pinv, a * x) <= 1e-9);
    CHECK(relative_diff(pinv_of_product(x, a).pinv, x * a) <= 1e-9);
  }
}

TEST_CASE("pinv_of_product ignores rounding noise of nearly annihilating factors") {
  // Ranges of a^* and b nearly orthogonal: ab has a single singular value
  // near 1e-3 while its rounding error sits at eps * ||a|| * ||b||.
  Rng rng(412);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.uniform_index(3, 12);
    const Matrix u = rng.orthonormal_columns(n, 2);
    const Matrix e1 = u.columns(0, 1), e2 = u.columns(1, 1);
    const Matrix a = rng.gaussian(2, 1) * e1.adjoint();  // rank 1, row space e1
    const Matrix dir = e2 + Complex(1e-3) * e1;
    const Matrix b = dir * rng.gaussian(1, 2);  // rank 1, column space ~ e2
    const PinvResult p = pinv_of_product(a, b);
    CHECK(p.rank == 1);
    CHECK(p.residuals.max_relative() <= 1e-9);
  }
}

}  // TEST_SUITE
