#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "rig/errors.hpp"
#include "rig/gram.hpp"
#include "rig/rng.hpp"

using namespace rig;

TEST_SUITE("gram") {

TEST_CASE("diagonal form") {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = 0.5;
  g(1, 1) = 0.25;
  const GramForm f = GramForm::from_matrix(g);
  CHECK(f.pd);
  CHECK(f.lambda_min == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(f.lambda_max == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.cond() == doctest::Approx(2.0).epsilon(1e-12));
  Vector u(2);
  u << 1, 2;
  CHECK(f.norm(u) == doctest::Approx(std::sqrt(0.5 + 1.0)).epsilon(1e-14));
  Vector v(2);
  v << 2, -1;
  CHECK(f.inner(u, v) == doctest::Approx(0.5 * 2 - 0.25 * 2).epsilon(1e-14));
}

TEST_CASE("whitening is an isometry onto the Euclidean norm") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4;
    Matrix b(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b(r, c) = rng.gauss();
    const Matrix g = b.transpose() * b + 0.1 * Matrix::Identity(n, n);
    const GramForm f = GramForm::from_matrix(g);
    for (int t = 0; t < 20; ++t) {
      Vector x(n);
      for (int k = 0; k < n; ++k) x[k] = rng.gauss();
      CHECK(f.whiten(x).norm() == doctest::Approx(f.norm(x)).epsilon(1e-12));
    }
    // chol is upper with G = F^T F
    CHECK((f.chol.transpose() * f.chol - g).norm() <= 1e-12 * g.norm());
    // solve inverts the form
    Vector y(n);
    for (int k = 0; k < n; ++k) y[k] = rng.gauss();
    CHECK((f.m * f.solve(y) - y).norm() <= 1e-10 * y.norm());
  }
}

TEST_CASE("rejects asymmetry and indefiniteness") {
  Matrix a(2, 2);
  a << 1, 0.5, -0.5, 1;  // skew part too large
  CHECK_THROWS_AS(GramForm::from_matrix(a), PreconditionError);

  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -1;
  CHECK_THROWS_AS(GramForm::from_matrix(neg), DegenerateError);
  // but indefiniteness is representable when not required
  const GramForm f = GramForm::from_matrix(neg, false);
  CHECK_FALSE(f.pd);
  CHECK_THROWS_AS(f.whiten(Vector::Ones(2)), DegenerateError);
}

TEST_CASE("condition number tracks the spectrum") {
  Rng rng(5);
  Matrix b(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) b(r, c) = rng.gauss();
  const Matrix g = b.transpose() * b + 0.05 * Matrix::Identity(3, 3);
  const GramForm f = GramForm::from_matrix(g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  CHECK(f.lambda_min == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
  CHECK(f.lambda_max == doctest::Approx(es.eigenvalues()(2)).epsilon(1e-10));
}

}  // TEST_SUITE
