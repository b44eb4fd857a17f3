#include <doctest.h>

#include <cmath>

#include "rig/opt.hpp"

using namespace rig;

TEST_SUITE("opt") {

TEST_CASE("simplex picks the cheaper vertex") {
  Matrix a(1, 2);
  a << 1, 2;
  Vector b(1), c(2);
  b << 4;
  c << 1, 1;
  const LpResult r = simplex_solve(a, b, c);
  REQUIRE(r.optimal);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.z[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(r.z[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("simplex with a tie direction") {
  Matrix a(2, 3);
  a << 1, 1, 1, 1, -1, 0;
  Vector b(2), c(3);
  b << 1, 0;
  c << 2, 3, 1;
  const LpResult r = simplex_solve(a, b, c);
  REQUIRE(r.optimal);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.z[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simplex detects infeasibility") {
  Matrix a(1, 2);
  a << 1, 1;
  Vector b(1), c(2);
  b << -1;  // z >= 0 cannot reach a negative sum
  c << 1, 1;
  CHECK_FALSE(simplex_solve(a, b, c).optimal);
}

TEST_CASE("simplex detects an unbounded ray") {
  Matrix a(1, 2);
  a << 1, -1;
  Vector b(1), c(2);
  b << 0;
  c << -1, 0;  // z = (t, t) drives the objective to -inf
  CHECK_FALSE(simplex_solve(a, b, c).optimal);
}

TEST_CASE("smooth minimize matches least squares at p = 2") {
  Matrix m(3, 2);
  m << 1, 0, 1, 1, 0, 2;
  Vector d(3), w(3);
  d << 1, 2, 3;
  w << 1, 0.5, 2;
  const SmoothMinResult r = smooth_pnorm_minimize(w, 2.0, m, d);
  // normal equations of (1/2) sum w (d - My)^2
  const Matrix wm = w.asDiagonal() * m;
  const Vector y = (m.transpose() * wm).ldlt().solve(m.transpose() * (w.asDiagonal() * d));
  CHECK((r.y - y).norm() <= 1e-8 * (1 + y.norm()));
}

TEST_CASE("smooth minimize matches a grid oracle in one variable") {
  for (double p : {1.5, 3.0}) {
    Matrix m(3, 1);
    m << 1, 1, 1;
    Vector d(3), w(3);
    d << 0.3, 1.0, -0.4;
    w << 1, 2, 1;
    auto obj = [&](double y) {
      double acc = 0;
      for (int k = 0; k < 3; ++k) acc += w[k] * std::pow(std::abs(d[k] - y), p);
      return acc / p;
    };
    double best_y = 0, best = 1e300;
    for (int i = 0; i <= 200000; ++i) {
      const double y = -1.0 + 2.5 * i / 200000.0;
      const double v = obj(y);
      if (v < best) {
        best = v;
        best_y = y;
      }
    }
    const SmoothMinResult r = smooth_pnorm_minimize(w, p, m, d);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-7));
    CHECK(r.y[0] == doctest::Approx(best_y).epsilon(1e-4));
  }
}

}  // TEST_SUITE
