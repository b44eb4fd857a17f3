#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "rig/adjoint.hpp"
#include "rig/errors.hpp"
#include "rig/rng.hpp"
#include "rig/space.hpp"

using namespace rig;

namespace {

Matrix random_op(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = rng.gauss();
  return a;
}

double measured(const VerificationReport& rep, const std::string& name) {
  for (const auto& m : rep.measured)
    if (m.name == name) return m.value;
  REQUIRE_MESSAGE(false, "missing measured value " << name);
  return 0.0;
}

}  // namespace

TEST_SUITE("adjoint") {

TEST_CASE("three-node stencil is explicit") {
  const GridModel g = build_grid(3);
  CHECK(g.h == doctest::Approx(0.25).epsilon(1e-16));
  CHECK(g.laplacian(0, 0) == doctest::Approx(32.0).epsilon(1e-14));
  CHECK(g.laplacian(0, 1) == doctest::Approx(-16.0).epsilon(1e-14));
  CHECK(g.laplacian(0, 2) == 0.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.laplacian);
  const Vector lam = g.eigenvalues();
  for (int k = 0; k < 3; ++k)
    CHECK(es.eigenvalues()(k) == doctest::Approx(lam[k]).epsilon(1e-12));
  CHECK_THROWS_AS(build_grid(1), PreconditionError);
}

TEST_CASE("closed-form spectrum at n = 64") {
  const GridModel g = build_grid(64);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.laplacian);
  const Vector lam = g.eigenvalues();
  for (int k = 0; k < 64; ++k)
    CHECK(std::abs(es.eigenvalues()(k) - lam[k]) <= 1e-10 * lam[k]);
}

TEST_CASE("Gram forms represent the Dirichlet pairing") {
  const GridModel g = build_grid(8);
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    Vector u(8), v(8);
    for (int k = 0; k < 8; ++k) {
      u[k] = rng.gauss();
      v[k] = rng.gauss();
    }
    // (u, v)_{H01} = h u^T L v and |u|^2_{H-1} = h u^T L^{-1} u
    CHECK(g.h01.inner(u, v) ==
          doctest::Approx(g.h * u.dot(g.laplacian * v)).epsilon(1e-11));
    const Vector li = g.laplacian.llt().solve(u);
    CHECK(g.hneg1.inner(u, u) == doctest::Approx(g.h * u.dot(li)).epsilon(1e-9));
  }
}

TEST_CASE("conjugation fixes the stencil and the identity") {
  const GridModel g = build_grid(16);
  CHECK((adjoint_star(g, 3.0, g.laplacian) - g.laplacian).norm() <=
        1e-10 * g.laplacian.norm());
  CHECK((adjoint_star(g, 1.5, Matrix::Identity(16, 16)) - Matrix::Identity(16, 16))
            .norm() <= 1e-12);
  CHECK_THROWS_AS(adjoint_star(g, 3.0, Matrix::Zero(4, 4)), DimensionError);
  CHECK_THROWS_AS(adjoint_star(g, 0.5, Matrix::Identity(16, 16)), PreconditionError);
}

TEST_CASE("double conjugation returns the operator") {
  const GridModel g = build_grid(32);
  const Matrix a = random_op(32, 73);
  const Matrix aa = adjoint_star(g, 3.0, adjoint_star(g, 3.0, a));
  CHECK((aa - a).norm() <= 1e-9 * a.norm());
}

TEST_CASE("agrees with the Gram-conjugated adjoint") {
  const GridModel g = build_grid(12);
  const Matrix a = random_op(12, 79);
  // adjoint against the H-1 inner product: G^{-1} A^T G with G = h L^{-1}
  const Matrix via_gram = g.hneg1.solve(Matrix(a.transpose() * g.hneg1.m));
  const Matrix star = adjoint_star(g, 2.0, a);
  CHECK((star - via_gram).norm() <= 1e-8 * star.norm());
}

TEST_CASE("remark check passes on random operators") {
  const GridModel g = build_grid(16);
  for (double p : {2.0, 3.0}) {
    const VerificationReport rep = check_remark21(g, p, random_op(16, 83), 25, 5);
    CHECK(rep.pass);
    CHECK(measured(rep, "accretivity_neg_margin") <= 1e-9);
    CHECK(measured(rep, "double_star_rel_err") <= 1e-9);
    CHECK(measured(rep, "resolvent_max_rel_residual") <= 1e-9);
    // the plain duality-map margin is informational; it exists but may be negative
    (void)measured(rep, "accretivity_min_margin_lp");
  }
  CHECK_THROWS_AS(check_remark21(g, 2.0, Matrix::Zero(4, 4), 5, 1), DimensionError);
}

TEST_CASE("nilpotent shift keeps the represented margin nonnegative") {
  const GridModel g = build_grid(2);
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  const VerificationReport rep = check_remark21(g, 2.5, a, 50, 7);
  CHECK(rep.pass);
  CHECK(measured(rep, "accretivity_neg_margin") <= 1e-9);
}

TEST_CASE("embedding chain constants") {
  for (double p : {2.0, 4.0}) {
    const GridModel g = build_grid(8);
    const VerificationReport rep = embedding_chain_report(g, p);
    CHECK(rep.pass);
    CHECK(measured(rep, "c_lp_to_lq") <= 1.0 + 1e-10);
    const double lam1 = (2.0 / (g.h * g.h)) *
                        (1.0 - std::cos(std::numbers::pi / (g.n + 1)));
    CHECK(measured(rep, "c_h01_to_hneg1") == doctest::Approx(1.0 / lam1).epsilon(1e-9));
    CHECK(measured(rep, "l2_interpolation_excess") <= 1e-12);
  }
  CHECK_THROWS_AS(embedding_chain_report(build_grid(8), 1.5), PreconditionError);
}

TEST_CASE("interpolation identity is exact on eigenvectors") {
  const GridModel g = build_grid(10);
  Vector v(10);
  for (int j = 0; j < 10; ++j)
    v[j] = std::sin((j + 1) * std::numbers::pi * g.h);
  const SpaceSpec l2 = g.lp(2.0);
  const double n2 = norm(l2, v);
  CHECK(n2 * n2 == doctest::Approx(g.h01.norm(v) * g.hneg1.norm(v)).epsilon(1e-11));
}

}  // TEST_SUITE
