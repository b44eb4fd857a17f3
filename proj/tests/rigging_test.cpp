#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rig/errors.hpp"
#include "rig/rigging.hpp"
#include "rig/rng.hpp"
#include "rig/space.hpp"

using namespace rig;

namespace {

const double kRt2Inv = 1.0 / std::sqrt(2.0);

RiggingSeed standard_l2(int n) {
  return make_seed(SpaceSpec::lp(n, 2), SeedKind::kStandard, 1);
}

}  // namespace

TEST_SUITE("rigging") {

TEST_CASE("standard Euclidean truncation at N = 2 is fully explicit") {
  const RiggingSeed rs = standard_l2(2);
  rs.validate();
  CHECK(rs.xs[0][0] == doctest::Approx(1.0));
  CHECK(rs.xs[0][1] == doctest::Approx(0.0).scale(1.0));
  CHECK(rs.ts[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rs.ts[1] == doctest::Approx(0.25).epsilon(1e-15));

  const RiggingTriple tr = build_rigging(rs);
  CHECK((tr.g2.m - (Matrix(2, 2) << 0.5, 0, 0, 0.25).finished()).norm() <= 1e-14);
  CHECK((tr.t12 - (Matrix(2, 2) << 0.5, 0, 0, 0.25).finished()).norm() <= 1e-12);
  CHECK((tr.g1.m - Matrix::Identity(2, 2)).norm() <= 1e-12);
  CHECK((tr.t_half - (Matrix(2, 2) << kRt2Inv, 0, 0, 0.5).finished()).norm() <= 1e-12);
  CHECK(tr.eigs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tr.eigs[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("G2 equals the weighted outer-product accumulation") {
  Rng rng(23);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    const int n = 5;
    const SpaceSpec s = SpaceSpec::lp(n, p, (Vector(5) << 1, 0.5, 2, 1, 1.5).finished());
    const RiggingSeed rs = make_seed(s, SeedKind::kRandom, 77 + (std::uint64_t)(p * 10));
    rs.validate();
    Matrix acc = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const Vector c = s.weights.cwiseProduct(rs.fs[(std::size_t)i].coords);
      acc += rs.ts[i] * c * c.transpose();
    }
    const GramForm g2 = build_h2(rs);
    CHECK((g2.m - acc).norm() <= 1e-13 * (1 + acc.norm()));
    (void)rng;
  }
}

TEST_CASE("seed validation rejects tampering") {
  RiggingSeed rs = standard_l2(3);
  rs.ts[0] *= 1.1;
  CHECK_THROWS_AS(rs.validate(), PreconditionError);
  RiggingSeed rs2 = standard_l2(3);
  rs2.fs[1].coords[0] += 0.05;
  CHECK_THROWS_AS(rs2.validate(), Error);
}

TEST_CASE("all seed kinds produce valid riggings across exponents") {
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    for (SeedKind kind : {SeedKind::kStandard, SeedKind::kRandom, SeedKind::kPerturbed}) {
      for (int n : {2, 5, 8}) {
        const SpaceSpec s = SpaceSpec::lp(n, p);
        const RiggingSeed rs = make_seed(s, kind, 5);
        rs.validate();
        for (const Vector& x : rs.xs)
          CHECK(norm(s, x) == doctest::Approx(1.0).epsilon(1e-12));
        const RiggingTriple tr = build_rigging(rs);
        CHECK(tr.g2.pd);
        CHECK(tr.g1.pd);
        // the frame is G2-orthonormal
        CHECK((tr.frame.transpose() * tr.g2.m * tr.frame - Matrix::Identity(n, n))
                  .norm() <= 1e-9);
        // T is G2-selfadjoint with the prescribed spectrum
        CHECK((tr.g2.m * tr.t12 - tr.t12.transpose() * tr.g2.m).norm() <=
              1e-10 * tr.g2.m.norm());
        // square roots compose back; the raw-coordinate residual is roundoff
        // amplified by cond(G2) (measured ~4e-17 * cond), so the bound scales
        const double cnd = tr.g2.cond();
        CHECK((tr.t_half * tr.t_half - tr.t12).norm() <=
              (1e-12 + 1e-15 * cnd) * tr.t12.norm());
        CHECK((tr.t_half * tr.t_neg_half - Matrix::Identity(n, n)).norm() <=
              1e-11 + 1e-14 * cnd);
      }
    }
  }
}

TEST_CASE("square-root identities hold on random pairs") {
  for (double p : {1.5, 3.0}) {
    const SpaceSpec s = SpaceSpec::lp(6, p);
    const RiggingTriple tr = build_rigging(make_seed(s, SeedKind::kRandom, 9));
    const VerificationReport rep = sqrt_identities_check(tr, 500, 4, 1e-8);
    CHECK(rep.pass);
  }
}

TEST_CASE("refinement extends the form monotonically") {
  const SpaceSpec s = SpaceSpec::lp(4, 3);
  const RiggingSeed rs = make_seed(s, SeedKind::kRandom, 31);
  const GramForm g2 = build_h2(rs);
  Rng rng(33);
  Vector x(4);
  for (int k = 0; k < 4; ++k) x[k] = rng.gauss();
  x /= norm(s, x);
  Functional f_out;
  double t_out = 0.0;
  const GramForm g2p = extend_h2(rs, g2, x, &f_out, &t_out);
  const double dn = dual_norm(s, duality_map(s, x));
  // the new vector takes index 4 (zero-indexed), so its weight is 2^-5
  CHECK(t_out == doctest::Approx(std::ldexp(1.0, -(4 + 1)) / (dn * dn)).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Matrix> es(g2p.m - g2.m);
  CHECK(es.eigenvalues()(0) >= -1e-14 * g2p.lambda_max);
  for (int t = 0; t < 200; ++t) {
    Vector u(4);
    for (int k = 0; k < 4; ++k) u[k] = rng.gauss();
    CHECK(g2p.norm(u) >= g2.norm(u) * (1 - 1e-12));
  }
}

TEST_CASE("embedding constants, closed-form cases") {
  {
    // Euclidean base: both ends of the interval collapse
    const RiggingSeed rs = standard_l2(2);
    const GramForm g2 = build_h2(rs);
    const GramForm g1 = build_h1(rs, g2);
    const EmbeddingConstants ec = embedding_constants(rs, g2, g1);
    CHECK(ec.b_to_h2.exact);
    CHECK(ec.b_to_h2.upper == doctest::Approx(kRt2Inv).epsilon(1e-10));
    CHECK(ec.b_to_h2.lower == doctest::Approx(kRt2Inv).epsilon(1e-10));
    CHECK(ec.h1_to_b.upper == doctest::Approx(1.0).epsilon(1e-10));
  }
  {
    // max norm: the sign scan is exhaustive in two dimensions
    const SpaceSpec s = SpaceSpec::lp(2, kInf);
    const RiggingSeed rs = make_seed(s, SeedKind::kStandard, 1);
    const GramForm g2 = build_h2(rs);
    const GramForm g1 = build_h1(rs, g2);
    const EmbeddingConstants ec = embedding_constants(rs, g2, g1);
    CHECK(ec.b_to_h2.upper == doctest::Approx(std::sqrt(0.75)).epsilon(1e-10));
    CHECK(ec.b_to_h2.lower == doctest::Approx(std::sqrt(0.75)).epsilon(1e-10));
  }
  {
    // sum norm: diagonal closed form
    const SpaceSpec s = SpaceSpec::lp(2, 1);
    const RiggingSeed rs = make_seed(s, SeedKind::kStandard, 1);
    const GramForm g2 = build_h2(rs);
    const GramForm g1 = build_h1(rs, g2);
    const EmbeddingConstants ec = embedding_constants(rs, g2, g1);
    CHECK(ec.b_to_h2.upper == doctest::Approx(kRt2Inv).epsilon(1e-10));
    CHECK(ec.h1_to_b.upper == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  }
}

TEST_CASE("embedding interval brackets sampled ratios for general p") {
  const SpaceSpec s = SpaceSpec::lp(5, 2.5);
  const RiggingSeed rs = make_seed(s, SeedKind::kRandom, 41);
  const GramForm g2 = build_h2(rs);
  const GramForm g1 = build_h1(rs, g2);
  const EmbeddingConstants ec = embedding_constants(rs, g2, g1);
  CHECK(ec.b_to_h2.lower <= ec.b_to_h2.upper * (1 + 1e-12));
  CHECK(ec.h1_to_b.lower <= ec.h1_to_b.upper * (1 + 1e-12));
  double cap2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double dn = dual_norm(s, rs.fs[(std::size_t)i]);
    cap2 += rs.ts[i] * dn * dn;
  }
  CHECK(ec.b_to_h2.upper <= std::sqrt(cap2) * (1 + 1e-12));
  Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    Vector u(5);
    for (int k = 0; k < 5; ++k) u[k] = rng.gauss();
    const double nb = norm(s, u);
    if (nb > 0) CHECK(g2.norm(u) / nb <= ec.b_to_h2.upper * (1 + 1e-10));
    const double n1 = g1.norm(u);
    if (n1 > 0) CHECK(norm(s, u) / n1 <= ec.h1_to_b.upper * (1 + 1e-10));
  }
}

TEST_CASE("second-space bound for selfadjoint operators") {
  const SpaceSpec s = SpaceSpec::lp(4, 3);
  const RiggingSeed rs = make_seed(s, SeedKind::kRandom, 51);
  const RiggingTriple tr = build_rigging(rs);

  CHECK(lax_check(s, tr.g2, Matrix::Identity(4, 4)).pass);
  CHECK(lax_check(s, tr.g2, tr.t12).pass);
  Rng rng(53);
  for (int k = 0; k < 20; ++k)
    CHECK(lax_check(s, tr.g2, random_g2_selfadjoint(tr.g2, rng)).pass);

  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(lax_check(s, tr.g2, bad), PreconditionError);
}

TEST_CASE("degenerate seeds are rejected with diagnostics") {
  RiggingSeed rs = standard_l2(2);
  rs.xs.push_back(rs.xs[0]);
  rs.fs.push_back(rs.fs[0]);
  Vector ts(3);
  ts << rs.ts[0], rs.ts[1], rs.ts[1];
  rs.ts = ts;
  CHECK_THROWS_AS(rs.validate(), Error);
}

}  // TEST_SUITE
