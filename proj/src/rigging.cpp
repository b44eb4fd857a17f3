#include "rig/rigging.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rig/errors.hpp"

namespace rig {
namespace {

Vector random_unit(const SpaceSpec& s, Rng& rng) {
  Vector x(s.dim);
  for (;;) {
    for (int k = 0; k < s.dim; ++k) x[k] = rng.gauss();
    const double n = norm(s, x);
    if (n > 1e-8) return x / n;
  }
}

// Orthonormal tracker of the accepted weighted dual coordinates; rejects a
// candidate whose component outside the current span falls below tol.
bool adds_rank(std::vector<Vector>& span, const Vector& c, double tol) {
  const double cn = c.norm();
  if (!(cn > 0.0)) return false;
  Vector r = c;
  for (const Vector& u : span) r -= u.dot(r) * u;
  for (const Vector& u : span) r -= u.dot(r) * u;
  if (r.norm() <= tol * cn) return false;
  span.push_back(r / r.norm());
  return true;
}

Vector weighted_coords(const SpaceSpec& s, const Functional& f) {
  return s.weights.cwiseProduct(f.coords);
}

// The g2-orthonormalized seed family: Cholesky-whiten, Householder QR in seed
// order, diagonal signs normalized positive so diagonal inputs map to the
// identity frame. xt = F^{-1} Q, qf = Q.
struct Frame {
  Matrix xt;
  Matrix qf;
};

Frame rigging_frame(const RiggingSeed& seed, const GramForm& g2) {
  const int n = seed.space.dim;
  RIG_REQUIRE(g2.dim() == n, DimensionError, "rigging frame: Gram dimension mismatch");
  if (!g2.pd)
    throw DegenerateError("rigging frame: G2 must be positive definite", g2.cond());
  const Matrix x = columns_to_matrix(seed.xs);
  const Matrix y = g2.chol * x;
  Eigen::HouseholderQR<Matrix> qr(y);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  const double rmax = r.diagonal().cwiseAbs().maxCoeff();
  for (int j = 0; j < n; ++j) {
    const double d = r(j, j);
    if (std::abs(d) <= 1e-13 * rmax)
      throw DegenerateError("rigging frame: seed family numerically dependent at column " +
                                std::to_string(j),
                            g2.cond());
    if (d < 0.0) q.col(j) = -q.col(j);
  }
  Frame fr;
  fr.qf = std::move(q);
  fr.xt = g2.chol.triangularView<Eigen::Upper>().solve(fr.qf);
  // The triangular solve amplifies roundoff by cond(F), which surfaces as
  // drift in xt^T G2 xt. One corrective pass against the measured Gram
  // restores the invariant; the Cholesky factor is upper triangular with a
  // positive diagonal, so seed order and the sign convention are untouched.
  Matrix m = fr.xt.transpose() * g2.m * fr.xt;
  m = 0.5 * (m + m.transpose()).eval();
  const Eigen::LLT<Matrix> llt(m);
  if (llt.info() == Eigen::Success) {
    fr.xt = llt.matrixU().solve<Eigen::OnTheRight>(fr.xt);
    fr.qf = g2.chol.triangularView<Eigen::Upper>() * fr.xt;
  }
  return fr;
}

}  // namespace

void RiggingSeed::validate(double tol) const {
  space.validate();
  const int n = space.dim;
  RIG_REQUIRE(static_cast<int>(xs.size()) == n && static_cast<int>(fs.size()) == n &&
                  ts.size() == n,
              DimensionError, "RiggingSeed: family size must equal the dimension");
  for (int i = 0; i < n; ++i) {
    RIG_REQUIRE(xs[i].size() == n && fs[i].coords.size() == n, DimensionError,
                "RiggingSeed: member " + std::to_string(i) + " has wrong dimension");
    const Functional ref = duality_map(space, xs[i]);
    const double scale = ref.coords.cwiseAbs().maxCoeff() + 1.0;
    RIG_REQUIRE((fs[i].coords - ref.coords).cwiseAbs().maxCoeff() <= tol * scale,
                PreconditionError,
                "RiggingSeed: functional " + std::to_string(i) +
                    " is not the duality image of its vector");
    const double dn = dual_norm(space, fs[i]);
    if (!(dn > 0.0))
      throw DegenerateError("RiggingSeed: functional " + std::to_string(i) + " vanishes");
    const double t_ref = std::ldexp(1.0, -(i + 1)) / (dn * dn);
    RIG_REQUIRE(std::abs(ts[i] - t_ref) <= tol * t_ref, PreconditionError,
                "RiggingSeed: weight " + std::to_string(i) +
                    " deviates from 2^-(n+1)/|f_n|^2");
  }
}

RiggingSeed make_seed(const SpaceSpec& s, SeedKind kind, std::uint64_t rng_seed,
                      double perturbation) {
  s.validate();
  RIG_REQUIRE(perturbation >= 0.0, PreconditionError,
              "make_seed: perturbation must be nonnegative");
  Rng rng(rng_seed);
  RiggingSeed seed;
  seed.space = s;
  seed.ts = Vector::Zero(s.dim);
  Vector base;
  if (kind == SeedKind::kPerturbed) base = random_unit(s, rng);
  std::vector<Vector> span;
  for (int n = 0; n < s.dim; ++n) {
    bool accepted = false;
    for (int attempt = 0; attempt < 64 && !accepted; ++attempt) {
      Vector x;
      if (kind == SeedKind::kStandard) {
        x = Vector::Unit(s.dim, n);
        x /= norm(s, x);
      } else if (kind == SeedKind::kRandom || attempt >= 32) {
        // perturbations can keep collapsing onto an already-chosen functional
        // ray (argmax / sign-pattern collisions at the endpoint exponents);
        // after enough failures switch to fresh directions
        x = random_unit(s, rng);
      } else {
        Vector d(s.dim);
        for (int k = 0; k < s.dim; ++k) d[k] = rng.gauss();
        x = base + perturbation * d;
        const double nx = norm(s, x);
        if (!(nx > 1e-8)) continue;
        x /= nx;
      }
      Functional f = duality_map(s, x);
      if (!adds_rank(span, weighted_coords(s, f), 1e-8)) {
        if (kind == SeedKind::kStandard) break;  // deterministic draw, retry is futile
        continue;
      }
      const double dn = dual_norm(s, f);
      seed.ts[n] = std::ldexp(1.0, -(n + 1)) / (dn * dn);
      seed.xs.push_back(std::move(x));
      seed.fs.push_back(std::move(f));
      accepted = true;
    }
    if (!accepted) {
      // Guaranteed completion: a coordinate vector maps to a coordinate-ray
      // functional for every exponent, and the n functionals so far cannot
      // cover all dim coordinate rays. Random draws can stall at the endpoint
      // exponents (argmax collisions), this scan cannot.
      for (int j = 0; j < s.dim && !accepted; ++j) {
        Vector x = Vector::Unit(s.dim, j);
        x /= norm(s, x);
        Functional f = duality_map(s, x);
        if (!adds_rank(span, weighted_coords(s, f), 1e-8)) continue;
        const double dn = dual_norm(s, f);
        seed.ts[n] = std::ldexp(1.0, -(n + 1)) / (dn * dn);
        seed.xs.push_back(std::move(x));
        seed.fs.push_back(std::move(f));
        accepted = true;
      }
    }
    if (!accepted)
      throw DegenerateError("make_seed: functional family stalled at rank " +
                            std::to_string(n) + " of " + std::to_string(s.dim));
  }
  return seed;
}

GramForm build_h2(const RiggingSeed& seed, bool require_pd) {
  seed.validate();
  const int n = seed.space.dim;
  Matrix g = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector c = weighted_coords(seed.space, seed.fs[i]);
    g.noalias() += seed.ts[i] * (c * c.transpose());
  }
  g = 0.5 * (g + g.transpose()).eval();
  GramForm form = GramForm::from_matrix(g, false);
  if (require_pd && !form.pd)
    throw DegenerateError("build_h2: seed functionals do not span the dual (G2 singular)",
                          form.cond());
  return form;
}

GramForm extend_h2(const RiggingSeed& seed, const GramForm& g2, const Vector& x_extra,
                   Functional* f_out, double* t_out) {
  const int n = seed.space.dim;
  RIG_REQUIRE(x_extra.size() == n, DimensionError, "extend_h2: vector dimension mismatch");
  RIG_REQUIRE(g2.dim() == n, DimensionError, "extend_h2: Gram dimension mismatch");
  RIG_REQUIRE(norm(seed.space, x_extra) > 0.0, PreconditionError,
              "extend_h2: cannot extend by the zero vector");
  const Functional f = duality_map(seed.space, x_extra);
  const double dn = dual_norm(seed.space, f);
  const double t = std::ldexp(1.0, -(n + 1)) / (dn * dn);
  const Vector c = weighted_coords(seed.space, f);
  Matrix g = g2.m + t * (c * c.transpose());
  g = 0.5 * (g + g.transpose()).eval();
  if (f_out) *f_out = f;
  if (t_out) *t_out = t;
  return GramForm::from_matrix(g, false);
}

Matrix build_t12(const RiggingSeed& seed, const GramForm& g2) {
  seed.validate();
  const Frame fr = rigging_frame(seed, g2);
  return fr.xt * seed.ts.asDiagonal() * fr.qf.transpose() * g2.chol;
}

GramForm build_h1(const RiggingSeed& seed, const GramForm& g2) {
  seed.validate();
  const Frame fr = rigging_frame(seed, g2);
  const Matrix z = seed.ts.cwiseSqrt().cwiseInverse().asDiagonal() *
                   (fr.qf.transpose() * g2.chol);
  Matrix g1 = z.transpose() * z;
  g1 = 0.5 * (g1 + g1.transpose()).eval();
  return GramForm::from_matrix(g1, true);
}

RiggingTriple build_rigging(const RiggingSeed& seed) {
  RiggingTriple t;
  t.seed = seed;
  t.g2 = build_h2(seed, true);
  const Frame fr = rigging_frame(seed, t.g2);
  const Matrix qtf = fr.qf.transpose() * t.g2.chol;
  t.frame = fr.xt;
  t.eigs = seed.ts;
  t.t12 = fr.xt * seed.ts.asDiagonal() * qtf;
  const Vector th = seed.ts.cwiseSqrt();
  const auto fu = t.g2.chol.triangularView<Eigen::Upper>();
  t.t_half = fu.solve(fr.qf * th.asDiagonal() * qtf);
  t.t_neg_half = fu.solve(fr.qf * th.cwiseInverse().asDiagonal() * qtf);
  const Matrix z = th.cwiseInverse().asDiagonal() * qtf;
  Matrix g1 = z.transpose() * z;
  g1 = 0.5 * (g1 + g1.transpose()).eval();
  t.g1 = GramForm::from_matrix(g1, true);
  return t;
}

namespace {

// max over sign patterns s (s_0 fixed +1) of |diag(scale) s|_g. Exact scan of
// the unit-ball extreme points; callers guard the dimension.
double max_over_signs(const Matrix& g, const Vector& scale) {
  const int n = static_cast<int>(scale.size());
  Vector v(n);
  double best = 0.0;
  const std::uint64_t lim = 1ULL << (n - 1);
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    v[0] = scale[0];
    for (int k = 1; k < n; ++k)
      v[k] = ((mask >> (k - 1)) & 1ULL) ? -scale[k] : scale[k];
    best = std::max(best, v.dot(g * v));
  }
  return std::sqrt(std::max(0.0, best));
}

std::vector<Vector> ascent_starts(int n, int starts, Rng& rng) {
  std::vector<Vector> out;
  out.push_back(Vector::Ones(n));
  for (int i = 1; i < starts; ++i) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v[k] = rng.gauss();
    out.push_back(std::move(v));
  }
  return out;
}

constexpr int kSignScanLimit = 16;

}  // namespace

// sup |u|_g over the unit B-ball. The linear functional u -> (u, v)_g has
// pairing coordinates W^{-1} G v, and replacing v by the norming vector of
// that functional cannot decrease |v|_g (Cauchy-Schwarz), so the iteration is
// monotone and every iterate feasible.
double sup_gram_over_norm(const SpaceSpec& s, const GramForm& g, Rng& rng, int starts,
                          int iters) {
  double best = 0.0;
  for (Vector u : ascent_starts(s.dim, starts, rng)) {
    const double nu = norm(s, u);
    if (!(nu > 0.0)) continue;
    u /= nu;
    double val = g.norm(u);
    for (int it = 0; it < iters; ++it) {
      const Functional f{(g.m * u).cwiseQuotient(s.weights)};
      if (!(dual_norm(s, f) > 0.0)) break;
      const Vector un = norming_vector(s, f);
      const double vn = g.norm(un);
      if (vn <= val * (1.0 + 1e-13)) {
        val = std::max(val, vn);
        break;
      }
      u = un;
      val = vn;
    }
    best = std::max(best, val);
  }
  return best;
}

// sup |u|_B over the unit g-ellipsoid: take the duality functional of u and
// move to the ellipsoid point maximizing it.
double sup_norm_over_gram(const SpaceSpec& s, const GramForm& g, Rng& rng, int starts,
                          int iters) {
  double best = 0.0;
  for (Vector u : ascent_starts(s.dim, starts, rng)) {
    const double gu = g.norm(u);
    if (!(gu > 0.0)) continue;
    u /= gu;
    double val = norm(s, u);
    for (int it = 0; it < iters; ++it) {
      const Functional f = duality_map(s, u);
      Vector v = g.solve(weighted_coords(s, f));
      const double gn = g.norm(v);
      if (!(gn > 0.0)) break;
      v /= gn;
      const double vn = norm(s, v);
      if (vn <= val * (1.0 + 1e-13)) {
        val = std::max(val, vn);
        break;
      }
      u = v;
      val = vn;
    }
    best = std::max(best, val);
  }
  return best;
}

EmbeddingConstants embedding_constants(const RiggingSeed& seed, const GramForm& g2,
                                       const GramForm& g1) {
  const SpaceSpec& s = seed.space;
  s.validate();
  const int n = s.dim;
  RIG_REQUIRE(g2.dim() == n && g1.dim() == n, DimensionError,
              "embedding_constants: Gram dimension mismatch");
  if (!g1.pd) throw DegenerateError("embedding_constants: G1 must be positive definite");
  const Vector& w = s.weights;
  const double p = s.p;

  // p = 2 values double as interpolation caps for the interval branch.
  const Vector rsw = w.cwiseSqrt().cwiseInverse();
  Matrix m2 = rsw.asDiagonal() * g2.m * rsw.asDiagonal();
  m2 = 0.5 * (m2 + m2.transpose()).eval();
  const double c2_b_h2 =
      std::sqrt(std::max(0.0, Eigen::SelfAdjointEigenSolver<Matrix>(m2, Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .maxCoeff()));
  // pencil (W, G1) via the Cholesky factor of G1
  const Matrix wf = g1.chol.transpose().triangularView<Eigen::Lower>().solve(
      Matrix(w.asDiagonal()));
  Matrix m1 =
      g1.chol.triangularView<Eigen::Upper>().solve(wf.transpose()).transpose();
  m1 = 0.5 * (m1 + m1.transpose()).eval();
  const double c2_h1_b =
      std::sqrt(std::max(0.0, Eigen::SelfAdjointEigenSolver<Matrix>(m1, Eigen::EigenvaluesOnly)
                                  .eigenvalues()
                                  .maxCoeff()));

  EmbeddingConstants out;
  if (p == 2.0) {
    out.b_to_h2 = NormBound{c2_b_h2, c2_b_h2, true};
    out.h1_to_b = NormBound{c2_h1_b, c2_h1_b, true};
    return out;
  }

  const bool small = n <= kSignScanLimit;
  bool need_interval_b = false, need_interval_h = false;
  if (p == 1.0) {
    double v = 0.0;
    for (int k = 0; k < n; ++k)
      v = std::max(v, std::sqrt(std::max(0.0, g2.m(k, k))) / w[k]);
    out.b_to_h2 = NormBound{v, v, true};
    if (small) {
      Matrix g1inv = g1.solve(Matrix(Matrix::Identity(n, n)));
      g1inv = 0.5 * (g1inv + g1inv.transpose()).eval();
      const double h = max_over_signs(g1inv, w);
      out.h1_to_b = NormBound{h, h, true};
    } else {
      need_interval_h = true;
    }
  } else if (s.is_inf()) {
    Matrix g1inv = g1.solve(Matrix(Matrix::Identity(n, n)));
    g1inv = 0.5 * (g1inv + g1inv.transpose()).eval();
    double h = 0.0;
    for (int k = 0; k < n; ++k)
      h = std::max(h, w[k] * std::sqrt(std::max(0.0, g1inv(k, k))));
    out.h1_to_b = NormBound{h, h, true};
    if (small) {
      const double v = max_over_signs(g2.m, w.cwiseInverse());
      out.b_to_h2 = NormBound{v, v, true};
    } else {
      need_interval_b = true;
    }
  } else {
    need_interval_b = need_interval_h = true;
  }

  if (!need_interval_b && !need_interval_h) return out;

  Rng rng(derive_seed(0x5eedf00dULL, "embedding_constants", static_cast<std::uint64_t>(n)));
  if (need_interval_b) {
    // always-valid cap: |u|_g2^2 = sum t_n f_n(u)^2 <= (sum t_n |f_n|^2) |u|^2
    double cap_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dn = dual_norm(s, seed.fs[i]);
      cap_sum += seed.ts[i] * dn * dn;
    }
    cap_sum = std::sqrt(cap_sum);
    // interpolation through the p = 2 constant
    double cap2;
    if (s.is_inf())
      cap2 = c2_b_h2 * std::sqrt(w.cwiseInverse().sum());
    else if (p < 2.0)
      cap2 = c2_b_h2 * std::pow(w.minCoeff(), 0.5 - 1.0 / p);
    else
      cap2 = c2_b_h2 * std::pow(w.maxCoeff() * n, 0.5 - 1.0 / p);
    const double lo = sup_gram_over_norm(s, g2, rng);
    out.b_to_h2 = NormBound{lo, std::min(cap_sum, cap2), false};
  }
  if (need_interval_h) {
    double cap;
    if (p < 2.0) {
      cap = std::pow(w.sum(), 1.0 / p - 0.5) * c2_h1_b;
    } else {
      Matrix g1inv = g1.solve(Matrix(Matrix::Identity(n, n)));
      double cinf = 0.0;
      for (int k = 0; k < n; ++k)
        cinf = std::max(cinf, w[k] * std::sqrt(std::max(0.0, g1inv(k, k))));
      cap = std::pow(w.array().pow(1.0 - p).sum(), 1.0 / p) * cinf;
    }
    const double lo = sup_norm_over_gram(s, g1, rng);
    out.h1_to_b = NormBound{lo, cap, false};
  }
  return out;
}

VerificationReport sqrt_identities_check(const RiggingTriple& t, int pairs,
                                         std::uint64_t rng_seed, double tol) {
  RIG_REQUIRE(pairs >= 1, PreconditionError, "sqrt_identities_check: pairs must be >= 1");
  const int n = t.g2.dim();
  int idx = 0;
  const double mn = t.eigs.size() > 0 ? t.eigs.minCoeff(&idx) : 0.0;
  if (!(mn > 0.0) || !t.t_half.allFinite() || !t.t_neg_half.allFinite())
    throw DegenerateError("sqrt_identities_check: fractional powers undefined (eig[" +
                              std::to_string(idx) + "] = " + format_double(mn) + ")",
                          t.g2.cond());

  VerificationReport rep;
  rep.check = "sqrt_identities";
  rep.rng_seed = rng_seed;
  rep.tolerance = tol;
  rep.params_digest = digest_hex(fnv1a("sqrt_identities|n=" + std::to_string(n) +
                                       "|p=" + format_double(t.seed.space.p) +
                                       "|pairs=" + std::to_string(pairs)));
  Rng rng(rng_seed);
  double worst1 = 0.0, worst2 = 0.0;
  Vector wu1, wv1, wu2, wv2;
  for (int i = 0; i < pairs; ++i) {
    Vector u(n), v(n);
    for (int k = 0; k < n; ++k) {
      u[k] = rng.gauss();
      v[k] = rng.gauss();
    }
    const Vector tu = t.t_half * u, tv = t.t_half * v;
    const double s1 = t.g2.norm(u) * t.g2.norm(v);
    const double r1 =
        std::abs(t.g1.inner(tu, tv) - t.g2.inner(u, v)) / (s1 > 0.0 ? s1 : 1.0);
    const Vector su = t.t_neg_half * u, sv = t.t_neg_half * v;
    const double s2 = t.g1.norm(u) * t.g1.norm(v);
    const double r2 =
        std::abs(t.g2.inner(su, sv) - t.g1.inner(u, v)) / (s2 > 0.0 ? s2 : 1.0);
    if (r1 > worst1) {
      worst1 = r1;
      wu1 = u;
      wv1 = v;
    }
    if (r2 > worst2) {
      worst2 = r2;
      wu2 = u;
      wv2 = v;
    }
  }
  rep.add_le("half_isometry_max_rel_err", worst1, tol);
  rep.add_le("neg_half_isometry_max_rel_err", worst2, tol);
  rep.add_info("pairs", static_cast<double>(pairs));
  rep.add_info("g2_condition", t.g2.cond());
  rep.detail = "(T12^{1/2}u, T12^{1/2}v)_1 = (u,v)_2 and (T12^{-1/2}u, T12^{-1/2}v)_2 = "
               "(u,v)_1 over Gaussian pairs, residuals relative to the matching norms";
  if (!rep.pass) {
    rep.witnesses.push_back(witness_vector("worst_half_u", wu1));
    rep.witnesses.push_back(witness_vector("worst_half_v", wv1));
    rep.witnesses.push_back(witness_vector("worst_neg_half_u", wu2));
    rep.witnesses.push_back(witness_vector("worst_neg_half_v", wv2));
  }
  return rep;
}

VerificationReport lax_check(const SpaceSpec& s, const GramForm& g2, const Matrix& a,
                             double tol) {
  s.validate();
  RIG_REQUIRE(a.rows() == s.dim && a.cols() == s.dim, DimensionError,
              "lax_check: operator dimension mismatch");
  RIG_REQUIRE(g2.dim() == s.dim, DimensionError, "lax_check: Gram dimension mismatch");
  if (!g2.pd) throw DegenerateError("lax_check: G2 must be positive definite", g2.cond());
  const Matrix aw = g2.whiten_operator(a);
  const double awn = aw.norm();
  const double asym = (aw - aw.transpose()).norm() / (awn > 0.0 ? awn : 1.0);
  // 1e-8 leaves room for the whitening round-trip at large cond(G2); a
  // genuinely non-selfadjoint operator lands orders of magnitude above it.
  RIG_REQUIRE(asym <= 1e-8, PreconditionError,
              "lax_check: operator is not G2-selfadjoint (whitened asymmetry " +
                  format_double(asym) + ")");
  const Matrix sym = 0.5 * (aw + aw.transpose());
  const double h2n =
      Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .cwiseAbs()
          .maxCoeff();
  const NormBound bn = operator_norm(s, a);

  VerificationReport rep;
  rep.check = "lax_bound";
  rep.tolerance = tol;
  rep.params_digest = digest_hex(fnv1a("lax_bound|n=" + std::to_string(s.dim) +
                                       "|p=" + format_double(s.p)));
  rep.add_info("h2_norm", h2n);
  rep.add_info("b_norm_upper", bn.upper, bn.exact ? Ref::kClosedForm : Ref::kDerived);
  rep.add_info("b_norm_lower", bn.lower);
  rep.add_info("whitened_asymmetry", asym);
  const double excess =
      bn.upper > 0.0 ? h2n / bn.upper - 1.0 : (h2n > 0.0 ? kInf : 0.0);
  rep.add_le("h2_over_b_excess", excess, tol);
  rep.detail = "|A|_{H2} <= |A|_B for a G2-selfadjoint operator; the B-norm side is a "
               "certified upper bound";
  if (!rep.pass) rep.witnesses.push_back(witness_matrix("operator", a));
  return rep;
}

Matrix symmetrize(const GramForm& g2, const Matrix& a) {
  RIG_REQUIRE(a.rows() == g2.dim() && a.cols() == g2.dim(), DimensionError,
              "symmetrize: operator dimension mismatch");
  if (!g2.pd) throw DegenerateError("symmetrize: G2 must be positive definite", g2.cond());
  return 0.5 * (a + g2.solve(Matrix(a.transpose() * g2.m)));
}

Matrix random_g2_selfadjoint(const GramForm& g2, Rng& rng) {
  const int n = g2.dim();
  if (!g2.pd)
    throw DegenerateError("random_g2_selfadjoint: G2 must be positive definite", g2.cond());
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rng.gauss();
  const Matrix sym = 0.5 * (b + b.transpose());
  return g2.chol.triangularView<Eigen::Upper>().solve(sym * g2.chol);
}

}  // namespace rig
