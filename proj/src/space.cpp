#include "rig/space.hpp"

#include <algorithm>
#include <cmath>

#include "rig/opt.hpp"
#include "rig/rng.hpp"
#include "rig/simd/kernels.hpp"

namespace rig {

SpaceSpec SpaceSpec::lp(int dim, double p) {
  return SpaceSpec::lp(dim, p, Vector::Ones(dim));
}

SpaceSpec SpaceSpec::lp(int dim, double p, const Vector& weights) {
  SpaceSpec s;
  s.dim = dim;
  s.p = p;
  s.weights = weights;
  s.validate();
  return s;
}

double SpaceSpec::q() const {
  if (is_inf()) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

SpaceSpec SpaceSpec::dual() const { return SpaceSpec::lp(dim, q(), weights); }

void SpaceSpec::validate() const {
  RIG_REQUIRE(dim >= 1, ConfigError, "space.dim: must be >= 1");
  RIG_REQUIRE(p >= 1.0 && !std::isnan(p), ConfigError, "space.p: must be in [1, inf]");
  RIG_REQUIRE(weights.size() == dim, DimensionError, "space.weights: length must equal dim");
  RIG_REQUIRE((weights.array() > 0.0).all(), ConfigError, "space.weights: must be positive");
}

namespace {

void check_dim(const SpaceSpec& s, const Vector& x, const char* what) {
  RIG_REQUIRE(x.size() == s.dim, DimensionError, std::string(what) + ": dimension mismatch");
}

// (sum_k w_k |x_k|^p)^{1/p} for finite p, scaled to dodge overflow for large p.
double weighted_pnorm(const Vector& w, const Vector& x, double p) {
  const auto n = static_cast<std::size_t>(x.size());
  if (n == 0) return 0.0;
  const auto& k = simd::ops();
  if (p == 1.0) return k.wsum_abs(w.data(), x.data(), n);
  if (p == 2.0) return std::sqrt(k.wsum_sq(w.data(), x.data(), n));
  const double m = k.max_abs(x.data(), n);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[static_cast<Eigen::Index>(i)] * std::pow(std::fabs(x[static_cast<Eigen::Index>(i)]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

double norm(const SpaceSpec& s, const Vector& x) {
  check_dim(s, x, "norm");
  const auto n = static_cast<std::size_t>(x.size());
  if (s.is_inf()) return simd::ops().wmax_abs(s.weights.data(), x.data(), n);
  return weighted_pnorm(s.weights, x, s.p);
}

double dual_norm(const SpaceSpec& s, const Functional& f) {
  check_dim(s, f.coords, "dual_norm");
  const auto n = static_cast<std::size_t>(f.coords.size());
  const auto& k = simd::ops();
  if (s.p == 1.0) return k.max_abs(f.coords.data(), n);
  if (s.is_inf()) return k.sum_abs(f.coords.data(), n);
  return weighted_pnorm(s.weights, f.coords, s.q());
}

double apply(const SpaceSpec& s, const Functional& f, const Vector& x) {
  check_dim(s, x, "apply");
  check_dim(s, f.coords, "apply");
  return simd::ops().wdot(s.weights.data(), f.coords.data(), x.data(),
                          static_cast<std::size_t>(x.size()));
}

Functional duality_map(const SpaceSpec& s, const Vector& x) {
  check_dim(s, x, "duality_map");
  const double nx = norm(s, x);
  Functional f;
  f.coords = Vector::Zero(s.dim);
  if (nx == 0.0) return f;

  if (s.p == 1.0) {
    for (int k = 0; k < s.dim; ++k) f.coords[k] = nx * sgn(x[k]);
    return f;
  }
  if (s.is_inf()) {
    int k0 = 0;
    double best = -1.0;
    for (int k = 0; k < s.dim; ++k) {
      const double a = s.weights[k] * std::fabs(x[k]);
      if (a > best) {
        best = a;
        k0 = k;
      }
    }
    f.coords[k0] = sgn(x[k0]) * nx;
    return f;
  }
  const double m = x.cwiseAbs().maxCoeff();
  const double pre = std::pow(nx, 2.0 - s.p) * std::pow(m, s.p - 1.0);
  for (int k = 0; k < s.dim; ++k)
    f.coords[k] = pre * std::pow(std::fabs(x[k]) / m, s.p - 1.0) * sgn(x[k]);
  return f;
}

Vector norming_vector(const SpaceSpec& s, const Functional& f) {
  check_dim(s, f.coords, "norming_vector");
  Vector x = Vector::Zero(s.dim);
  const double nf = dual_norm(s, f);
  if (nf == 0.0) {
    x[0] = 1.0;
    return x / norm(s, x);
  }
  if (s.p == 1.0) {
    int k0 = 0;
    double best = -1.0;
    for (int k = 0; k < s.dim; ++k) {
      if (std::fabs(f.coords[k]) > best) {
        best = std::fabs(f.coords[k]);
        k0 = k;
      }
    }
    x[k0] = sgn(f.coords[k0]) / s.weights[k0];
    return x;
  }
  if (s.is_inf()) {
    for (int k = 0; k < s.dim; ++k) {
      const double sg = f.coords[k] == 0.0 ? 1.0 : sgn(f.coords[k]);
      x[k] = sg / s.weights[k];
    }
    return x;
  }
  const double qq = s.q();
  const double m = f.coords.cwiseAbs().maxCoeff();
  for (int k = 0; k < s.dim; ++k)
    x[k] = std::pow(std::fabs(f.coords[k]) / m, qq - 1.0) * sgn(f.coords[k]);
  return x / norm(s, x);
}

namespace {

double op_norm_p1(const Vector& w, const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double col = 0.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k) col += w[k] * std::fabs(a(k, j));
    best = std::max(best, col / w[j]);
  }
  return best;
}

// B-convention p = inf norm (weighted sup).
double op_norm_pinf(const Vector& w, const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) row += std::fabs(a(k, j)) / w[j];
    best = std::max(best, w[k] * row);
  }
  return best;
}

// Unweighted sup endpoint (the L^inf operator norm over the weight measure,
// which is what interpolation between exponents requires).
double op_norm_sup_mu(const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) best = std::max(best, a.row(k).cwiseAbs().sum());
  return best;
}

double op_norm_p2(const Vector& w, const Matrix& a) {
  const Vector sq = w.cwiseSqrt();
  Matrix m = sq.asDiagonal() * a * sq.cwiseInverse().asDiagonal();
  return m.jacobiSvd().singularValues()(0);
}

// Power-type ascent for a lower bound on the unweighted lp operator norm of
// `a`. Every iterate's Rayleigh-type ratio is a certified lower bound, so no
// monotonicity assumption is needed.
double lp_power_lower(const Matrix& a, double p, const Vector& z0, int iters) {
  const double q = p / (p - 1.0);
  auto pnorm = [&](const Vector& v) {
    double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) s += std::pow(std::fabs(v[k]) / m, p);
    return m * std::pow(s, 1.0 / p);
  };
  auto smap = [](const Vector& v, double e) {
    Vector r(v.size());
    const double m = v.cwiseAbs().maxCoeff();
    if (m == 0.0) return Vector(Vector::Zero(v.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k)
      r[k] = std::pow(std::fabs(v[k]) / m, e - 1.0) * sgn(v[k]);
    return r;
  };
  Vector z = z0;
  double zn = pnorm(z);
  if (zn == 0.0) return 0.0;
  z /= zn;
  double best = 0.0;
  for (int it = 0; it < iters; ++it) {
    const Vector y = a * z;
    const double yn = pnorm(y);
    best = std::max(best, yn);
    if (yn == 0.0) break;
    const Vector u = smap(y, p);
    Vector znew = smap(a.transpose() * u, q);
    const double nn = pnorm(znew);
    if (nn == 0.0) break;
    z = znew / nn;
  }
  return best;
}

}  // namespace

NormBound operator_norm(const SpaceSpec& s, const Matrix& a) {
  RIG_REQUIRE(a.rows() == s.dim && a.cols() == s.dim, DimensionError,
              "operator_norm: matrix shape mismatch");
  RIG_REQUIRE(a.allFinite(), Error, "operator_norm: non-finite entries");

  NormBound nb;
  if (s.p == 1.0) {
    nb.lower = nb.upper = op_norm_p1(s.weights, a);
    nb.exact = true;
    return nb;
  }
  if (s.is_inf()) {
    nb.lower = nb.upper = op_norm_pinf(s.weights, a);
    nb.exact = true;
    return nb;
  }
  if (s.p == 2.0) {
    nb.lower = nb.upper = op_norm_p2(s.weights, a);
    nb.exact = true;
    return nb;
  }

  const double m1 = op_norm_p1(s.weights, a);
  const double m2 = op_norm_p2(s.weights, a);
  const double minf = op_norm_sup_mu(a);
  const double p = s.p;
  double upper = std::pow(m1, 1.0 / p) * std::pow(minf, 1.0 - 1.0 / p);
  if (p < 2.0) {
    const double th = 2.0 / p - 1.0;  // weight on the p=1 endpoint
    upper = std::min(upper, std::pow(m1, th) * std::pow(m2, 1.0 - th));
  } else {
    const double th = 2.0 / p;  // weight on the p=2 endpoint
    upper = std::min(upper, std::pow(m2, th) * std::pow(minf, 1.0 - th));
  }

  // Lower bound on the unweighted transform z = W^{1/p} x.
  const Vector dw = s.weights.array().pow(1.0 / p).matrix();
  const Matrix at = dw.asDiagonal() * a * dw.cwiseInverse().asDiagonal();
  double lower = 0.0;
  lower = std::max(lower, lp_power_lower(at, p, Vector::Ones(s.dim), 60));
  for (int j = 0; j < s.dim; ++j) {
    Vector e = Vector::Zero(s.dim);
    e[j] = 1.0;
    const Vector y = at * e;
    double yn = 0.0;
    for (Eigen::Index k = 0; k < y.size(); ++k) yn += std::pow(std::fabs(y[k]), p);
    lower = std::max(lower, std::pow(yn, 1.0 / p));
  }
  Rng rng(0x5eedf00dULL);
  for (int start = 0; start < 4; ++start) {
    Vector z(s.dim);
    for (int k = 0; k < s.dim; ++k) z[k] = rng.gauss();
    lower = std::max(lower, lp_power_lower(at, p, z, 60));
  }
  nb.lower = std::min(lower, upper);
  nb.upper = upper;
  nb.exact = false;
  return nb;
}

namespace {

DistResult dist_closed_form(const SpaceSpec& s, const Vector& x, const Matrix& b) {
  const Vector sq = s.weights.cwiseSqrt();
  const Matrix bw = sq.asDiagonal() * b;
  const Vector xw = sq.asDiagonal() * x;
  DistResult r;
  r.coeffs = bw.colPivHouseholderQr().solve(xw);
  r.residual = x - b * r.coeffs;
  r.dist = norm(s, r.residual);
  return r;
}

DistResult dist_smooth(const SpaceSpec& s, const Vector& x, const Matrix& b) {
  DistResult r;
  const double sc = norm(s, x);
  if (sc == 0.0) {
    r.coeffs = Vector::Zero(b.cols());
    r.residual = x;
    r.dist = 0.0;
    return r;
  }
  // Warm start from the Hilbert projection; solve at unit scale.
  const Vector warm = dist_closed_form(s, x, b).coeffs / sc;
  const auto sol = smooth_pnorm_minimize(s.weights, s.p, b, x / sc, 1e-11, 50000, &warm);
  r.coeffs = sol.y * sc;
  r.residual = x - b * r.coeffs;
  r.dist = norm(s, r.residual);
  return r;
}

DistResult dist_simplex_p1(const SpaceSpec& s, const Vector& x, const Matrix& b) {
  const int n = s.dim;
  const int kk = static_cast<int>(b.cols());
  Matrix a(n, 2 * kk + 2 * n);
  a.setZero();
  a.block(0, 0, n, kk) = b;
  a.block(0, kk, n, kk) = -b;
  a.block(0, 2 * kk, n, n) = Matrix::Identity(n, n);
  a.block(0, 2 * kk + n, n, n) = -Matrix::Identity(n, n);
  Vector c = Vector::Zero(2 * kk + 2 * n);
  c.segment(2 * kk, n) = s.weights;
  c.segment(2 * kk + n, n) = s.weights;
  const LpResult lp = simplex_solve(a, x, c);
  RIG_REQUIRE(lp.optimal, DegenerateError, "dist_to_subspace: l1 program did not solve");
  DistResult r;
  r.coeffs = lp.z.head(kk) - lp.z.segment(kk, kk);
  r.residual = x - b * r.coeffs;
  r.dist = norm(s, r.residual);
  return r;
}

DistResult dist_simplex_pinf(const SpaceSpec& s, const Vector& x, const Matrix& b) {
  const int n = s.dim;
  const int kk = static_cast<int>(b.cols());
  const int nv = 2 * kk + 1 + 2 * n;  // c+, c-, t, s1, s2
  Matrix a(2 * n, nv);
  a.setZero();
  Vector rhs(2 * n);
  for (int k = 0; k < n; ++k) {
    const double wk = s.weights[k];
    for (int j = 0; j < kk; ++j) {
      a(k, j) = wk * b(k, j);
      a(k, kk + j) = -wk * b(k, j);
      a(n + k, j) = -wk * b(k, j);
      a(n + k, kk + j) = wk * b(k, j);
    }
    a(k, 2 * kk) = 1.0;
    a(n + k, 2 * kk) = 1.0;
    a(k, 2 * kk + 1 + k) = -1.0;
    a(n + k, 2 * kk + 1 + n + k) = -1.0;
    rhs[k] = wk * x[k];
    rhs[n + k] = -wk * x[k];
  }
  Vector c = Vector::Zero(nv);
  c[2 * kk] = 1.0;
  const LpResult lp = simplex_solve(a, rhs, c);
  RIG_REQUIRE(lp.optimal, DegenerateError, "dist_to_subspace: sup-norm program did not solve");
  DistResult r;
  r.coeffs = lp.z.head(kk) - lp.z.segment(kk, kk);
  r.residual = x - b * r.coeffs;
  r.dist = norm(s, r.residual);
  return r;
}

}  // namespace

DistResult dist_to_subspace_full(const SpaceSpec& s, const Vector& x,
                                 const std::vector<Vector>& basis, DistMethod method) {
  check_dim(s, x, "dist_to_subspace");
  for (const auto& v : basis) check_dim(s, v, "dist_to_subspace basis");
  DistResult r;
  if (basis.empty()) {
    r.coeffs = Vector(0);
    r.residual = x;
    r.dist = norm(s, x);
    return r;
  }
  const Matrix b = columns_to_matrix(basis);
  if (method == DistMethod::kAuto) {
    if (s.p == 2.0)
      method = DistMethod::kClosedForm;
    else if (s.p == 1.0 || s.is_inf())
      method = DistMethod::kSimplex;
    else
      method = DistMethod::kSmooth;
  }
  switch (method) {
    case DistMethod::kClosedForm:
      RIG_REQUIRE(s.p == 2.0, Error, "dist_to_subspace: closed form is the p=2 projection");
      return dist_closed_form(s, x, b);
    case DistMethod::kSmooth:
      RIG_REQUIRE(!s.is_inf() && s.p > 1.0, Error,
                  "dist_to_subspace: smooth route needs p in (1, inf)");
      return dist_smooth(s, x, b);
    case DistMethod::kSimplex:
      RIG_REQUIRE(s.p == 1.0 || s.is_inf(), Error,
                  "dist_to_subspace: simplex route covers p in {1, inf}");
      return s.p == 1.0 ? dist_simplex_p1(s, x, b) : dist_simplex_pinf(s, x, b);
    default:
      throw Error("dist_to_subspace: unknown method");
  }
}

double dist_to_subspace(const SpaceSpec& s, const Vector& x, const std::vector<Vector>& basis,
                        DistMethod method) {
  return dist_to_subspace_full(s, x, basis, method).dist;
}

Vector sbasis_expand(const SpaceSpec& s, const std::vector<Vector>& basis, const Vector& x,
                     double cond_threshold) {
  check_dim(s, x, "sbasis_expand");
  RIG_REQUIRE(static_cast<int>(basis.size()) == s.dim, DimensionError,
              "sbasis_expand: basis must have dim vectors");
  for (const auto& v : basis) check_dim(s, v, "sbasis_expand basis");
  const Matrix b = columns_to_matrix(basis);
  Eigen::ColPivHouseholderQR<Matrix> qr(b);
  const Vector diag = qr.matrixR().diagonal().cwiseAbs();
  const double dmin = diag.minCoeff();
  const double dmax = diag.maxCoeff();
  const double cond = (dmin == 0.0) ? kInf : dmax / dmin;
  if (qr.rank() < s.dim || cond > cond_threshold)
    throw DegenerateError("sbasis_expand: basis numerically dependent", cond);
  const Vector c = qr.solve(x);
  const double resid = norm(s, x - b * c);
  RIG_REQUIRE(resid <= 1e-10 * (norm(s, x) + 1.0), DegenerateError,
              "sbasis_expand: reconstruction residual too large");
  return c;
}

Functional minimal_norm_functional(const SpaceSpec& s, const std::vector<Vector>& vs,
                                   const Vector& b) {
  RIG_REQUIRE(static_cast<int>(vs.size()) == b.size(), DimensionError,
              "minimal_norm_functional: values vs constraints mismatch");
  for (const auto& v : vs) check_dim(s, v, "minimal_norm_functional");
  const int m = static_cast<int>(vs.size());
  const int n = s.dim;
  Matrix a(m, n);
  for (int j = 0; j < m; ++j) a.row(j) = (s.weights.asDiagonal() * vs[j]).transpose();

  Functional f;
  const double qq = s.q();
  if (qq == 2.0) {
    const Vector isq = s.weights.cwiseSqrt().cwiseInverse();
    const Matrix aw = a * isq.asDiagonal();
    const Vector g = aw.completeOrthogonalDecomposition().solve(b);
    f.coords = isq.asDiagonal() * g;
    return f;
  }
  if (is_inf_exponent(qq)) {
    // min t s.t. |f_k| <= t and a (f+ - f-) = b.
    const int nv = 2 * n + 1 + n;
    Matrix lpa(m + n, nv);
    lpa.setZero();
    Vector rhs(m + n);
    lpa.block(0, 0, m, n) = a;
    lpa.block(0, n, m, n) = -a;
    rhs.head(m) = b;
    for (int k = 0; k < n; ++k) {
      lpa(m + k, k) = 1.0;
      lpa(m + k, n + k) = 1.0;
      lpa(m + k, 2 * n) = -1.0;
      lpa(m + k, 2 * n + 1 + k) = 1.0;
      rhs[m + k] = 0.0;
    }
    Vector c = Vector::Zero(nv);
    c[2 * n] = 1.0;
    const LpResult lp = simplex_solve(lpa, rhs, c);
    RIG_REQUIRE(lp.optimal, DegenerateError, "minimal_norm_functional: program did not solve");
    f.coords = lp.z.head(n) - lp.z.segment(n, n);
    return f;
  }
  if (qq == 1.0) {
    Matrix lpa(m, 2 * n);
    lpa.block(0, 0, m, n) = a;
    lpa.block(0, n, m, n) = -a;
    Vector c = Vector::Ones(2 * n);
    const LpResult lp = simplex_solve(lpa, b, c);
    RIG_REQUIRE(lp.optimal, DegenerateError, "minimal_norm_functional: program did not solve");
    f.coords = lp.z.head(n) - lp.z.segment(n, n);
    return f;
  }

  // Smooth q: minimize the weighted q-norm over f0 + ker(a).
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  const Vector f0 = cod.solve(b);
  Eigen::FullPivLU<Matrix> lu(a);
  const Matrix z = lu.kernel();
  if (z.cols() == 0 || z.norm() == 0.0) {
    f.coords = f0;
    return f;
  }
  const auto sol = smooth_pnorm_minimize(s.weights, qq, -z, f0, 1e-11, 50000);
  f.coords = f0 + z * sol.y;
  return f;
}

}  // namespace rig
