#include "rig/mbasis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rig/errors.hpp"
#include "rig/rng.hpp"

namespace rig {
namespace {

double biorth_residual(const BiorthogonalSystem& sys) {
  const int n = static_cast<int>(sys.xs.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(apply(sys.space, sys.fs[i], sys.xs[j]) - want));
    }
  return worst;
}

void check_dims(const BiorthogonalSystem& sys) {
  sys.space.validate();
  RIG_REQUIRE(sys.fs.size() == sys.xs.size(), DimensionError,
              "BiorthogonalSystem: xs and fs must pair up");
  for (const Vector& x : sys.xs)
    RIG_REQUIRE(x.size() == sys.space.dim, DimensionError,
                "BiorthogonalSystem: vector dimension mismatch");
  for (const Functional& f : sys.fs)
    RIG_REQUIRE(f.coords.size() == sys.space.dim, DimensionError,
                "BiorthogonalSystem: functional dimension mismatch");
}

std::vector<Vector> drop_index(const std::vector<Vector>& xs, int skip) {
  std::vector<Vector> out;
  out.reserve(xs.size() - 1);
  for (int j = 0; j < static_cast<int>(xs.size()); ++j)
    if (j != skip) out.push_back(xs[j]);
  return out;
}

}  // namespace

SystemPredicates system_predicates(const BiorthogonalSystem& sys) {
  check_dims(sys);
  const int dim = sys.space.dim;
  const int n = static_cast<int>(sys.xs.size());
  SystemPredicates out;
  if (n == 0) {
    out.minimal = true;
    out.biorthogonal = true;
    return out;
  }
  {
    Eigen::ColPivHouseholderQR<Matrix> qr(columns_to_matrix(sys.xs));
    qr.setThreshold(1e-10);
    out.fundamental = qr.rank() == dim;
  }
  {
    Matrix fm(dim, n);
    for (int i = 0; i < n; ++i)
      fm.col(i) = sys.space.weights.cwiseProduct(sys.fs[i].coords);
    Eigen::ColPivHouseholderQR<Matrix> qr(fm);
    qr.setThreshold(1e-10);
    out.total = qr.rank() == dim;
  }
  out.min_relative_distance = kInf;
  out.minimal = true;
  for (int j = 0; j < n; ++j) {
    const double nx = norm(sys.space, sys.xs[j]);
    double rel = 0.0;
    if (nx > 0.0) {
      const double d =
          n == 1 ? nx : dist_to_subspace(sys.space, sys.xs[j], drop_index(sys.xs, j));
      rel = d / nx;
    }
    if (rel < out.min_relative_distance) {
      out.min_relative_distance = rel;
      out.min_distance_index = j;
    }
    if (!(rel > 1e-8)) out.minimal = false;
  }
  out.max_biorthogonality_residual = biorth_residual(sys);
  out.biorthogonal = out.max_biorthogonality_residual <= 1e-10;
  out.m_basis = out.fundamental && out.minimal && out.total && out.biorthogonal;
  return out;
}

std::vector<Functional> biorthogonal_functionals(const SpaceSpec& s,
                                                 const std::vector<Vector>& xs) {
  s.validate();
  const int dim = s.dim;
  const int n = static_cast<int>(xs.size());
  RIG_REQUIRE(n >= 1, PreconditionError, "biorthogonal_functionals: empty family");
  RIG_REQUIRE(n <= dim, DimensionError,
              "biorthogonal_functionals: more vectors than the dimension");
  for (const Vector& x : xs)
    RIG_REQUIRE(x.size() == dim, DimensionError,
                "biorthogonal_functionals: vector dimension mismatch");
  std::vector<Functional> fs;
  fs.reserve(static_cast<std::size_t>(n));
  if (n == dim) {
    const Matrix x = columns_to_matrix(xs);
    Eigen::FullPivLU<Matrix> lu(x);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
      throw DegenerateError("biorthogonal_functionals: basis matrix is singular");
    // rows of X^{-1} are the plain pairings; one refinement pass keeps the
    // residual solve-limited instead of inverse-limited
    Matrix c = lu.inverse();
    c += c * (Matrix::Identity(dim, dim) - x * c);
    const double resid = (c * x - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (!(resid <= 1e-10))
      throw DegenerateError("biorthogonal_functionals: residual " + format_double(resid) +
                            " exceeds 1e-10 (basis too ill-conditioned)");
    for (int i = 0; i < dim; ++i)
      fs.push_back(Functional{c.row(i).transpose().cwiseQuotient(s.weights)});
    return fs;
  }
  for (int i = 0; i < n; ++i)
    fs.push_back(minimal_norm_functional(s, xs, Vector::Unit(n, i)));
  return fs;
}

NormProducts norm_products(const BiorthogonalSystem& sys) {
  check_dims(sys);
  const int n = static_cast<int>(sys.xs.size());
  RIG_REQUIRE(n >= 1, PreconditionError, "norm_products: empty system");
  const double resid = biorth_residual(sys);
  RIG_REQUIRE(resid <= 1e-10, PreconditionError,
              "norm_products: system is not biorthogonal (residual " + format_double(resid) +
                  ")");
  NormProducts out;
  out.products = Vector::Zero(n);
  out.lower_bounds = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double nx = norm(sys.space, sys.xs[i]);
    out.products[i] = nx * dual_norm(sys.space, sys.fs[i]);
    const double d =
        n == 1 ? nx : dist_to_subspace(sys.space, sys.xs[i], drop_index(sys.xs, i));
    out.lower_bounds[i] = d > 0.0 ? nx / d : kInf;
  }
  return out;
}

void Eq1Form::validate() const {
  RIG_REQUIRE(x1.size() == 2 && x2.size() == 2 && gen1.size() == 2 && gen2.size() == 2,
              DimensionError, "Eq1Form: all vectors live on R^2");
  RIG_REQUIRE(t1 > 0.0 && t2 > 0.0 && std::abs(t1 + t2 - 1.0) <= 1e-12, PreconditionError,
              "Eq1Form: weights must be positive with t1 + t2 = 1");
  RIG_REQUIRE(alpha1 > 0.0 && alpha2 > 0.0, PreconditionError,
              "Eq1Form: normalization scales must be positive");
  const double xdet = x1[0] * x2[1] - x1[1] * x2[0];
  RIG_REQUIRE(std::abs(xdet) > 1e-12 * (x1.norm() * x2.norm() + 1e-300), DegenerateError,
              "Eq1Form: x1, x2 must be independent");
  const double gdet = gen1[0] * gen2[1] - gen1[1] * gen2[0];
  RIG_REQUIRE(std::abs(gdet) > 1e-12 * (gen1.norm() * gen2.norm() + 1e-300), DegenerateError,
              "Eq1Form: form generators dependent, the form is only semidefinite");
}

Matrix Eq1Form::gram() const {
  return t1 * (gen1 * gen1.transpose()) + t2 * (gen2 * gen2.transpose());
}

double Eq1Form::form(const Vector& y, const Vector& z) const {
  return t1 * y.dot(gen1) * z.dot(gen1) + t2 * y.dot(gen2) * z.dot(gen2);
}

double Eq1Form::s(int i, const Vector& y) const {
  RIG_REQUIRE(i == 1 || i == 2, PreconditionError, "Eq1Form: S index is 1 or 2");
  const Vector& xi = i == 1 ? x1 : x2;
  const double a = i == 1 ? alpha1 : alpha2;
  return form(y, xi) / (a * form(xi, xi));
}

Functional Eq1Form::s_functional(int i) const {
  RIG_REQUIRE(i == 1 || i == 2, PreconditionError, "Eq1Form: S index is 1 or 2");
  const Vector& xi = i == 1 ? x1 : x2;
  const double a = i == 1 ? alpha1 : alpha2;
  return Functional{gram() * xi / (a * form(xi, xi))};
}

VerificationReport example31() {
  const SpaceSpec s = SpaceSpec::lp(2, 2.0);
  const double rt2 = std::sqrt(2.0);
  const Vector x1 = Vector::Unit(2, 0);
  Vector x2(2);
  x2 << 1.0, 1.0;

  VerificationReport rep;
  rep.check = "example31";
  rep.tolerance = 1e-12;
  rep.params_digest = digest_hex(fnv1a("example31"));
  rep.detail =
      "two-vector system x1 = e1, x2 = e1 + e2 on Euclidean R^2; the closed-form "
      "convention attains unit norm products with S_i(x_i) = 1/sqrt(2), the quotient "
      "convention (alpha1 = 1, alpha2 = |x2|) attains S_1(x_1) = 1 with "
      "|S_1||x_1| = sqrt(2); no scale choice satisfies both at once";

  const std::vector<Vector> xs{x1, x2};
  const std::vector<Functional> fs = biorthogonal_functionals(s, xs);
  rep.add_target("xbar1_e1", fs[0].coords[0], 1.0, 1e-12, Ref::kReference);
  rep.add_target("xbar1_e2", fs[0].coords[1], -1.0, 1e-12, Ref::kReference);
  rep.add_target("xbar2_e1", fs[1].coords[0], 0.0, 1e-12, Ref::kReference);
  rep.add_target("xbar2_e2", fs[1].coords[1], 1.0, 1e-12, Ref::kReference);

  const BiorthogonalSystem sys{s, xs, fs};
  rep.add_le("biorth_residual", biorth_residual(sys), 1e-12, Ref::kClosedForm);
  const NormProducts np = norm_products(sys);
  rep.add_target("product_1", np.products[0], rt2, 1e-12, Ref::kReference);
  rep.add_target("product_2", np.products[1], rt2, 1e-12, Ref::kReference);
  rep.add_target("product_lower_bound_1", np.lower_bounds[0], rt2, 1e-12, Ref::kDerived);
  rep.add_target("product_lower_bound_2", np.lower_bounds[1], rt2, 1e-12, Ref::kDerived);

  Eq1Form form;
  form.x1 = x1;
  form.x2 = x2;
  form.gen1 = fs[0].coords;
  form.gen2 = fs[1].coords;
  form.t1 = form.t2 = 0.5;
  form.alpha1 = 1.0;
  form.alpha2 = norm(s, x2);
  form.validate();
  rep.add_target("t_sum", form.t1 + form.t2, 1.0, 1e-12, Ref::kClosedForm);
  Eigen::SelfAdjointEigenSolver<Matrix> es(form.gram(), Eigen::EigenvaluesOnly);
  rep.add_info("form_lambda_min", es.eigenvalues().minCoeff());

  rep.add_target("s1_x1_quotient", form.s(1, x1), 1.0, 1e-12, Ref::kDerived);
  rep.add_target("s1_x2_quotient", form.s(1, x2), 0.0, 1e-12, Ref::kDerived);
  rep.add_target("s2_x1_quotient", form.s(2, x1), 0.0, 1e-12, Ref::kDerived);
  rep.add_target("s2_x2_quotient", form.s(2, x2), 1.0 / rt2, 1e-12, Ref::kDerived);
  rep.add_target("s1_product_quotient", dual_norm(s, form.s_functional(1)) * norm(s, x1),
                 rt2, 1e-12, Ref::kDerived);
  rep.add_target("s2_product_quotient", dual_norm(s, form.s_functional(2)) * norm(s, x2),
                 1.0, 1e-12, Ref::kDerived);

  const Functional s1c{fs[0].coords / fs[0].coords.norm()};
  const Functional s2c{fs[1].coords / norm(s, x2)};
  rep.add_target("s1_x1_closed", apply(s, s1c, x1), 1.0 / rt2, 1e-12, Ref::kDerived);
  rep.add_target("s1_x2_closed", apply(s, s1c, x2), 0.0, 1e-12, Ref::kDerived);
  rep.add_target("s2_x1_closed", apply(s, s2c, x1), 0.0, 1e-12, Ref::kDerived);
  rep.add_target("s2_x2_closed", apply(s, s2c, x2), 1.0 / rt2, 1e-12, Ref::kDerived);
  rep.add_target("s1_product_closed", dual_norm(s, s1c) * norm(s, x1), 1.0, 1e-12,
                 Ref::kDerived);
  rep.add_target("s2_product_closed", dual_norm(s, s2c) * norm(s, x2), 1.0, 1e-12,
                 Ref::kDerived);
  return rep;
}

Thm31Result thm31_construct(const Thm31Config& cfg) {
  cfg.space.validate();
  const int dim = cfg.space.dim;
  const int n = static_cast<int>(cfg.xs.size());
  RIG_REQUIRE(n >= 1, PreconditionError, "thm31_construct: empty family");
  RIG_REQUIRE(cfg.h.dim() == dim, DimensionError,
              "thm31_construct: majorant dimension mismatch");
  if (!cfg.h.pd)
    throw DegenerateError("thm31_construct: Hilbert majorant must be positive definite",
                          cfg.h.cond());
  RIG_REQUIRE(cfg.samples >= 0, PreconditionError, "thm31_construct: samples must be >= 0");
  for (const Vector& x : cfg.xs) {
    RIG_REQUIRE(x.size() == dim, DimensionError, "thm31_construct: vector dimension mismatch");
    RIG_REQUIRE(std::abs(norm(cfg.space, x) - 1.0) <= 1e-12, PreconditionError,
                "thm31_construct: vectors must have unit B-norm");
  }
  for (int i = 0; i < n; ++i) {
    const double d =
        n == 1 ? 1.0 : dist_to_subspace(cfg.space, cfg.xs[i], drop_index(cfg.xs, i));
    RIG_REQUIRE(d > 1e-8, PreconditionError,
                "thm31_construct: family is not minimal at index " + std::to_string(i));
  }

  BiorthogonalSystem sys;
  sys.space = cfg.space;
  sys.xs = cfg.xs;
  for (int i = 0; i < n; ++i) {
    Vector rep_vec;  // H-representer r with x_i^*(y) = scale (y, r)_H
    double scale;
    if (cfg.mode == Thm31Mode::kLiteral) {
      rep_vec = cfg.xs[i];
      scale = 1.0 / cfg.h.inner(cfg.xs[i], cfg.xs[i]);  // c_i with |x_i|_B = 1
    } else {
      Vector q = cfg.xs[i];
      if (n > 1) {
        Matrix others(dim, n - 1);
        int c = 0;
        for (int j = 0; j < n; ++j)
          if (j != i) others.col(c++) = cfg.xs[j];
        const Matrix yw = cfg.h.chol * others;
        const Eigen::ColPivHouseholderQR<Matrix> qr(yw);
        // project twice: the first pass leaves O(eps cond) leakage along the
        // others, the second drives (x_j, q)_H to roundoff
        q -= others * qr.solve(Vector(cfg.h.chol * q));
        q -= others * qr.solve(Vector(cfg.h.chol * q));
      }
      const double qh = cfg.h.norm(q);
      const double xh = cfg.h.norm(cfg.xs[i]);
      if (!(qh > 1e-12 * (xh > 0.0 ? xh : 1.0)))
        throw DegenerateError("thm31_construct: x_" + std::to_string(i) +
                              " lies in the H-closure of the others (residual " +
                              format_double(qh) + ")");
      rep_vec = std::move(q);
      scale = 1.0 / cfg.h.inner(cfg.xs[i], rep_vec);
    }
    sys.fs.push_back(Functional{scale * (cfg.h.m * rep_vec).cwiseQuotient(cfg.space.weights)});
  }

  VerificationReport rep;
  rep.check = "thm31";
  rep.rng_seed = cfg.rng_seed;
  rep.params_digest = digest_hex(
      fnv1a(std::string("thm31|mode=") +
            (cfg.mode == Thm31Mode::kLiteral ? "literal" : "projected") +
            "|n=" + std::to_string(n) + "|dim=" + std::to_string(dim) +
            "|p=" + format_double(cfg.space.p)));
  const double resid = biorth_residual(sys);
  if (cfg.mode == Thm31Mode::kProjected) {
    rep.tolerance = 1e-10;
    rep.add_le("biorth_residual", resid, 1e-10);
  } else {
    rep.add_info("biorth_residual", resid);
  }
  double dual_err = 0.0;
  for (int i = 0; i < n; ++i)
    dual_err = std::max(dual_err, std::abs(apply(cfg.space, sys.fs[i], sys.xs[i]) - 1.0));
  rep.add_le("duality_identity_err", dual_err, 1e-10);

  // sampled seminorm bound |x_i^*(y)| <= |x_i|_B |y|_B; a positive excess means
  // the bound failed for that draw (it does, for literal non-H-orthogonal input)
  if (cfg.samples > 0) {
    Rng rng(cfg.rng_seed);
    double excess = -kInf;
    for (int t = 0; t < cfg.samples; ++t) {
      Vector y(dim);
      for (int k = 0; k < dim; ++k) y[k] = rng.gauss();
      const double ny = norm(cfg.space, y);
      if (!(ny > 0.0)) continue;
      for (int i = 0; i < n; ++i)
        excess = std::max(excess, std::abs(apply(cfg.space, sys.fs[i], y)) / ny - 1.0);
    }
    rep.add_info("seminorm_excess_max", excess);
  }
  double pmin = kInf, pmax = -kInf;
  for (int i = 0; i < n; ++i) {
    const double prod = norm(cfg.space, sys.xs[i]) * dual_norm(cfg.space, sys.fs[i]);
    rep.add_info("product_" + std::to_string(i + 1), prod);
    pmin = std::min(pmin, prod);
    pmax = std::max(pmax, prod);
  }
  rep.add_info("product_min", pmin);
  rep.add_info("product_max", pmax);
  rep.detail = cfg.mode == Thm31Mode::kProjected
                   ? "H-projected residual construction; biorthogonality enforced"
                   : "literal majorant formula; biorthogonal only for H-orthogonal input";
  if (!rep.pass)
    rep.witnesses.push_back(witness_matrix("basis", columns_to_matrix(sys.xs)));
  return Thm31Result{std::move(sys), std::move(rep)};
}

namespace {

// Signed cofactors of column j: det X = sum_k cof_k X(k, j) for any values in
// column j, which makes the determinant a linear functional of that column.
Vector cofactor_column(const Matrix& x, int j) {
  const int n = static_cast<int>(x.rows());
  Vector cof(n);
  if (n == 1) {
    cof[0] = 1.0;
    return cof;
  }
  Matrix minor(n - 1, n - 1);
  for (int k = 0; k < n; ++k) {
    int rr = 0;
    for (int r = 0; r < n; ++r) {
      if (r == k) continue;
      int cc = 0;
      for (int col = 0; col < n; ++col) {
        if (col == j) continue;
        minor(rr, cc++) = x(r, col);
      }
      ++rr;
    }
    const double d = minor.determinant();
    cof[k] = ((k + j) % 2 == 0) ? d : -d;
  }
  return cof;
}

}  // namespace

AuerbachResult auerbach_basis(const SpaceSpec& s, std::uint64_t rng_seed, int max_sweeps) {
  s.validate();
  const int n = s.dim;
  RIG_REQUIRE(n <= 8, PreconditionError,
              "auerbach_basis: dimension capped at 8 by the search budget");
  RIG_REQUIRE(max_sweeps >= 1, PreconditionError, "auerbach_basis: max_sweeps must be >= 1");

  std::vector<Matrix> starts;
  {
    Matrix x0(n, n);
    for (int j = 0; j < n; ++j) {
      const Vector e = Vector::Unit(n, j);
      x0.col(j) = e / norm(s, e);
    }
    starts.push_back(std::move(x0));
  }
  for (int t = 0; t < 3; ++t) {
    Rng rng(derive_seed(rng_seed, "auerbach_start", static_cast<std::uint64_t>(t)));
    Matrix x(n, n);
    for (int tries = 0; tries < 64; ++tries) {
      for (int j = 0; j < n; ++j) {
        Vector v(n);
        double nv = 0.0;
        do {
          for (int k = 0; k < n; ++k) v[k] = rng.gauss();
          nv = norm(s, v);
        } while (!(nv > 1e-8));
        x.col(j) = v / nv;
      }
      if (std::abs(x.determinant()) > 1e-6) break;
    }
    starts.push_back(std::move(x));
  }

  Matrix best;
  double best_det = -1.0;
  bool best_converged = false;
  int best_sweeps = 0;
  for (const Matrix& start : starts) {
    Matrix x = start;
    bool converged = false;
    int sweeps = 0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
      bool strict = false;
      for (int j = 0; j < n; ++j) {
        const Vector cof = cofactor_column(x, j);
        const Functional f{cof.cwiseQuotient(s.weights)};
        const double dn = dual_norm(s, f);
        if (!(dn > 0.0)) continue;  // rank two short; no column move helps
        const double cur = std::abs(cof.dot(x.col(j)));
        const Vector v = norming_vector(s, f);
        if (dn > cur * (1.0 + 1e-12)) {
          x.col(j) = v;
          strict = true;
        } else if ((v - x.col(j)).cwiseAbs().maxCoeff() > 1e-14) {
          // |det|-neutral move onto the canonical duality pre-image; ties are
          // routine at the endpoint exponents and unlock later columns
          x.col(j) = v;
        }
      }
      sweeps = sweep + 1;
      if (!strict) converged = true;
    }
    const double da = std::abs(x.determinant());
    if (best_det < 0.0 || da > best_det * (1.0 + 1e-12)) {
      best = std::move(x);
      best_det = da;
      best_converged = converged;
      best_sweeps = sweeps;
    }
  }

  // canonical orientation: first significant coordinate of each column positive
  for (int j = 0; j < n; ++j) {
    const double thresh = 1e-9 * best.col(j).cwiseAbs().maxCoeff();
    for (int k = 0; k < n; ++k) {
      if (std::abs(best(k, j)) > thresh) {
        if (best(k, j) < 0.0) best.col(j) = -best.col(j);
        break;
      }
    }
  }

  AuerbachResult out;
  out.system.space = s;
  for (int j = 0; j < n; ++j) out.system.xs.push_back(best.col(j));
  out.system.fs = biorthogonal_functionals(s, out.system.xs);
  out.converged = best_converged;
  out.sweeps = best_sweeps;
  out.det_abs = best_det;
  out.products = Vector::Zero(n);
  for (int j = 0; j < n; ++j)
    out.products[j] = norm(s, out.system.xs[j]) * dual_norm(s, out.system.fs[j]);
  return out;
}

}  // namespace rig
