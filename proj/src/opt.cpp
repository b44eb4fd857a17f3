#include "rig/opt.hpp"

#include <algorithm>
#include <cmath>

#include "rig/errors.hpp"

namespace rig {
namespace {

enum class PivotStep { kDone, kMoved, kUnbounded };

// One Bland-rule pivoting pass over a canonical tableau. The rhs lives in the
// last column of `t`; entering columns are searched in [0, n_price). `obj`
// holds reduced costs (and, in its last entry, minus the current objective).
PivotStep pivot_once(Matrix& t, Vector& obj, std::vector<int>& basis, int n_price,
                     double tol) {
  const int m = static_cast<int>(t.rows());
  const int rhs = static_cast<int>(t.cols()) - 1;
  int enter = -1;
  for (int j = 0; j < n_price; ++j) {
    if (obj[j] < -tol) {
      enter = j;
      break;
    }
  }
  if (enter < 0) return PivotStep::kDone;

  int leave = -1;
  double best_ratio = 0.0;
  for (int i = 0; i < m; ++i) {
    if (t(i, enter) > tol) {
      const double ratio = t(i, rhs) / t(i, enter);
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio < best_ratio + tol && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
  }
  if (leave < 0) return PivotStep::kUnbounded;

  const double piv = t(leave, enter);
  t.row(leave) /= piv;
  for (int i = 0; i < m; ++i) {
    if (i == leave) continue;
    const double f = t(i, enter);
    if (f != 0.0) t.row(i) -= f * t.row(leave);
  }
  const double f = obj[enter];
  if (f != 0.0) obj -= f * t.row(leave).transpose();
  basis[leave] = enter;
  return PivotStep::kMoved;
}

void rebuild_objective(const Matrix& t, const Vector& cost, const std::vector<int>& basis,
                       int ncols, Vector& obj) {
  obj = Vector::Zero(ncols + 1);
  for (int j = 0; j < ncols; ++j) obj[j] = cost[j];
  const int m = static_cast<int>(t.rows());
  for (int i = 0; i < m; ++i) {
    const double cb = cost[basis[i]];
    if (cb != 0.0) obj -= cb * t.row(i).transpose();
  }
}

}  // namespace

LpResult simplex_solve(const Matrix& a, const Vector& b, const Vector& c, double tol,
                       int max_iter) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  RIG_REQUIRE(b.size() == m && c.size() == n, DimensionError, "simplex: shape mismatch");

  const int ncols = n + m;  // original + artificial
  Matrix t(m, ncols + 1);
  t.setZero();
  t.block(0, 0, m, n) = a;
  t.col(ncols) = b;
  for (int i = 0; i < m; ++i) {
    if (t(i, ncols) < 0.0) t.row(i) = -t.row(i);
    t(i, n + i) = 1.0;
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  LpResult res;

  // Phase 1: minimize the artificial sum.
  Vector cost1 = Vector::Zero(ncols);
  cost1.segment(n, m).setOnes();
  Vector obj;
  rebuild_objective(t, cost1, basis, ncols, obj);
  PivotStep step;
  while ((step = pivot_once(t, obj, basis, ncols, tol)) == PivotStep::kMoved) {
    if (++res.iterations > max_iter) throw Error("simplex: iteration cap (phase 1)");
  }
  // The artificial sum is bounded below by zero, so an unbounded verdict here
  // is a numerical breakdown; either way the system has no feasible point.
  if (step == PivotStep::kUnbounded ||
      -obj[ncols] > 1e-8 * (1.0 + b.cwiseAbs().maxCoeff()))
    return res;

  // Drive basic artificials out where a usable pivot exists; rows that have
  // none are redundant with zero rhs and stay put harmlessly.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::fabs(t(i, j)) > 1e-9) {
        const double piv = t(i, j);
        t.row(i) /= piv;
        for (int r = 0; r < m; ++r) {
          if (r == i) continue;
          const double f = t(r, j);
          if (f != 0.0) t.row(r) -= f * t.row(i);
        }
        basis[i] = j;
        break;
      }
    }
  }

  // Phase 2 on the original costs; artificial columns are never priced again.
  Vector cost2 = Vector::Zero(ncols);
  cost2.head(n) = c;
  rebuild_objective(t, cost2, basis, ncols, obj);
  while ((step = pivot_once(t, obj, basis, n, tol)) == PivotStep::kMoved) {
    if (++res.iterations > max_iter) throw Error("simplex: iteration cap (phase 2)");
  }
  if (step == PivotStep::kUnbounded) return res;

  res.z = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) res.z[basis[i]] = t(i, ncols);
  }
  res.value = c.dot(res.z);
  res.optimal = true;
  return res;
}

namespace {

double objective(const Vector& w, double p, double eps, const Vector& r) {
  double s = 0.0;
  if (eps == 0.0) {
    for (Eigen::Index k = 0; k < r.size(); ++k) s += w[k] * std::pow(std::fabs(r[k]), p);
  } else {
    const double e2 = eps * eps;
    const double ep = std::pow(eps, p);
    for (Eigen::Index k = 0; k < r.size(); ++k)
      s += w[k] * (std::pow(r[k] * r[k] + e2, 0.5 * p) - ep);
  }
  return s / p;
}

Vector residual_gradient(const Vector& w, double p, double eps, const Vector& r) {
  Vector g(r.size());
  if (eps == 0.0) {
    for (Eigen::Index k = 0; k < r.size(); ++k) {
      const double a = std::fabs(r[k]);
      g[k] = (a == 0.0) ? 0.0 : w[k] * std::pow(a, p - 1.0) * sgn(r[k]);
    }
  } else {
    const double e2 = eps * eps;
    for (Eigen::Index k = 0; k < r.size(); ++k)
      g[k] = w[k] * r[k] * std::pow(r[k] * r[k] + e2, 0.5 * p - 1.0);
  }
  return g;
}

}  // namespace

SmoothMinResult smooth_pnorm_minimize(const Vector& w, double p, const Matrix& m,
                                      const Vector& d, double grad_tol, int max_iter,
                                      const Vector* y0) {
  RIG_REQUIRE(p > 1.0 && std::isfinite(p), Error, "smooth_pnorm_minimize: p must be in (1, inf)");
  RIG_REQUIRE(m.rows() == d.size() && w.size() == d.size(), DimensionError,
              "smooth_pnorm_minimize: shape mismatch");

  SmoothMinResult out;
  out.y = y0 ? *y0 : Vector::Zero(m.cols());
  RIG_REQUIRE(out.y.size() == m.cols(), DimensionError, "smooth_pnorm_minimize: bad warm start");
  if (m.cols() == 0) {
    out.objective = objective(w, p, 0.0, d);
    return out;
  }

  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  std::vector<double> stages;
  if (p < 2.0)
    stages = {1e-1 * scale, 1e-3 * scale, 1e-6 * scale, 1e-9 * scale, 1e-12 * scale, 0.0};
  else
    stages = {0.0};

  Vector x = out.y;
  double big_l = 1.0;
  int iters = 0;
  for (double eps : stages) {
    Vector v = x;
    Vector x_prev = x;
    double t_mom = 1.0;
    double f_prev = objective(w, p, eps, d - m * x);
    int stall = 0;
    while (iters < max_iter) {
      ++iters;
      const Vector rv = d - m * v;
      const Vector gv = -(m.transpose() * residual_gradient(w, p, eps, rv));
      const double fv = objective(w, p, eps, rv);
      // Backtracking on the quadratic upper model.
      Vector x_new;
      double f_new = 0.0;
      for (;;) {
        x_new = v - gv / big_l;
        f_new = objective(w, p, eps, d - m * x_new);
        const Vector dx = x_new - v;
        if (f_new <= fv + gv.dot(dx) + 0.5 * big_l * dx.squaredNorm() + 1e-16 * (1.0 + fv))
          break;
        big_l *= 2.0;
        RIG_REQUIRE(big_l < 1e18, Error, "smooth_pnorm_minimize: line search collapsed");
      }
      big_l *= 0.97;

      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
      Vector v_next = x_new + ((t_mom - 1.0) / t_next) * (x_new - x_prev);
      if (f_new > f_prev) {  // momentum restart
        v_next = x_new;
        t_mom = 1.0;
      } else {
        t_mom = t_next;
      }
      x_prev = x;
      x = x_new;
      v = v_next;

      const Vector gx = -(m.transpose() * residual_gradient(w, p, eps, d - m * x));
      out.grad_norm = gx.norm();
      if (out.grad_norm <= grad_tol) break;
      stall = (std::fabs(f_prev - f_new) <= 1e-17 * (1.0 + std::fabs(f_new))) ? stall + 1 : 0;
      if (stall >= 64) break;
      f_prev = std::min(f_prev, f_new);
    }
  }

  out.y = x;
  out.objective = objective(w, p, 0.0, d - m * x);
  out.iterations = iters;
  return out;
}

}  // namespace rig
