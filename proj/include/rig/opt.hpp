#pragma once

#include "rig/types.hpp"

namespace rig {

// min c^T z  s.t.  A z = b, z >= 0. Dense two-phase primal simplex with
// Bland's rule, sized for the small LPs behind the p in {1, inf} distance and
// minimal-norm-extension reformulations.
struct LpResult {
  double value = 0.0;
  Vector z;
  bool optimal = false;
  int iterations = 0;
};
LpResult simplex_solve(const Matrix& a, const Vector& b, const Vector& c,
                       double tol = 1e-11, int max_iter = 200000);

// min_y  phi(y) = (1/p) sum_k w_k |d_k - (M y)_k|^p   for p in (1, inf).
// Accelerated proximal-gradient (here: pure gradient) descent with
// backtracking, momentum restart on objective increase, and epsilon-smoothing
// continuation for p < 2 where the gradient is only Hoelder continuous.
struct SmoothMinResult {
  Vector y;
  double objective = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
};
SmoothMinResult smooth_pnorm_minimize(const Vector& w, double p, const Matrix& m,
                                      const Vector& d, double grad_tol = 1e-11,
                                      int max_iter = 50000, const Vector* y0 = nullptr);

}  // namespace rig
