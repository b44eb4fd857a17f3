#pragma once

#include <vector>

#include "rig/errors.hpp"
#include "rig/types.hpp"

namespace rig {

// Finite-dimensional weighted lp-type space: ||x|| = (sum_k w_k |x_k|^p)^{1/p},
// with the p = inf convention ||x|| = max_k w_k |x_k|. Weights default to one;
// the discrete L^p quadrature in the adjoint lab reuses this with w_k = h.
struct SpaceSpec {
  int dim = 0;
  double p = 2.0;  // in [1, inf]
  Vector weights;  // strictly positive, length dim

  static SpaceSpec lp(int dim, double p);
  static SpaceSpec lp(int dim, double p, const Vector& weights);

  bool is_inf() const { return is_inf_exponent(p); }
  // Conjugate exponent q with 1/p + 1/q = 1.
  double q() const;
  // Dual space spec: conjugate exponent, same weights (same base measure).
  SpaceSpec dual() const;
  void validate() const;
};

// Functionals act through the weighted pairing f(x) = sum_k w_k f_k x_k and
// are measured in the conjugate norm:
//   p in (1, inf): ||f|| = (sum_k w_k |f_k|^q)^{1/q}
//   p = 1:         ||f|| = max_k |f_k|          (unweighted; Hoelder-tight)
//   p = inf:       ||f|| = sum_k |f_k|          (unweighted; Hoelder-tight)
struct Functional {
  Vector coords;
};

double norm(const SpaceSpec& s, const Vector& x);
double dual_norm(const SpaceSpec& s, const Functional& f);
double apply(const SpaceSpec& s, const Functional& f, const Vector& x);

// Duality mapping: x*(x) = ||x||^2 and ||x*|| = ||x||. Smooth formula for
// p in (1, inf); deterministic selections at the endpoints: p = 1 uses
// sgn(0) = 0, p = inf concentrates on the first max-attaining coordinate.
// x = 0 returns the zero functional.
Functional duality_map(const SpaceSpec& s, const Vector& x);

// A unit vector attaining f(x) = dual_norm(f) (duality pre-image). Ties at
// the endpoint exponents break to the lowest index. f = 0 gives e_1-normalized.
Vector norming_vector(const SpaceSpec& s, const Functional& f);

struct NormBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  double value() const { return upper; }  // conservative scalar
};

// Operator norm of A: B -> B. Exact for p in {1, 2, inf}; otherwise a
// certified interval: upper from interpolation between exact endpoint norms,
// lower from power-type ascent (every iterate is a valid lower bound).
NormBound operator_norm(const SpaceSpec& s, const Matrix& a);

enum class DistMethod { kAuto, kClosedForm, kSmooth, kSimplex };

struct DistResult {
  double dist = 0.0;
  Vector coeffs;    // achieving coefficients
  Vector residual;  // x - basis * coeffs
};

// inf_c ||x - sum_k c_k b_k||_B. p = 2 closed form; p in (1, inf) smooth
// descent; p in {1, inf} exact linear programs. `method` overrides the
// dispatch so routes can be cross-checked against one another.
DistResult dist_to_subspace_full(const SpaceSpec& s, const Vector& x,
                                 const std::vector<Vector>& basis,
                                 DistMethod method = DistMethod::kAuto);
double dist_to_subspace(const SpaceSpec& s, const Vector& x,
                        const std::vector<Vector>& basis,
                        DistMethod method = DistMethod::kAuto);

// Coefficients of x in a spanning basis (unique at finite truncation).
// Throws DegenerateError when the basis matrix is singular or its condition
// estimate exceeds `cond_threshold`.
Vector sbasis_expand(const SpaceSpec& s, const std::vector<Vector>& basis, const Vector& x,
                     double cond_threshold = 1e12);

// Minimal dual-norm functional with the interpolation values f(v_j) = b_j.
// q = 2 closed form, q in {1, inf} linear program, otherwise smooth descent
// over the affine solution set.
Functional minimal_norm_functional(const SpaceSpec& s, const std::vector<Vector>& vs,
                                   const Vector& b);

}  // namespace rig
