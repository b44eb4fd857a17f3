#pragma once

#include "rig/errors.hpp"
#include "rig/types.hpp"

namespace rig {

// Symmetric bilinear form G with inner(u, v) = u^T G v. Positive definite in
// every rigging use; a PSD-only form is allowed where a construction only
// needs the induced seminorm (require_pd = false).
struct GramForm {
  Matrix m;
  bool pd = false;
  Matrix chol;  // upper-triangular F with m = F^T F; valid iff pd
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  static GramForm from_matrix(const Matrix& g, bool require_pd = true,
                              double sym_tol = 1e-12);

  int dim() const { return static_cast<int>(m.rows()); }
  double inner(const Vector& u, const Vector& v) const;
  double norm(const Vector& u) const;
  double cond() const { return lambda_min > 0.0 ? lambda_max / lambda_min : kInf; }

  // F u, so that norm(u) = |whiten(u)|_2. Requires pd.
  Vector whiten(const Vector& u) const;
  // F A F^{-1}; symmetric iff A is G-selfadjoint. Requires pd.
  Matrix whiten_operator(const Matrix& a) const;
  // G^{-1} y via the Cholesky factors. Requires pd.
  Vector solve(const Vector& y) const;
  Matrix solve(const Matrix& y) const;
};

}  // namespace rig
