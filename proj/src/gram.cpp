#include "rig/gram.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace rig {

GramForm GramForm::from_matrix(const Matrix& g, bool require_pd, double sym_tol) {
  RIG_REQUIRE(g.rows() == g.cols(), DimensionError, "GramForm: matrix must be square");
  const double scale = g.norm();
  RIG_REQUIRE((g - g.transpose()).norm() <= sym_tol * (scale + 1.0), PreconditionError,
              "GramForm: matrix not symmetric");
  GramForm f;
  f.m = 0.5 * (g + g.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(f.m, Eigen::EigenvaluesOnly);
  f.lambda_min = es.eigenvalues().minCoeff();
  f.lambda_max = es.eigenvalues().maxCoeff();

  Eigen::LLT<Matrix> llt(f.m);
  f.pd = (llt.info() == Eigen::Success) && f.lambda_min > 0.0;
  if (f.pd) f.chol = llt.matrixU();
  if (require_pd && !f.pd)
    throw DegenerateError("GramForm: matrix not positive definite", f.cond());
  return f;
}

double GramForm::inner(const Vector& u, const Vector& v) const {
  RIG_REQUIRE(u.size() == m.rows() && v.size() == m.rows(), DimensionError,
              "GramForm::inner: dimension mismatch");
  return u.dot(m * v);
}

double GramForm::norm(const Vector& u) const {
  // Clamp tiny negative roundoff for PSD forms.
  return std::sqrt(std::max(0.0, inner(u, u)));
}

Vector GramForm::whiten(const Vector& u) const {
  RIG_REQUIRE(pd, DegenerateError, "GramForm::whiten: form not positive definite");
  return chol.triangularView<Eigen::Upper>() * u;
}

Matrix GramForm::whiten_operator(const Matrix& a) const {
  RIG_REQUIRE(pd, DegenerateError, "GramForm::whiten_operator: form not positive definite");
  const Matrix fa = chol.triangularView<Eigen::Upper>() * a;
  // fa * F^{-1} via a triangular solve on the right.
  return chol.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(fa);
}

Vector GramForm::solve(const Vector& y) const {
  RIG_REQUIRE(pd, DegenerateError, "GramForm::solve: form not positive definite");
  const Vector t = chol.transpose().triangularView<Eigen::Lower>().solve(y);
  return chol.triangularView<Eigen::Upper>().solve(t);
}

Matrix GramForm::solve(const Matrix& y) const {
  RIG_REQUIRE(pd, DegenerateError, "GramForm::solve: form not positive definite");
  const Matrix t = chol.transpose().triangularView<Eigen::Lower>().solve(y);
  return chol.triangularView<Eigen::Upper>().solve(t);
}

}  // namespace rig
