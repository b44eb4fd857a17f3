#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace rig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf_exponent(double p) { return std::isinf(p); }

// sign with sgn(0) = 0; the set-valued cases use explicit selection rules.
inline double sgn(double v) { return (v > 0.0) - (v < 0.0); }

inline Matrix columns_to_matrix(const std::vector<Vector>& cols) {
  if (cols.empty()) return Matrix(0, 0);
  Matrix m(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = cols[static_cast<std::size_t>(j)];
  return m;
}

}  // namespace rig
