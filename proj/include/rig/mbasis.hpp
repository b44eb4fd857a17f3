#pragma once

#include <cstdint>
#include <vector>

#include "rig/gram.hpp"
#include "rig/report.hpp"
#include "rig/space.hpp"

namespace rig {

// Paired vectors and functionals, claimed biorthogonal: f_i(x_j) = delta_ij.
struct BiorthogonalSystem {
  SpaceSpec space;
  std::vector<Vector> xs;
  std::vector<Functional> fs;
};

// The four defining predicates plus their conjunction. Predicates, not
// validations: nothing throws on a false answer. Minimality is measured by
// relative distance (dist(x_j, span others) / |x_j|) so the verdict is
// invariant under the scale freedom f_i -> l f_i, x_i -> x_i / l.
struct SystemPredicates {
  bool fundamental = false;
  bool minimal = false;
  bool total = false;
  bool biorthogonal = false;
  bool m_basis = false;
  double min_relative_distance = 0.0;
  int min_distance_index = -1;
  double max_biorthogonality_residual = 0.0;
};
SystemPredicates system_predicates(const BiorthogonalSystem& sys);

// Functionals with f_i(x_j) = delta_ij. A spanning family (N = dim) has a
// unique answer (inverse basis matrix, with one refinement pass); for N < dim
// the minimal-dual-norm interpolant is chosen.
std::vector<Functional> biorthogonal_functionals(const SpaceSpec& s,
                                                 const std::vector<Vector>& xs);

// |x_i| |f_i| products together with the per-index floor
// |x_i| / dist(x_i, span others), the smallest product any biorthogonal
// functional for x_i can achieve.
struct NormProducts {
  Vector products;
  Vector lower_bounds;
};
NormProducts norm_products(const BiorthogonalSystem& sys);

// The rescaling inner product on R^2:
//   <y|z> = t1 (y, gen1)(z, gen1) + t2 (y, gen2)(z, gen2)
// with the quotient functionals S_i(y) = <y|x_i> / (alpha_i <x_i|x_i>).
// gen = x is the construction as first written; the worked two-vector example
// generates the form with the biorthogonal pair instead.
struct Eq1Form {
  Vector x1, x2;
  Vector gen1, gen2;
  double t1 = 0.5, t2 = 0.5;
  double alpha1 = 1.0, alpha2 = 1.0;

  void validate() const;
  Matrix gram() const;
  double form(const Vector& y, const Vector& z) const;
  double s(int i, const Vector& y) const;  // i in {1, 2}
  Functional s_functional(int i) const;    // Euclidean representation
};

// Scripted walkthrough of the two-vector system x1 = e1, x2 = e1 + e2 on
// Euclidean R^2: biorthogonal pair (1,-1), (0,1), both norm products sqrt(2),
// and the two published normalization conventions for S1, S2 evaluated side
// by side. Asserts only arithmetic.
VerificationReport example31();

enum class Thm31Mode { kLiteral, kProjected };

// Inputs for the Hilbert-majorant construction x_i^*(y) = c_i (y, x_i)_H,
// c_i = |x_i|_B^2 / |x_i|_H^2. Literal mode applies that formula as written;
// projected mode substitutes the H-orthogonal residual q_i of x_i against
// span{x_j : j != i}, which enforces the orthogonality the construction
// assumes and restores exact biorthogonality.
struct Thm31Config {
  SpaceSpec space;
  std::vector<Vector> xs;  // unit B-norm, minimal family
  GramForm h;              // Hilbert majorant Gram (the G2 of a rigging of this space)
  Thm31Mode mode = Thm31Mode::kProjected;
  int samples = 200;  // seminorm-domination sampling
  std::uint64_t rng_seed = 1;
};

struct Thm31Result {
  BiorthogonalSystem system;
  VerificationReport report;
};
Thm31Result thm31_construct(const Thm31Config& cfg);

// Determinant-maximizing unit basis (coordinate ascent over columns, each
// step replacing a column by the duality pre-image of its cofactor
// functional; every step is monotone in |det|). At a maximizer the
// biorthogonal functionals also have unit norm. Dimension capped at 8.
struct AuerbachResult {
  BiorthogonalSystem system;
  bool converged = false;
  int sweeps = 0;
  double det_abs = 0.0;
  Vector products;
};
AuerbachResult auerbach_basis(const SpaceSpec& s, std::uint64_t rng_seed = 1,
                              int max_sweeps = 200);

}  // namespace rig
