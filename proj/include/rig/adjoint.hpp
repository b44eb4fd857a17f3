#pragma once

#include <cstdint>

#include "rig/gram.hpp"
#include "rig/report.hpp"
#include "rig/space.hpp"

namespace rig {

// 1-D Dirichlet grid on (0, 1): n interior nodes, spacing h = 1/(n+1),
// quadrature weight h per node. The stiffness matrix L = tridiag(-1,2,-1)/h^2
// is the conjugate isomorphism between the discrete H01 and H-1 ends:
// (u,v)_{H01} = <u, Lv>_h exactly, and the H-1 Gram is h L^{-1}.
struct GridModel {
  int n = 0;
  double h = 0.0;
  Matrix laplacian;
  GramForm h01;
  GramForm hneg1;

  SpaceSpec lp(double p) const;  // discrete L^p, weights h
  Vector eigenvalues() const;    // closed form (2/h^2)(1 - cos(k pi /(n+1))), ascending
};

GridModel build_grid(int n);  // pre: n >= 2

// Duality transpose in the h-weighted pairing; uniform quadrature makes it
// the plain matrix transpose.
Matrix dual_restriction(const GridModel& g, const Matrix& a);

// A* = L A' L^{-1}, the adjoint pulled through the conjugate isomorphism.
// The matrix is the same for every p; p names the space it acts on.
Matrix adjoint_star(const GridModel& g, double p, const Matrix& a);

// Measured embedding constants of the chain H01 -> L^p -> L^q -> H-1
// (q conjugate, p in [2, inf)), each a certified lower bound from sampling
// plus monotone ascent, with closed forms where they exist, the finite-measure
// Hoelder verification for L^p -> L^q, the L^2 interpolation inequality, and
// the trend of the constants over n in {8, 16, 32, 64}.
VerificationReport embedding_chain_report(const GridModel& g, double p);

// The three adjoint properties of A* A: accretivity against the H-1
// representation functional of x (the plain l^p duality-map pairing is
// reported alongside, unasserted: it is sign-indefinite for this adjoint),
// (A*A)* = A*A, and solvability of I + A*A with the smallest singular value
// reported. Failures are report entries with witnesses, never exceptions.
VerificationReport check_remark21(const GridModel& g, double p, const Matrix& a,
                                  int samples, std::uint64_t rng_seed);

}  // namespace rig
