#pragma once

#include <cstdint>
#include <vector>

#include "rig/gram.hpp"
#include "rig/report.hpp"
#include "rig/rng.hpp"
#include "rig/space.hpp"

namespace rig {

enum class SeedKind { kStandard, kRandom, kPerturbed };

// Spanning family {x_n} with duality functionals {f_n} and weights
// t_n = 2^{-(n+1)} / ||f_n||^2 (n zero-indexed).
struct RiggingSeed {
  SpaceSpec space;
  std::vector<Vector> xs;
  std::vector<Functional> fs;
  Vector ts;
  void validate(double tol = 1e-12) const;
};

// Deterministic seed generators. All three kinds produce unit vectors whose
// functional family spans the dual: a draw whose functional fails to add rank
// is redrawn (bounded retries, then a fresh random direction), so downstream
// Gram forms stay invertible. The endpoint exponents need this: their duality
// selections collapse nearby vectors onto the same functional ray.
RiggingSeed make_seed(const SpaceSpec& s, SeedKind kind, std::uint64_t rng_seed,
                      double perturbation = 0.05);

// G2 with (u,v)_2 = sum_n t_n f_n(u) f_n(v). `require_pd = false` keeps a
// merely PSD form (enough for the embedding inequality, not for the triple).
GramForm build_h2(const RiggingSeed& seed, bool require_pd = true);

// Gram of the family extended by one vector (index N): g2 + t (W f)(W f)^T.
GramForm extend_h2(const RiggingSeed& seed, const GramForm& g2, const Vector& x_extra,
                   Functional* f_out = nullptr, double* t_out = nullptr);

// t12 and g1 are built from the g2-orthonormalized family (Cholesky-whitened
// Householder QR of the seed in order, diagonal signs normalized positive);
// with the raw family the square-root identities fail, with the orthonormal
// one they hold exactly and t12's g2-spectrum is exactly {t_n}.
Matrix build_t12(const RiggingSeed& seed, const GramForm& g2);
GramForm build_h1(const RiggingSeed& seed, const GramForm& g2);

struct RiggingTriple {
  RiggingSeed seed;
  GramForm g2;
  GramForm g1;
  Matrix t12;
  Matrix frame;  // columns: the g2-orthonormal family
  Vector eigs;   // g2-spectrum of t12, in seed order
  Matrix t_half;
  Matrix t_neg_half;
};

RiggingTriple build_rigging(const RiggingSeed& seed);

struct EmbeddingConstants {
  NormBound b_to_h2;   // sup of |u|_{G2} over unit B-norm
  NormBound h1_to_b;   // sup of |u|_B over unit G1-norm
};
EmbeddingConstants embedding_constants(const RiggingSeed& seed, const GramForm& g2,
                                       const GramForm& g1);

// Monotone conditional-gradient ascents for norm-ratio suprema. Every iterate
// is feasible, so the returned value is always a valid lower bound.
double sup_gram_over_norm(const SpaceSpec& s, const GramForm& g, Rng& rng,
                          int starts = 5, int iters = 100);
double sup_norm_over_gram(const SpaceSpec& s, const GramForm& g, Rng& rng,
                          int starts = 5, int iters = 100);

VerificationReport sqrt_identities_check(const RiggingTriple& t, int pairs = 1000,
                                         std::uint64_t rng_seed = 1, double tol = 1e-8);

// Lax bound with M = 1: |A|_{H2} <= |A|_B (certified upper bound), for
// g2-selfadjoint A. The selfadjointness precondition is measured on the
// whitened operator, which is the conditioning-robust equivalent of the raw
// G2 A symmetry test.
VerificationReport lax_check(const SpaceSpec& s, const GramForm& g2, const Matrix& a,
                             double tol = 1e-8);

// g2-selfadjoint part (A + G2^{-1} A^T G2)/2.
Matrix symmetrize(const GramForm& g2, const Matrix& a);

// Random g2-selfadjoint operator built in whitened coordinates (exactly
// selfadjoint up to the Cholesky roundoff).
Matrix random_g2_selfadjoint(const GramForm& g2, Rng& rng);

}  // namespace rig
