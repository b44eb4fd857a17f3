#pragma once

#include <cstddef>
#include <string>

// Vector reduction kernels behind the norm / pairing hot paths.
//
// Layout: one scalar reference implementation plus architecture variants
// (AVX2+FMA on x86-64, NEON on aarch64) selected once at startup. Selection
// honours the RIG_SIMD environment variable ("scalar", "avx2", "neon",
// "auto"); unknown or unsupported requests fall back to scalar. Variants are
// equivalence-tested against the scalar reference; small reassociation
// differences are expected and bounded.

namespace rig::simd {

struct Ops {
  // sum_k x_k y_k
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_k w_k x_k y_k
  double (*wdot)(const double* w, const double* x, const double* y, std::size_t n);
  // sum_k |x_k|
  double (*sum_abs)(const double* x, std::size_t n);
  // sum_k w_k |x_k|
  double (*wsum_abs)(const double* w, const double* x, std::size_t n);
  // sum_k x_k^2
  double (*sum_sq)(const double* x, std::size_t n);
  // sum_k w_k x_k^2
  double (*wsum_sq)(const double* w, const double* x, std::size_t n);
  // max_k |x_k|, 0 for n = 0
  double (*max_abs)(const double* x, std::size_t n);
  // max_k w_k |x_k|, 0 for n = 0
  double (*wmax_abs)(const double* w, const double* x, std::size_t n);
  // y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scal)(double a, double* x, std::size_t n);
  const char* name;
};

// Scalar reference; always available.
const Ops& scalar_ops();

// AVX2 table, or nullptr when the binary or CPU lacks support.
const Ops* avx2_ops();

// NEON table, or nullptr off aarch64.
const Ops* neon_ops();

// The active table (selected on first use).
const Ops& ops();

// Force a backend by name ("scalar", "avx2", "neon", "auto"). Returns the
// name actually selected. Used by tests and the RIG_SIMD override.
std::string force_backend(const std::string& name);

// Name of the active backend.
std::string active_backend();

}  // namespace rig::simd
