#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rig/types.hpp"

namespace rig {

// Provenance of a reference value: closed-form arithmetic, an independently
// derived oracle, or an externally stated reference constant.
enum class Ref { kClosedForm, kDerived, kReference };
const char* ref_name(Ref r);

// One named quantity inside a report. `kInfo` entries are descriptive;
// `kLe` asserts value <= tolerance (residual style); `kTarget` asserts
// |value - target| <= tolerance.
struct MeasuredValue {
  enum Kind { kInfo, kLe, kTarget };
  std::string name;
  Kind kind = kInfo;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  Ref ref = Ref::kDerived;
  bool passes() const;
};

struct Witness {
  std::string label;
  int rows = 0;
  int cols = 1;
  std::vector<double> data;  // row-major
};

Witness witness_vector(const std::string& label, const Vector& v);
Witness witness_matrix(const std::string& label, const Matrix& m);

// Structured pass/fail record for one check. Wall time is kept for console
// output only and never serialized (serialized reports must be bit-stable
// across reruns).
struct VerificationReport {
  std::string check;
  std::string params_digest;
  std::uint64_t rng_seed = 0;
  double tolerance = 0.0;  // headline tolerance, 0 when not applicable
  bool pass = true;
  std::string detail;
  std::vector<MeasuredValue> measured;
  std::vector<Witness> witnesses;
  double wall_ms = 0.0;

  void add_info(const std::string& name, double v, Ref r = Ref::kDerived);
  void add_le(const std::string& name, double v, double tol, Ref r = Ref::kDerived);
  void add_target(const std::string& name, double v, double target, double tol,
                  Ref r = Ref::kDerived);
  void fail(const std::string& why);
  // True iff every asserted entry passes (and no explicit fail was recorded).
  bool recompute_pass();
};

struct SuiteResult {
  std::string version;
  std::uint64_t master_seed = 0;
  std::string config_digest;
  std::vector<VerificationReport> reports;
  bool all_pass() const;
};

// 17-significant-digit decimal rendering used by both emitters.
std::string format_double(double v);

std::string to_json(const SuiteResult& suite);
std::string to_csv(const SuiteResult& suite);
void emit(const SuiteResult& suite, const std::string& format, const std::string& path);

}  // namespace rig
