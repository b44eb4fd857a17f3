#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rig/rigging.hpp"
#include "rig/types.hpp"

namespace rig {

// Runtime configuration, parsed from a single JSON file. Parsing is strict:
// unknown keys and type mismatches raise ConfigError naming the field path,
// so a typo cannot silently fall back to a default.

struct SpaceConfig {
  int dim = 2;
  double p = 2.0;          // kInf for "inf"
  std::vector<double> weights;  // empty means unit weights
};

struct CheckConfig {
  std::string check;
  // Zero / empty fields inherit per-check defaults (see suite.cpp).
  int samples = 0;
  int operators = 0;
  int grid_n = 0;
  double p = 0.0;          // 0 inherits space.p
  double tolerance = 0.0;
  std::string mode;        // thm31: "literal" or "projected"
};

struct RunConfig {
  SpaceConfig space;
  SeedKind seed_kind = SeedKind::kStandard;
  std::uint64_t rng_seed = 0;
  bool has_seed = false;   // whether rng_seed was given (file or flag)
  std::vector<CheckConfig> suite;
};

// Parses and validates JSON text. Throws ConfigError with a field path on any
// violation, including a randomized check enabled without rng_seed.
RunConfig parse_config(const std::string& json_text);

// Reads the file and delegates to parse_config. Throws IoError on read failure.
RunConfig load_config(const std::string& path);

// Full suite over every known check with a fixed seed; used by `rig verify`
// when no config file is given.
RunConfig default_verify_config();

// Canonical text form with all defaults resolved; two configs digest equal
// iff they run identically.
std::string canonical_dump(const RunConfig& cfg);
std::uint64_t config_digest(const RunConfig& cfg);

const std::vector<std::string>& known_checks();
bool check_is_randomized(const std::string& name);

// Shared with the CLI: accepts a finite number >= 1 or the string "inf".
double parse_exponent(const std::string& text);

}  // namespace rig
