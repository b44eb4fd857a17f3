#pragma once

#include <cstdint>

#include "rig/config.hpp"
#include "rig/report.hpp"

namespace rig {

// Runs one named check with its per-instance seed. Numerical failures and
// check-level exceptions become failed reports, never process errors.
VerificationReport run_check(const RunConfig& cfg, const CheckConfig& cc,
                             std::uint64_t seed);

// Runs the whole suite. Independent checks may run concurrently (RIG_THREADS
// caps the pool, default min(hardware, 8)); results keep config order and the
// output is identical whatever the pool size, because every check's seed is a
// pure function of (master seed, check name, position).
SuiteResult run_suite(const RunConfig& cfg);

}  // namespace rig
