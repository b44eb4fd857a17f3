#include <atomic>
#include <cstdlib>
#include <string>

#include "rig/simd/kernels.hpp"

namespace rig::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* pick(const std::string& want) {
  if (want == "scalar") return &scalar_ops();
  if (want == "avx2") {
    const Ops* t = avx2_ops();
    if (t && cpu_has_avx2()) return t;
    return nullptr;
  }
  if (want == "neon") return neon_ops();
  if (want == "auto" || want.empty()) {
    if (const Ops* t = avx2_ops(); t && cpu_has_avx2()) return t;
    if (const Ops* t = neon_ops()) return t;
    return &scalar_ops();
  }
  return nullptr;
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* select_initial() {
  const char* env = std::getenv("RIG_SIMD");
  const Ops* t = pick(env ? std::string(env) : std::string("auto"));
  if (!t) t = &scalar_ops();
  return t;
}

}  // namespace

const Ops& ops() {
  const Ops* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = select_initial();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

std::string force_backend(const std::string& name) {
  const Ops* t = pick(name);
  if (!t) t = &scalar_ops();
  g_active.store(t, std::memory_order_release);
  return t->name;
}

std::string active_backend() { return ops().name; }

}  // namespace rig::simd
