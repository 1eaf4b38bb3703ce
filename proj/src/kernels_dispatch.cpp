#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "fblab/kernels.hpp"

namespace fblab::kernels {

#if FBLAB_BUILD_AVX2
const Table* avx2_compiled();
#endif

namespace {

#if FBLAB_BUILD_AVX2
bool host_runs_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table* pick() {
  const char* env = std::getenv("FBLAB_KERNELS");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return scalar();
  if (mode == "avx2") {
    const Table* t = avx2();
    if (!t) throw std::runtime_error("FBLAB_KERNELS=avx2 requested, but this build/host lacks AVX2+FMA");
    return t;
  }
  if (mode == "auto" || mode.empty()) {
    if (const Table* t = avx2()) return t;
    return scalar();
  }
  throw std::runtime_error("FBLAB_KERNELS='" + mode + "' not recognized (use auto, scalar, or avx2)");
}

}  // namespace

const Table* avx2() {
#if FBLAB_BUILD_AVX2
  return host_runs_avx2() ? avx2_compiled() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table* chosen = pick();
  return *chosen;
}

}  // namespace fblab::kernels
