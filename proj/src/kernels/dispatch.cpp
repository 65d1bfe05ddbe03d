#include <cstdlib>
#include <string_view>

#include "railflow/kernels.hpp"

namespace railflow::kernels {

#if !defined(RAILFLOW_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(RAILFLOW_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(RAILFLOW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& pick() {
  const char* env = std::getenv("RAILFLOW_KERNELS");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" || want == "auto")
    if (avx2_kernels() && cpu_has_avx2()) return *avx2_kernels();
  if (want == "neon" || want == "auto")
    if (neon_kernels()) return *neon_kernels();
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = pick();
  return table;
}

}  // namespace railflow::kernels
