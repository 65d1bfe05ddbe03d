#pragma once

#include <cstddef>
#include <string_view>

namespace railflow::kernels {

/// Dense row primitives used by the simplex tableau. Every variant must give
/// bit-identical results to the scalar reference: no fused multiply-add, and
/// reductions accumulate in four interleaved lanes in the same order.
struct KernelTable {
  /// y[i] = y[i] - a * x[i]; results with magnitude below eps become 0.
  void (*axpy_flush)(double* y, double a, const double* x, std::size_t n, double eps);
  /// y[idx[k]] = y[idx[k]] - a * x[k] with the same flush; x is packed.
  void (*axpy_indexed_flush)(double* y, double a, const double* x, const int* idx, std::size_t n, double eps);
  /// x[i] = x[i] / d.
  void (*divide)(double* x, double d, std::size_t n);
  /// Sum of x[i] * y[i], lane i % 4 accumulated separately then combined as
  /// (l0 + l1) + (l2 + l3), tail elements added last in order.
  double (*dot)(const double* x, const double* y, std::size_t n);
  std::string_view name;
};

const KernelTable& scalar_kernels();
/// Null when the variant was not compiled for this target.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Best variant supported by the running CPU. RAILFLOW_KERNELS=scalar|avx2|neon
/// forces a choice (falling back to scalar when unavailable); read once.
const KernelTable& active();

}  // namespace railflow::kernels
