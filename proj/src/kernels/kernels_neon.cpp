#include <arm_neon.h>

#include <cmath>

#include "railflow/kernels.hpp"

namespace railflow::kernels {
namespace {

// Two 128-bit registers stand in for the four accumulation lanes.

void axpy_flush(double* y, double a, const double* x, std::size_t n, double eps) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t veps = vdupq_n_f64(eps);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vmulq_f64(va, vld1q_f64(x + i));
    const float64x2_t v = vsubq_f64(vld1q_f64(y + i), p);
    const uint64x2_t tiny = vcltq_f64(vabsq_f64(v), veps);
    vst1q_f64(y + i, vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(v), tiny)));
  }
  for (; i < n; ++i) {
    const double p = a * x[i];
    const double v = y[i] - p;
    y[i] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void axpy_indexed_flush(double* y, double a, const double* x, const int* idx, std::size_t n, double eps) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t veps = vdupq_n_f64(eps);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t yv = vsetq_lane_f64(y[idx[k + 1]], vdupq_n_f64(y[idx[k]]), 1);
    const float64x2_t v = vsubq_f64(yv, vmulq_f64(va, vld1q_f64(x + k)));
    const uint64x2_t tiny = vcltq_f64(vabsq_f64(v), veps);
    const float64x2_t out = vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(v), tiny));
    y[idx[k]] = vgetq_lane_f64(out, 0);
    y[idx[k + 1]] = vgetq_lane_f64(out, 1);
  }
  for (; k < n; ++k) {
    const double p = a * x[k];
    const double v = y[idx[k]] - p;
    y[idx[k]] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void divide(double* x, double d, std::size_t n) {
  const float64x2_t vd = vdupq_n_f64(d);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vdivq_f64(vld1q_f64(x + i), vd));
  for (; i < n; ++i) x[i] = x[i] / d;
}

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double s = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
  for (; i < n; ++i) {
    const double p = x[i] * y[i];
    s = s + p;
  }
  return s;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{axpy_flush, axpy_indexed_flush, divide, dot, "neon"};
  return &table;
}

}  // namespace railflow::kernels
