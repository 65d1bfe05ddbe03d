#include <immintrin.h>

#include <cmath>

#include "railflow/kernels.hpp"

namespace railflow::kernels {
namespace {

void axpy_flush(double* y, double a, const double* x, std::size_t n, double eps) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(y + i), p);
    const __m256d keep = _mm256_cmp_pd(_mm256_andnot_pd(sign, v), veps, _CMP_NLT_UQ);
    _mm256_storeu_pd(y + i, _mm256_and_pd(v, keep));
  }
  for (; i < n; ++i) {
    const double p = a * x[i];
    const double v = y[i] - p;
    y[i] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void axpy_indexed_flush(double* y, double a, const double* x, const int* idx, std::size_t n, double eps) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    const __m256d v = _mm256_sub_pd(_mm256_i32gather_pd(y, vi, 8), p);
    const __m256d keep = _mm256_cmp_pd(_mm256_andnot_pd(sign, v), veps, _CMP_NLT_UQ);
    alignas(32) double out[4];
    _mm256_store_pd(out, _mm256_and_pd(v, keep));
    y[idx[k]] = out[0];
    y[idx[k + 1]] = out[1];
    y[idx[k + 2]] = out[2];
    y[idx[k + 3]] = out[3];
  }
  for (; k < n; ++k) {
    const double p = a * x[k];
    const double v = y[idx[k]] - p;
    y[idx[k]] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void divide(double* x, double d, std::size_t n) {
  const __m256d vd = _mm256_set1_pd(d);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), vd));
  for (; i < n; ++i) x[i] = x[i] / d;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double p = x[i] * y[i];
    s = s + p;
  }
  return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{axpy_flush, axpy_indexed_flush, divide, dot, "avx2"};
  return &table;
}

}  // namespace railflow::kernels
