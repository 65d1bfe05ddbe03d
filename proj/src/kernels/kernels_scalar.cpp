#include <cmath>

#include "railflow/kernels.hpp"

namespace railflow::kernels {
namespace {

void axpy_flush(double* y, double a, const double* x, std::size_t n, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = a * x[i];
    const double v = y[i] - p;
    y[i] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void axpy_indexed_flush(double* y, double a, const double* x, const int* idx, std::size_t n, double eps) {
  for (std::size_t k = 0; k < n; ++k) {
    const double p = a * x[k];
    const double v = y[idx[k]] - p;
    y[idx[k]] = std::fabs(v) < eps ? 0.0 : v;
  }
}

void divide(double* x, double d, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] / d;
}

double dot(const double* x, const double* y, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (std::size_t k = 0; k < 4; ++k) {
      const double p = x[i + k] * y[i + k];
      lane[k] = lane[k] + p;
    }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double p = x[i] * y[i];
    s = s + p;
  }
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{axpy_flush, axpy_indexed_flush, divide, dot, "scalar"};
  return table;
}

}  // namespace railflow::kernels
