#include "simd/kernels_internal.hpp"

#include <algorithm>
#include <cmath>

namespace hbesov::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
             const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = c + j * ldc;
    std::fill(cj, cj + m, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      const double brj = b[r * ldb + j];
      const double* ar = a + r * lda;
      for (std::size_t i = 0; i < m; ++i) cj[i] += ar[i] * brj;
    }
  }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
             const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] = dot(a + i * lda, b + j * ldb, k);
}

double weighted_abs_sum(const double* w, const double* re, const double* im, std::size_t n) {
  double s = 0.0;
  if (im == nullptr) {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(re[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::sqrt(re[i] * re[i] + im[i] * im[i]);
  }
  return s;
}

double weighted_sq_sum(const double* w, const double* re, const double* im, std::size_t n) {
  double s = 0.0;
  if (im == nullptr) {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * (re[i] * re[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
  }
  return s;
}

double max_abs(const double* re, const double* im, std::size_t n) {
  double m = 0.0;
  if (im == nullptr) {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(re[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, re[i] * re[i] + im[i] * im[i]);
    m = std::sqrt(m);
  }
  return m;
}

const KernelTable kTable{dot, axpy, gemm_tn, gemm_nt, weighted_abs_sum, weighted_sq_sum, max_abs};

}  // namespace hbesov::simd::scalar
