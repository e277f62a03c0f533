#include "simd/kernels_internal.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace hbesov::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(s, _mm_unpackhi_pd(s, s)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4) s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

// 8 rows of C (two ymm) by 4 columns, accumulating over kl terms.
inline void micro_8x4(std::size_t kl, const double* a, std::size_t lda, const double* b,
                      std::size_t ldb, double* c, std::size_t ldc) {
  __m256d c00 = _mm256_loadu_pd(c), c01 = _mm256_loadu_pd(c + 4);
  __m256d c10 = _mm256_loadu_pd(c + ldc), c11 = _mm256_loadu_pd(c + ldc + 4);
  __m256d c20 = _mm256_loadu_pd(c + 2 * ldc), c21 = _mm256_loadu_pd(c + 2 * ldc + 4);
  __m256d c30 = _mm256_loadu_pd(c + 3 * ldc), c31 = _mm256_loadu_pd(c + 3 * ldc + 4);
  for (std::size_t r = 0; r < kl; ++r) {
    const double* ar = a + r * lda;
    const double* br = b + r * ldb;
    const __m256d a0 = _mm256_loadu_pd(ar), a1 = _mm256_loadu_pd(ar + 4);
    __m256d bv = _mm256_broadcast_sd(br);
    c00 = _mm256_fmadd_pd(a0, bv, c00);
    c01 = _mm256_fmadd_pd(a1, bv, c01);
    bv = _mm256_broadcast_sd(br + 1);
    c10 = _mm256_fmadd_pd(a0, bv, c10);
    c11 = _mm256_fmadd_pd(a1, bv, c11);
    bv = _mm256_broadcast_sd(br + 2);
    c20 = _mm256_fmadd_pd(a0, bv, c20);
    c21 = _mm256_fmadd_pd(a1, bv, c21);
    bv = _mm256_broadcast_sd(br + 3);
    c30 = _mm256_fmadd_pd(a0, bv, c30);
    c31 = _mm256_fmadd_pd(a1, bv, c31);
  }
  _mm256_storeu_pd(c, c00);
  _mm256_storeu_pd(c + 4, c01);
  _mm256_storeu_pd(c + ldc, c10);
  _mm256_storeu_pd(c + ldc + 4, c11);
  _mm256_storeu_pd(c + 2 * ldc, c20);
  _mm256_storeu_pd(c + 2 * ldc + 4, c21);
  _mm256_storeu_pd(c + 3 * ldc, c30);
  _mm256_storeu_pd(c + 3 * ldc + 4, c31);
}

inline void micro_8x1(std::size_t kl, const double* a, std::size_t lda, const double* b,
                      std::size_t ldb, double* c) {
  __m256d c0 = _mm256_loadu_pd(c), c1 = _mm256_loadu_pd(c + 4);
  for (std::size_t r = 0; r < kl; ++r) {
    const double* ar = a + r * lda;
    const __m256d bv = _mm256_broadcast_sd(b + r * ldb);
    c0 = _mm256_fmadd_pd(_mm256_loadu_pd(ar), bv, c0);
    c1 = _mm256_fmadd_pd(_mm256_loadu_pd(ar + 4), bv, c1);
  }
  _mm256_storeu_pd(c, c0);
  _mm256_storeu_pd(c + 4, c1);
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
             const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  constexpr std::size_t kKc = 256;
  constexpr std::size_t kNc = 64;
  for (std::size_t j = 0; j < n; ++j) std::fill(c + j * ldc, c + j * ldc + m, 0.0);
  const std::size_t m8 = m - m % 8;
  for (std::size_t kb = 0; kb < k; kb += kKc) {
    const std::size_t kl = std::min(kKc, k - kb);
    const double* ak = a + kb * lda;
    const double* bk = b + kb * ldb;
    for (std::size_t jb = 0; jb < n; jb += kNc) {
      const std::size_t je = std::min(n, jb + kNc);
      for (std::size_t i0 = 0; i0 < m8; i0 += 8) {
        std::size_t j = jb;
        for (; j + 4 <= je; j += 4) micro_8x4(kl, ak + i0, lda, bk + j, ldb, c + j * ldc + i0, ldc);
        for (; j < je; ++j) micro_8x1(kl, ak + i0, lda, bk + j, ldb, c + j * ldc + i0);
      }
      for (std::size_t j = jb; j < je; ++j) {
        for (std::size_t i = m8; i < m; ++i) {
          double s = c[j * ldc + i];
          for (std::size_t r = 0; r < kl; ++r) s = std::fma(ak[r * lda + i], bk[r * ldb + j], s);
          c[j * ldc + i] = s;
        }
      }
    }
  }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
             const double* b, std::size_t ldb, double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i * ldc + j] = dot(a + i * lda, b + j * ldb, k);
}

double weighted_abs_sum(const double* w, const double* re, const double* im, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  if (im == nullptr) {
    for (; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_and_pd(_mm256_loadu_pd(re + i), kAbsMask);
      s = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), v, s);
    }
    double r = hsum(s);
    for (; i < n; ++i) r = std::fma(w[i], std::fabs(re[i]), r);
    return r;
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(re + i), y = _mm256_loadu_pd(im + i);
    const __m256d mag = _mm256_sqrt_pd(_mm256_fmadd_pd(x, x, _mm256_mul_pd(y, y)));
    s = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), mag, s);
  }
  double r = hsum(s);
  for (; i < n; ++i) r = std::fma(w[i], std::sqrt(std::fma(re[i], re[i], im[i] * im[i])), r);
  return r;
}

double weighted_sq_sum(const double* w, const double* re, const double* im, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(re + i);
    __m256d sq = _mm256_mul_pd(x, x);
    if (im != nullptr) {
      const __m256d y = _mm256_loadu_pd(im + i);
      sq = _mm256_fmadd_pd(y, y, sq);
    }
    s = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), sq, s);
  }
  double r = hsum(s);
  for (; i < n; ++i) {
    double sq = re[i] * re[i];
    if (im != nullptr) sq = std::fma(im[i], im[i], sq);
    r = std::fma(w[i], sq, r);
  }
  return r;
}

double max_abs(const double* re, const double* im, std::size_t n) {
  __m256d mv = _mm256_setzero_pd();
  std::size_t i = 0;
  if (im == nullptr) {
    for (; i + 4 <= n; i += 4) mv = _mm256_max_pd(mv, _mm256_and_pd(_mm256_loadu_pd(re + i), kAbsMask));
    double m = hmax(mv);
    for (; i < n; ++i) m = std::max(m, std::fabs(re[i]));
    return m;
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(re + i), y = _mm256_loadu_pd(im + i);
    mv = _mm256_max_pd(mv, _mm256_fmadd_pd(x, x, _mm256_mul_pd(y, y)));
  }
  double m = hmax(mv);
  for (; i < n; ++i) m = std::max(m, std::fma(re[i], re[i], im[i] * im[i]));
  return std::sqrt(m);
}

}  // namespace

const KernelTable kTable{dot, axpy, gemm_tn, gemm_nt, weighted_abs_sum, weighted_sq_sum, max_abs};

}  // namespace hbesov::simd::avx2
