#pragma once

// Data-parallel inner loops used by the transforms, norms and kernel
// builders. Every kernel has a scalar reference implementation and, on
// x86-64, an AVX2/FMA variant; the variant is chosen once at runtime and
// can be pinned for reproducibility.

#include <cstddef>
#include <span>
#include <string_view>

namespace hbesov::simd {

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
/// Throws ParameterError when the requested backend is not available.
void set_backend(Backend backend);
/// Accepts "auto", "scalar" or "avx2".
Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend backend);

/// Function table of one backend. Reductions have a fixed order per
/// backend, so results are bitwise reproducible for a given backend.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // c[j*ldc + i] = sum_r a[r*lda + i] * b[r*ldb + j]   (i < m, j < n, r < k)
  void (*gemm_tn)(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc);
  // c[i*ldc + j] = sum_r a[i*lda + r] * b[j*ldb + r]
  void (*gemm_nt)(std::size_t m, std::size_t n, std::size_t k, const double* a, std::size_t lda,
                  const double* b, std::size_t ldb, double* c, std::size_t ldc);
  // sum_i w_i |v_i| with v = re + i im (im may be null)
  double (*weighted_abs_sum)(const double* w, const double* re, const double* im, std::size_t n);
  double (*weighted_sq_sum)(const double* w, const double* re, const double* im, std::size_t n);
  double (*max_abs)(const double* re, const double* im, std::size_t n);
};

const KernelTable& table(Backend backend);
inline const KernelTable& active() { return table(active_backend()); }

// Convenience wrappers on the active backend.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double weighted_abs_sum(std::span<const double> w, std::span<const double> re,
                        std::span<const double> im = {});
double weighted_sq_sum(std::span<const double> w, std::span<const double> re,
                       std::span<const double> im = {});
double max_abs(std::span<const double> re, std::span<const double> im = {});
/// sum_i w_i |v_i|^p for finite p >= 1; dispatches to the specialised kernels
/// for p = 1 and p = 2.
double weighted_abs_pow_sum(std::span<const double> w, std::span<const double> re,
                            std::span<const double> im, double p);

}  // namespace hbesov::simd
