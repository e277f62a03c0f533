#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hbesov/errors.hpp"
#include "simd/kernels_internal.hpp"

namespace hbesov::simd {
namespace {

Backend detect() {
  if (const char* env = std::getenv("HBESOV_SIMD")) {
    const Backend b = parse_backend(env);
    if (b == Backend::avx2 && !avx2_supported()) return Backend::scalar;
    return b;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_supported() {
#if defined(HBESOV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_supported())
    throw ParameterError("AVX2/FMA kernels are not available on this machine");
  current().store(backend, std::memory_order_relaxed);
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  if (name == "auto") return avx2_supported() ? Backend::avx2 : Backend::scalar;
  throw ParameterError("unknown SIMD backend '" + std::string(name) + "'");
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

const KernelTable& table(Backend backend) {
#ifdef HBESOV_HAVE_AVX2
  if (backend == Backend::avx2) {
    if (!avx2_supported()) throw ParameterError("AVX2/FMA kernels are not available on this machine");
    return avx2::kTable;
  }
#else
  if (backend == Backend::avx2) throw ParameterError("built without AVX2 kernels");
#endif
  return scalar::kTable;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw ParameterError("axpy: length mismatch");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace {
void check_planes(std::size_t n, std::span<const double> re, std::span<const double> im) {
  if (re.size() != n || (!im.empty() && im.size() != n))
    throw ParameterError("weighted reduction: length mismatch");
}
const double* im_ptr(std::span<const double> im) { return im.empty() ? nullptr : im.data(); }
}  // namespace

double weighted_abs_sum(std::span<const double> w, std::span<const double> re,
                        std::span<const double> im) {
  check_planes(w.size(), re, im);
  return active().weighted_abs_sum(w.data(), re.data(), im_ptr(im), w.size());
}

double weighted_sq_sum(std::span<const double> w, std::span<const double> re,
                       std::span<const double> im) {
  check_planes(w.size(), re, im);
  return active().weighted_sq_sum(w.data(), re.data(), im_ptr(im), w.size());
}

double max_abs(std::span<const double> re, std::span<const double> im) {
  check_planes(re.size(), re, im);
  return active().max_abs(re.data(), im_ptr(im), re.size());
}

double weighted_abs_pow_sum(std::span<const double> w, std::span<const double> re,
                            std::span<const double> im, double p) {
  if (p == 1.0) return weighted_abs_sum(w, re, im);
  if (p == 2.0) return weighted_sq_sum(w, re, im);
  check_planes(w.size(), re, im);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double mag = im.empty() ? std::fabs(re[i]) : std::hypot(re[i], im[i]);
    if (mag > 0.0) s += w[i] * std::pow(mag, p);
  }
  return s;
}

}  // namespace hbesov::simd
