#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hbesov/hermite.hpp"
#include "hbesov/simd/kernels.hpp"
#include "oracles.hpp"

using namespace hbesov;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("backend names parse") {
  CHECK(simd::parse_backend("scalar") == simd::Backend::scalar);
  CHECK(simd::backend_name(simd::Backend::scalar) == "scalar");
  CHECK_THROWS(simd::parse_backend("neon"));
  if (!simd::avx2_supported()) CHECK_THROWS(simd::set_backend(simd::Backend::avx2));
}

TEST_CASE("vector kernels agree across backends") {
  if (!simd::avx2_supported()) return;
  const auto& s = simd::table(simd::Backend::scalar);
  const auto& v = simd::table(simd::Backend::avx2);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 17u, 64u, 1001u}) {
    CAPTURE(n);
    const auto a = noise(n, 1 + n), b = noise(n, 2 + n), w = noise(n, 3 + n);
    std::vector<double> wpos(w);
    for (auto& x : wpos) x = std::abs(x);
    CHECK(rel(v.dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n)) < 1e-13);
    CHECK(rel(v.weighted_abs_sum(wpos.data(), a.data(), b.data(), n),
              s.weighted_abs_sum(wpos.data(), a.data(), b.data(), n)) < 1e-13);
    CHECK(rel(v.weighted_abs_sum(wpos.data(), a.data(), nullptr, n),
              s.weighted_abs_sum(wpos.data(), a.data(), nullptr, n)) < 1e-13);
    CHECK(rel(v.weighted_sq_sum(wpos.data(), a.data(), b.data(), n),
              s.weighted_sq_sum(wpos.data(), a.data(), b.data(), n)) < 1e-13);
    CHECK(v.max_abs(a.data(), nullptr, n) == s.max_abs(a.data(), nullptr, n));
    CHECK(rel(v.max_abs(a.data(), b.data(), n), s.max_abs(a.data(), b.data(), n)) < 1e-15);
    std::vector<double> y1 = b, y2 = b;
    s.axpy(0.37, a.data(), y1.data(), n);
    v.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(y2[i], y1[i]) < 1e-15);
  }
}

TEST_CASE("gemm kernels agree across backends") {
  if (!simd::avx2_supported()) return;
  const auto& s = simd::table(simd::Backend::scalar);
  const auto& v = simd::table(simd::Backend::avx2);
  struct Shape { std::size_t m, n, k; };
  for (Shape sh : {Shape{1, 1, 1}, Shape{8, 4, 3}, Shape{13, 7, 300}, Shape{67, 65, 257}, Shape{5, 130, 9}}) {
    CAPTURE(sh.m);
    CAPTURE(sh.n);
    CAPTURE(sh.k);
    const std::size_t lda = sh.m + 3, ldb = sh.n + 1, ldc = sh.m + 2;
    const auto a = noise(sh.k * lda, 11), b = noise(sh.k * ldb, 12);
    std::vector<double> c1(sh.n * ldc, 9.0), c2(sh.n * ldc, 9.0);
    s.gemm_tn(sh.m, sh.n, sh.k, a.data(), lda, b.data(), ldb, c1.data(), ldc);
    v.gemm_tn(sh.m, sh.n, sh.k, a.data(), lda, b.data(), ldb, c2.data(), ldc);
    for (std::size_t j = 0; j < sh.n; ++j)
      for (std::size_t i = 0; i < sh.m; ++i) {
        // reference by hand
        double ref = 0.0;
        for (std::size_t r = 0; r < sh.k; ++r) ref += a[r * lda + i] * b[r * ldb + j];
        CHECK(std::abs(c1[j * ldc + i] - ref) < 1e-12 * (1.0 + sh.k));
        CHECK(std::abs(c2[j * ldc + i] - ref) < 1e-12 * (1.0 + sh.k));
      }

    const std::size_t la = sh.k + 1, lb = sh.k + 2, lc = sh.n + 3;
    const auto a2 = noise(sh.m * la, 21), b2 = noise(sh.n * lb, 22);
    std::vector<double> d1(sh.m * lc), d2(sh.m * lc);
    s.gemm_nt(sh.m, sh.n, sh.k, a2.data(), la, b2.data(), lb, d1.data(), lc);
    v.gemm_nt(sh.m, sh.n, sh.k, a2.data(), la, b2.data(), lb, d2.data(), lc);
    for (std::size_t i = 0; i < sh.m; ++i)
      for (std::size_t j = 0; j < sh.n; ++j) CHECK(rel(d2[i * lc + j], d1[i * lc + j]) < 1e-12 * (1.0 + sh.k));
  }
}

TEST_CASE("each backend is bitwise reproducible") {
  for (auto backend : {simd::Backend::scalar, simd::Backend::avx2}) {
    if (backend == simd::Backend::avx2 && !simd::avx2_supported()) continue;
    const auto& t = simd::table(backend);
    const auto a = noise(4099, 5), b = noise(4099, 6);
    const double first = t.dot(a.data(), b.data(), a.size());
    for (int rep = 0; rep < 3; ++rep) CHECK(t.dot(a.data(), b.data(), a.size()) == first);
  }
}

TEST_CASE("transforms agree across backends") {
  if (!simd::avx2_supported()) return;
  BackendGuard guard;
  const HermiteBasis basis(1, 96);
  const auto c = oracle::random_coefficients(basis, 99);
  const Grid grid = Grid::for_basis(basis);
  simd::set_backend(simd::Backend::scalar);
  const GridFunction fs = synthesize(c, grid);
  const auto cs = analyze(fs, basis);
  simd::set_backend(simd::Backend::avx2);
  const GridFunction fv = synthesize(c, grid);
  const auto cv = analyze(fv, basis);
  double m = 0.0;
  for (std::size_t i = 0; i < fs.re.size(); ++i) m = std::max(m, std::abs(fs.re[i] - fv.re[i]));
  CHECK(m < 1e-13);
  CHECK(oracle::max_abs_diff(cs.values(), cv.values()) < 1e-13);
}

TEST_CASE("weighted power sums") {
  const std::vector<double> w{1.0, 2.0, 0.5};
  const std::vector<double> re{1.0, -2.0, 3.0};
  const std::vector<double> im{0.0, 0.0, 4.0};
  CHECK(simd::weighted_abs_pow_sum(w, re, im, 1.0) == doctest::Approx(1.0 + 4.0 + 2.5));
  CHECK(simd::weighted_abs_pow_sum(w, re, im, 2.0) == doctest::Approx(1.0 + 8.0 + 12.5));
  CHECK(simd::weighted_abs_pow_sum(w, re, im, 3.0) == doctest::Approx(1.0 + 16.0 + 62.5));
  CHECK(simd::max_abs(re, im) == doctest::Approx(5.0));
  CHECK_THROWS(simd::dot(re, std::vector<double>{1.0}));
}

}
