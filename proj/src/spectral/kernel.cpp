#include <algorithm>
#include <cmath>
#include <numbers>

#include "hbesov/errors.hpp"
#include "hbesov/simd/kernels.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {
namespace {

constexpr std::size_t kPointChunk = 256;
constexpr std::size_t kColumnBlock = 64;

void require_1d(const Grid& grid) {
  if (grid.dim() != 1) throw ParameterError("kernels are implemented for d = 1 only");
}

// rows[(n - lo) * P + i] = h_n(x_i) for lo <= n <= hi. The recurrence always
// starts at 0, so points are processed in chunks to keep the scratch small.
std::vector<double> hermite_rows(int lo, int hi, const std::vector<double>& x) {
  const std::size_t p = x.size();
  const std::size_t rows = std::size_t(hi - lo + 1);
  std::vector<double> out(rows * p);
  std::vector<double> scratch;
  for (std::size_t start = 0; start < p; start += kPointChunk) {
    const std::size_t len = std::min(kPointChunk, p - start);
    scratch.assign(std::size_t(hi + 1) * len, 0.0);
    hermite_table(hi, std::span<const double>(x.data() + start, len), scratch);
    for (std::size_t r = 0; r < rows; ++r)
      std::copy_n(scratch.data() + (std::size_t(lo) + r) * len, len, out.data() + r * p + start);
  }
  return out;
}

struct Window {
  int lo = 0;
  int hi = -1;
  std::vector<double> values;  // m_n for n = 0..N
  bool resolved = true;
};

Window symbol_window(const SymbolFn& m, int max_degree) {
  Window w;
  w.values.resize(std::size_t(max_degree) + 1);
  double peak = 0.0;
  for (int n = 0; n <= max_degree; ++n) {
    w.values[std::size_t(n)] = m(std::sqrt(2.0 * n + 1.0));
    peak = std::max(peak, std::abs(w.values[std::size_t(n)]));
  }
  w.resolved = std::abs(w.values.back()) <= kSymbolTruncation;
  if (peak == 0.0) return w;
  const double cut = kSymbolNegligible * peak;
  w.lo = 0;
  while (std::abs(w.values[std::size_t(w.lo)]) <= cut) ++w.lo;
  w.hi = max_degree;
  while (std::abs(w.values[std::size_t(w.hi)]) <= cut) --w.hi;
  return w;
}

// sup over sampled columns c of sum_i w_i |sum_r a[r][i] b[r][c]|.
double column_sup(const std::vector<double>& a, const std::vector<double>& b, std::size_t rank,
                  std::size_t p, const std::vector<double>& w, std::size_t stride) {
  if (rank == 0) return 0.0;
  const auto& k = simd::active();
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < p; c += stride) cols.push_back(c);
  std::vector<double> packed(rank * kColumnBlock);
  std::vector<double> out(kColumnBlock * p);
  double best = 0.0;
  for (std::size_t start = 0; start < cols.size(); start += kColumnBlock) {
    const std::size_t nb = std::min(kColumnBlock, cols.size() - start);
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t j = 0; j < nb; ++j) packed[r * nb + j] = b[r * p + cols[start + j]];
    k.gemm_tn(p, nb, rank, a.data(), p, packed.data(), nb, out.data(), p);
    for (std::size_t j = 0; j < nb; ++j)
      best = std::max(best, k.weighted_abs_sum(w.data(), out.data() + j * p, nullptr, p));
  }
  return best;
}

}  // namespace

KernelFactors multiplier_factors(const SymbolFn& m, const Grid& grid, int max_degree) {
  require_1d(grid);
  if (max_degree < 0) throw ParameterError("max degree must be non-negative");
  const Window win = symbol_window(m, max_degree);
  KernelFactors f{grid, 0, {}, {}, win.resolved};
  if (win.hi < win.lo) return f;
  const std::size_t p = grid.axis_size();
  f.rank = std::size_t(win.hi - win.lo + 1);
  f.left = hermite_rows(win.lo, win.hi, grid.axis().nodes);
  f.right = f.left;
  for (std::size_t r = 0; r < f.rank; ++r) {
    const double mv = win.values[std::size_t(win.lo) + r];
    for (std::size_t i = 0; i < p; ++i) f.right[r * p + i] *= mv;
  }
  return f;
}

KernelFactors poly_diff_factors(int alpha, int beta, const SymbolFn& m, const Grid& grid, int max_degree) {
  require_1d(grid);
  if (alpha < 0 || beta < 0) throw ParameterError("multi-index entries must be non-negative");
  if (max_degree < 0) throw ParameterError("max degree must be non-negative");
  const Window win = symbol_window(m, max_degree);
  KernelFactors f{grid, 0, {}, {}, win.resolved};
  if (win.hi < win.lo) return f;
  const int s = alpha + beta;
  const int k_lo = std::max(0, win.lo - s);
  const int k_hi = win.hi + s;
  const std::size_t p = grid.axis_size();
  f.rank = std::size_t(k_hi - k_lo + 1);
  f.left = hermite_rows(k_lo, k_hi, grid.axis().nodes);

  // x^α ∂^β h_n spans degrees n-s..n+s; accumulate its column of the
  // coefficient map times m_n h_n(y) into the right factor.
  const HermiteBasis wide(1, k_hi);
  const int a[1] = {alpha};
  const int b[1] = {beta};
  f.right.assign(f.rank * p, 0.0);
  const auto& k = simd::active();
  for (int n = win.lo; n <= win.hi; ++n) {
    const double mv = win.values[std::size_t(n)];
    if (mv == 0.0) continue;
    const SpectralCoefficients col = apply_poly_diff(a, b, SpectralCoefficients::unit(wide, {n, 0}));
    const double* hn = f.left.data() + std::size_t(n - k_lo) * p;
    for (int kk = std::max(k_lo, n - s); kk <= std::min(k_hi, n + s); ++kk) {
      const double t = col[std::size_t(kk)].real();
      if (t != 0.0) k.axpy(t * mv, hn, f.right.data() + std::size_t(kk - k_lo) * p, p);
    }
  }
  // Roles: K(x, y) = Σ_k h_k(x) right_k(y).
  return f;
}

KernelMatrix materialize(const KernelFactors& f) {
  const std::size_t p = f.grid.axis_size();
  KernelMatrix km;
  km.x = f.grid.axis().nodes;
  km.y = km.x;
  km.x_weights = f.grid.axis().weights;
  km.y_weights = km.x_weights;
  km.resolved = f.resolved;
  km.values.assign(p * p, 0.0);
  if (f.rank > 0)
    simd::active().gemm_tn(p, p, f.rank, f.left.data(), p, f.right.data(), p, km.values.data(), p);
  return km;
}

KernelMatrix multiplier_kernel(const SymbolFn& m, const Grid& grid, int max_degree) {
  return materialize(multiplier_factors(m, grid, max_degree));
}

double operator_norm(const KernelMatrix& km, Exponent p) {
  const std::size_t nx = km.x.size(), ny = km.y.size();
  if (km.values.size() != nx * ny) throw ParameterError("kernel matrix shape mismatch");
  const auto& k = simd::active();
  double best = 0.0;
  if (p == Exponent::finite(1.0)) {
    for (std::size_t c = 0; c < ny; ++c)
      best = std::max(best, k.weighted_abs_sum(km.x_weights.data(), km.values.data() + c * nx, nullptr, nx));
    return best;
  }
  if (p.is_infinite()) {
    std::vector<double> row(ny);
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t c = 0; c < ny; ++c) row[c] = km.values[c * nx + i];
      best = std::max(best, k.weighted_abs_sum(km.y_weights.data(), row.data(), nullptr, ny));
    }
    return best;
  }
  throw ParameterError("kernel operator norms are computed for p = 1 or p = inf only");
}

double operator_norm(const KernelFactors& f, Exponent p, std::size_t stride) {
  if (stride == 0) throw ParameterError("stride must be positive");
  const std::size_t n = f.grid.axis_size();
  const std::vector<double>& w = f.grid.axis().weights;
  if (p == Exponent::finite(1.0)) return column_sup(f.left, f.right, f.rank, n, w, stride);
  if (p.is_infinite()) return column_sup(f.right, f.left, f.rank, n, w, stride);
  throw ParameterError("kernel operator norms are computed for p = 1 or p = inf only");
}

double operator_norm_upper_bound(double norm_1, double norm_inf, Exponent p) {
  if (p.is_infinite()) return norm_inf;
  const double r = p.reciprocal();
  return std::pow(norm_1, r) * std::pow(norm_inf, 1.0 - r);
}

}  // namespace hbesov
