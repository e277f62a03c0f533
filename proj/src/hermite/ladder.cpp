#include <cmath>
#include <numbers>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {
namespace {

// sign = +1 for x, -1 for ∂.
SpectralCoefficients ladder(int axis, const SpectralCoefficients& c, double sign) {
  const HermiteBasis& b = c.basis();
  if (axis < 0 || axis >= b.dim()) throw ParameterError("axis out of range");
  const int n_max = b.max_degree();
  const std::size_t line = b.axis_size();
  const std::size_t lines = b.dim() == 1 ? 1 : line;
  // Offset between consecutive degrees along `axis`, and between lines.
  const std::size_t step = (b.dim() == 2 && axis == 0) ? line : 1;
  const std::size_t line_step = (b.dim() == 2 && axis == 0) ? 1 : line;
  const double inv_root2 = 1.0 / std::numbers::sqrt2;

  SpectralCoefficients out(b);
  out.mark_lossy(c.lossy());
  bool dropped = false;
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t base = l * line_step;
    for (int m = 0; m <= n_max; ++m) {
      complex v{};
      if (m + 1 <= n_max) v += std::sqrt(double(m + 1)) * c[base + std::size_t(m + 1) * step];
      if (m >= 1) v += sign * std::sqrt(double(m)) * c[base + std::size_t(m - 1) * step];
      out[base + std::size_t(m) * step] = inv_root2 * v;
    }
    dropped = dropped || c[base + std::size_t(n_max) * step] != complex{};
  }
  out.mark_lossy(dropped);
  return out;
}

}  // namespace

SpectralCoefficients apply_position(int axis, const SpectralCoefficients& c) { return ladder(axis, c, 1.0); }

SpectralCoefficients apply_derivative(int axis, const SpectralCoefficients& c) { return ladder(axis, c, -1.0); }

SpectralCoefficients apply_poly_diff(std::span<const int> alpha, std::span<const int> beta,
                                     const SpectralCoefficients& c) {
  const int dim = c.basis().dim();
  if (alpha.size() != std::size_t(dim) || beta.size() != std::size_t(dim))
    throw ParameterError("multi-index length must equal the dimension");
  SpectralCoefficients out = c;
  for (int a = 0; a < dim; ++a) {
    if (beta[a] < 0 || alpha[a] < 0) throw ParameterError("multi-index entries must be non-negative");
    for (int k = 0; k < beta[a]; ++k) out = apply_derivative(a, out);
  }
  for (int a = 0; a < dim; ++a)
    for (int k = 0; k < alpha[a]; ++k) out = apply_position(a, out);
  return out;
}

SpectralCoefficients apply_oscillator(const SpectralCoefficients& c) {
  SpectralCoefficients out(c.basis());
  for (int a = 0; a < c.basis().dim(); ++a) {
    out += apply_position(a, apply_position(a, c));
    out -= apply_derivative(a, apply_derivative(a, c));
  }
  return out;
}

}  // namespace hbesov
