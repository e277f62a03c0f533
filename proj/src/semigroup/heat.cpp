#include <cmath>
#include <numbers>

#include "hbesov/errors.hpp"
#include "hbesov/semigroup.hpp"

namespace hbesov {
namespace {

void require_kernel_time(double t) {
  if (!(t > 0.0)) throw ParameterError("Mehler kernel needs t > 0");
  if (t < kMinKernelTime) throw ParameterError("Mehler kernel refused for t < 1e-6 (ill-conditioned)");
}

// log K_t(x, y)
double log_mehler(double sh, double ch, double x, double y) {
  return -0.5 * std::log(2.0 * std::numbers::pi * sh) - (ch * (x * x + y * y) - 2.0 * x * y) / (2.0 * sh);
}

}  // namespace

SpectralCoefficients heat_apply(double t, const SpectralCoefficients& c) {
  if (!(t >= 0.0)) throw ParameterError("heat flow needs t >= 0");
  const HermiteBasis& b = c.basis();
  std::vector<double> decay(std::size_t(b.max_total_degree()) + 1);
  for (std::size_t k = 0; k < decay.size(); ++k) decay[k] = std::exp(-t * b.eigenvalue(int(k)));
  SpectralCoefficients out(b);
  out.mark_lossy(c.lossy());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = decay[std::size_t(b.total_degree(i))] * c[i];
  return out;
}

KernelMatrix mehler_kernel(double t, const Grid& grid) {
  require_kernel_time(t);
  if (grid.dim() != 1) throw ParameterError("Mehler kernel matrices are one-dimensional");
  const double sh = std::sinh(2.0 * t), ch = std::cosh(2.0 * t);
  KernelMatrix km;
  km.x = grid.axis().nodes;
  km.y = km.x;
  km.x_weights = grid.axis().weights;
  km.y_weights = km.x_weights;
  const std::size_t n = km.x.size();
  km.values.resize(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) km.values[k * n + i] = std::exp(log_mehler(sh, ch, km.x[i], km.y[k]));
  return km;
}

double gaussian_bound_ratio(double t, const Grid& grid, double C) {
  require_kernel_time(t);
  if (!(C > 0.0)) throw ParameterError("Gaussian bound constant must be positive");
  if (grid.dim() != 1) throw ParameterError("Gaussian bound check is one-dimensional");
  const double sh = std::sinh(2.0 * t), ch = std::cosh(2.0 * t);
  const auto& x = grid.axis().nodes;
  double worst = -INFINITY;
  for (double yk : x)
    for (double xi : x) {
      const double d = xi - yk;
      worst = std::max(worst, log_mehler(sh, ch, xi, yk) + 0.5 * std::log(t) + d * d / (C * t));
    }
  return std::exp(worst);
}

}  // namespace hbesov
