#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {

double poly_diff_ratio(std::span<const int> alpha, std::span<const int> beta, const SpectralCoefficients& c) {
  const int dim = c.basis().dim();
  if (alpha.size() != std::size_t(dim) || beta.size() != std::size_t(dim))
    throw ParameterError("multi-index length must equal the dimension");
  int order = 0;
  for (int a = 0; a < dim; ++a) order += alpha[a] + beta[a];
  const SpectralCoefficients wide = c.resized(c.basis().max_degree() + order);
  const double den = apply_H_power(order, wide).l2_norm();
  if (den == 0.0) return 0.0;
  return apply_poly_diff(alpha, beta, wide).l2_norm() / den;
}

std::pair<double, double> oscillator_split_ratios(const SpectralCoefficients& c) {
  const int dim = c.basis().dim();
  const SpectralCoefficients wide = c.resized(c.basis().max_degree() + 2);
  SpectralCoefficients lap(wide.basis()), quad(wide.basis());
  for (int a = 0; a < dim; ++a) {
    lap += apply_derivative(a, apply_derivative(a, wide));
    quad += apply_position(a, apply_position(a, wide));
  }
  const double h = apply_H_power(2.0, wide).l2_norm();
  const double split = lap.l2_norm() + quad.l2_norm();
  if (h == 0.0) return {0.0, 0.0};
  return {h / split, split / h};
}

}  // namespace hbesov
