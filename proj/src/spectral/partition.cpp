#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {
namespace {

double mollifier(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double rho(double lambda) { return mollifier(lambda - 0.5) * mollifier(2.0 - lambda); }

}  // namespace

DyadicPartition::DyadicPartition(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (dim != 1 && dim != 2) throw ParameterError("partition dimension must be 1 or 2");
  if (max_degree < 0) throw ParameterError("max degree must be non-negative");
  j0_ = 0;
  while (std::ldexp(1.0, j0_ + 1) <= dim_) ++j0_;
  while (std::ldexp(1.0, j0_ + 1) > dim_) --j0_;
  const double radius = spectral_radius();
  j_max_ = j0_;
  while (std::ldexp(1.0, j_max_) <= radius) ++j_max_;
}

double DyadicPartition::spectral_radius() const {
  return std::sqrt(2.0 * dim_ * max_degree_ + dim_);
}

double DyadicPartition::bump(double lambda) {
  if (!(lambda > 0.5 && lambda < 2.0)) return 0.0;
  // Nonzero normalizer terms come from arguments in (1/2, 2); summing them in
  // ascending argument order makes the normalizer identical for λ and λ/2.
  double denom = 0.0;
  for (int k = -2; k <= 2; ++k) denom += rho(std::ldexp(lambda, k));
  return rho(lambda) / denom;
}

double DyadicPartition::phi(int j, double lambda) { return bump(std::ldexp(lambda, -j)); }

double DyadicPartition::widened(int j, double lambda) {
  return phi(j - 1, lambda) + phi(j, lambda) + phi(j + 1, lambda);
}

double DyadicPartition::low(double lambda) {
  if (lambda <= 1.0) return 1.0;
  if (lambda >= 2.0) return 0.0;
  return bump(lambda);
}

}  // namespace hbesov
