#include <algorithm>
#include <cmath>
#include <string>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {

HermiteBasis::HermiteBasis(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {
  if (dim != 1 && dim != 2) throw ParameterError("dimension must be 1 or 2, got " + std::to_string(dim));
  if (max_degree < 0) throw ParameterError("max degree must be non-negative");
}

int HermiteBasis::total_degree(std::size_t flat) const {
  if (dim_ == 1) return static_cast<int>(flat);
  return static_cast<int>(flat / axis_size() + flat % axis_size());
}

std::array<int, 2> HermiteBasis::multi_index(std::size_t flat) const {
  if (dim_ == 1) return {static_cast<int>(flat), 0};
  return {static_cast<int>(flat / axis_size()), static_cast<int>(flat % axis_size())};
}

std::size_t HermiteBasis::flat_index(std::array<int, 2> n) const {
  const int last = dim_ == 1 ? 0 : n[1];
  if (n[0] < 0 || n[0] > max_degree_ || last < 0 || last > max_degree_ || (dim_ == 1 && n[1] != 0))
    throw ParameterError("multi-index outside the basis");
  return dim_ == 1 ? std::size_t(n[0]) : std::size_t(n[0]) * axis_size() + std::size_t(n[1]);
}

SpectralCoefficients::SpectralCoefficients(HermiteBasis basis)
    : basis_(basis), values_(basis.size(), complex{}) {}

SpectralCoefficients::SpectralCoefficients(HermiteBasis basis, std::vector<complex> values)
    : basis_(basis), values_(std::move(values)) {
  if (values_.size() != basis_.size()) throw ParameterError("coefficient count does not match basis");
}

SpectralCoefficients SpectralCoefficients::unit(HermiteBasis basis, std::array<int, 2> n) {
  SpectralCoefficients c(basis);
  c.at(n) = 1.0;
  return c;
}

SpectralCoefficients SpectralCoefficients::resized(int max_degree) const {
  const HermiteBasis target(basis_.dim(), max_degree);
  SpectralCoefficients out(target);
  out.lossy_ = lossy_;
  bool dropped = false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto n = basis_.multi_index(i);
    if (n[0] > max_degree || n[1] > max_degree) {
      dropped = dropped || values_[i] != complex{};
      continue;
    }
    out.at(n) = values_[i];
  }
  out.mark_lossy(dropped);
  return out;
}

double SpectralCoefficients::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s);
}

double SpectralCoefficients::tail_energy(int width) const {
  const int cut = basis_.max_degree() - width;
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto n = basis_.multi_index(i);
    if (n[0] > cut || n[1] > cut) s += std::norm(values_[i]);
  }
  return s;
}

complex inner(const SpectralCoefficients& a, const SpectralCoefficients& b) {
  if (!(a.basis_ == b.basis_)) throw ParameterError("inner product of coefficients on different bases");
  complex s{};
  for (std::size_t i = 0; i < a.values_.size(); ++i) s += a.values_[i] * std::conj(b.values_[i]);
  return s;
}

SpectralCoefficients& SpectralCoefficients::operator+=(const SpectralCoefficients& other) {
  if (!(basis_ == other.basis_)) throw ParameterError("adding coefficients on different bases");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  lossy_ = lossy_ || other.lossy_;
  return *this;
}

SpectralCoefficients& SpectralCoefficients::operator-=(const SpectralCoefficients& other) {
  if (!(basis_ == other.basis_)) throw ParameterError("subtracting coefficients on different bases");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  lossy_ = lossy_ || other.lossy_;
  return *this;
}

SpectralCoefficients& SpectralCoefficients::operator*=(complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

}  // namespace hbesov
