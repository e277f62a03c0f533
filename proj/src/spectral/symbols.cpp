#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {
namespace {

double param(const std::map<std::string, double>& params, const std::string& symbol, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParameterError("symbol '" + symbol + "' needs parameter '" + key + "'");
  return it->second;
}

int integer_param(const std::map<std::string, double>& params, const std::string& symbol, const char* key) {
  const double v = param(params, symbol, key);
  if (v != std::floor(v)) throw ParameterError("symbol '" + symbol + "' parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

// Per total degree: m(√(2t+d)) for t = 0..d·N.
std::vector<double> symbol_by_degree(const std::function<double(double)>& m, const HermiteBasis& b) {
  std::vector<double> out(std::size_t(b.max_total_degree()) + 1);
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = m(std::sqrt(b.eigenvalue(int(t))));
  return out;
}

SpectralCoefficients diagonal(const std::function<double(double)>& m, const SpectralCoefficients& c) {
  const HermiteBasis& b = c.basis();
  const std::vector<double> by_degree = symbol_by_degree(m, b);
  SpectralCoefficients out(b);
  out.mark_lossy(c.lossy());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = by_degree[std::size_t(b.total_degree(i))] * c[i];
  return out;
}

}  // namespace

SymbolFn::SymbolFn(std::string name, std::function<double(double)> fn, std::optional<double> support_max)
    : name_(std::move(name)), fn_(std::move(fn)), support_max_(support_max) {}

SymbolFn SymbolFn::one() {
  return SymbolFn("one", [](double) { return 1.0; });
}

SymbolFn SymbolFn::block(int j) {
  return SymbolFn("bump[j=" + std::to_string(j) + "]", [j](double l) { return DyadicPartition::phi(j, l); },
                  std::ldexp(2.0, j));
}

SymbolFn SymbolFn::widened_block(int j) {
  return SymbolFn("widened[j=" + std::to_string(j) + "]",
                  [j](double l) { return DyadicPartition::widened(j, l); }, std::ldexp(2.0, j + 1));
}

SymbolFn SymbolFn::low() { return SymbolFn("low", DyadicPartition::low, 2.0); }

SymbolFn SymbolFn::heat(double t) {
  if (!(t >= 0.0)) throw ParameterError("heat symbol needs t >= 0");
  return SymbolFn("gaussian-decay[t=" + std::to_string(t) + "]", [t](double l) { return std::exp(-t * l * l); });
}

SymbolFn SymbolFn::power(double alpha) {
  return SymbolFn("power[alpha=" + std::to_string(alpha) + "]",
                  [alpha](double l) { return std::pow(l, alpha); });
}

SymbolFn SymbolFn::from_config(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "one") return one();
  if (name == "bump") return block(integer_param(params, name, "j"));
  if (name == "widened") return widened_block(integer_param(params, name, "j"));
  if (name == "low") return low();
  if (name == "gaussian-decay") return heat(param(params, name, "t"));
  if (name == "power") return power(param(params, name, "alpha"));
  throw ParameterError("unknown symbol '" + name + "'");
}

SpectralCoefficients apply_multiplier(const SymbolFn& m, const SpectralCoefficients& c) {
  return diagonal([&m](double l) { return m(l); }, c);
}

SpectralCoefficients lp_block(const DyadicPartition& partition, int j, const SpectralCoefficients& c) {
  if (j < partition.j0()) {
    SpectralCoefficients zero(c.basis());
    zero.mark_lossy(c.lossy());
    return zero;
  }
  return diagonal([j](double l) { return DyadicPartition::phi(j, l); }, c);
}

SpectralCoefficients widened_block(const DyadicPartition&, int j, const SpectralCoefficients& c) {
  return diagonal([j](double l) { return DyadicPartition::widened(j, l); }, c);
}

SpectralCoefficients low_block(const DyadicPartition&, const SpectralCoefficients& c) {
  return diagonal(DyadicPartition::low, c);
}

SpectralCoefficients apply_H_power(double alpha, const SpectralCoefficients& c) {
  return diagonal([alpha](double l) { return std::pow(l, alpha); }, c);
}

}  // namespace hbesov
