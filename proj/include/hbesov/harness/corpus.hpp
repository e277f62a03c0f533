#pragma once

// Reproducible test-function corpus. Every member is normalized to unit L²
// (eigenfunctions already are) and must be resolved: relative tail mass on
// the top two degrees per axis below 1e-12.

#include <cstdint>
#include <string>
#include <vector>

#include "hbesov/harness/config.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov::harness {

struct CorpusMember {
  std::string id;
  std::string family;
  SpectralCoefficients c;
  /// Random members count toward corpus doubling; named ones always stay.
  bool random = false;
};

struct Corpus {
  std::vector<CorpusMember> members;
  /// Members kept in the half-size corpus used for doubling deltas.
  std::size_t half_size() const;
  const CorpusMember* find(const std::string& id) const;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform in [-1, 1) + i[-1, 1) on degrees <= band per axis, unit L².
SpectralCoefficients random_member(const HermiteBasis& basis, std::uint64_t seed, int band);
/// c_n = (2|n|+d)^{-γ} e^{iθ_n}, θ_n seeded; not normalized.
SpectralCoefficients power_law(const HermiteBasis& basis, double gamma, std::uint64_t seed);
/// e^{-a|x - x0 e_1|²}, unit L².
SpectralCoefficients gaussian_member(const HermiteBasis& basis, double a, double x0);
/// H_k(x_1) H_k2(x_2) e^{-a|x|²} with physicists' H_k, unit L².
SpectralCoefficients hermite_gaussian_member(const HermiteBasis& basis, int k, int k2, double a);

/// Throws ConfigError (with the family's line) for unknown families, bad
/// parameters or unresolved members.
Corpus generate_corpus(const CorpusSpec& spec, const HermiteBasis& basis);

}  // namespace hbesov::harness
