#pragma once

// Spectral calculus of H: the dyadic partition of unity, multipliers m(√H)
// acting diagonally on the Hermite basis, and integral kernels of those
// multipliers together with their L¹ / L^∞ operator norms.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "hbesov/exponent.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {

/// φ_0(λ) = ρ(λ) / Σ_k ρ(2^{-k}λ) with ρ(λ) = g(λ-1/2) g(2-λ), g(t) = e^{-1/t}
/// (t > 0), φ_j(λ) = φ_0(2^{-j}λ), ψ = 1 - Σ_{j>=1} φ_j and
/// Φ_j = φ_{j-1} + φ_j + φ_{j+1}.
class DyadicPartition {
 public:
  DyadicPartition(int dim, int max_degree);
  explicit DyadicPartition(const HermiteBasis& basis)
      : DyadicPartition(basis.dim(), basis.max_degree()) {}

  static double bump(double lambda);
  static double phi(int j, double lambda);
  static double widened(int j, double lambda);
  static double low(double lambda);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  /// Largest j with 2^{j+1} <= inf σ(H) = d.
  int j0() const { return j0_; }
  /// Largest j whose support meets the resolved spectrum: 2^{j-1} <= √H_max.
  int j_max() const { return j_max_; }
  /// Largest resolved value of √H: √(2 d N + d) on the coefficient box.
  double spectral_radius() const;

 private:
  int dim_;
  int max_degree_;
  int j0_;
  int j_max_;
};

/// A scalar function of √H with provenance for reports.
class SymbolFn {
 public:
  SymbolFn(std::string name, std::function<double(double)> fn, std::optional<double> support_max = {});

  double operator()(double sqrt_lambda) const { return fn_(sqrt_lambda); }
  const std::string& name() const { return name_; }
  /// Upper end of the support when compactly supported.
  std::optional<double> support_max() const { return support_max_; }

  static SymbolFn one();
  static SymbolFn block(int j);
  static SymbolFn widened_block(int j);
  static SymbolFn low();
  /// e^{-t λ²}, the symbol of e^{-tH}.
  static SymbolFn heat(double t);
  /// λ^α, the symbol of H^{α/2}.
  static SymbolFn power(double alpha);
  /// Config form: "bump" {j}, "widened" {j}, "low", "gaussian-decay" {t},
  /// "power" {alpha}, "one".
  static SymbolFn from_config(const std::string& name, const std::map<std::string, double>& params);

 private:
  std::string name_;
  std::function<double(double)> fn_;
  std::optional<double> support_max_;
};

/// c_n -> m(√(2|n|+d)) c_n.
SpectralCoefficients apply_multiplier(const SymbolFn& m, const SpectralCoefficients& c);
/// f_j = φ_j(√H) f; identically zero below the partition's j0.
SpectralCoefficients lp_block(const DyadicPartition& partition, int j, const SpectralCoefficients& c);
SpectralCoefficients widened_block(const DyadicPartition& partition, int j, const SpectralCoefficients& c);
SpectralCoefficients low_block(const DyadicPartition& partition, const SpectralCoefficients& c);
/// c_n -> (2|n|+d)^{α/2} c_n.
SpectralCoefficients apply_H_power(double alpha, const SpectralCoefficients& c);

/// Dense kernel K(x_i, y_k) of a one-dimensional operator, column-major:
/// values[k * x.size() + i].
struct KernelMatrix {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> x_weights;
  std::vector<double> y_weights;
  std::vector<double> values;
  /// False when the symbol is not negligible at the truncation degree.
  bool resolved = true;

  double operator()(std::size_t i, std::size_t k) const { return values[k * x.size() + i]; }
};

/// K(x, y) = Σ_r left[r][x] right[r][y] on a one-dimensional grid. Keeps
/// large kernels implicit: norms are reduced column block by column block.
struct KernelFactors {
  Grid grid;
  std::size_t rank = 0;
  std::vector<double> left;   // rank x P
  std::vector<double> right;  // rank x P
  bool resolved = true;
};

/// Threshold below which symbol values count as zero when picking the
/// spectral window of a kernel.
inline constexpr double kSymbolNegligible = 1e-14;
/// A symbol is unresolved when |m(√(2N+d))| exceeds this.
inline constexpr double kSymbolTruncation = 1e-10;

/// m(√H) with K(x,y) = Σ_n m(√(2n+1)) h_n(x) h_n(y), n <= max_degree (d = 1).
KernelFactors multiplier_factors(const SymbolFn& m, const Grid& grid, int max_degree);
/// x^α ∂^β m(√H) (d = 1): K(x,y) = Σ_n m_n (x^α ∂^β h_n)(x) h_n(y).
KernelFactors poly_diff_factors(int alpha, int beta, const SymbolFn& m, const Grid& grid, int max_degree);
KernelMatrix materialize(const KernelFactors& factors);
KernelMatrix multiplier_kernel(const SymbolFn& m, const Grid& grid, int max_degree);

/// ∥T∥_{L¹→L¹} = sup_y ∫|K(x,y)|dx, ∥T∥_{L^∞→L^∞} = sup_x ∫|K(x,y)|dy.
/// Only p = 1 and p = ∞ are accepted.
double operator_norm(const KernelMatrix& k, Exponent p);
/// Same on a factorized kernel; the supremum runs over every `stride`-th
/// grid node.
double operator_norm(const KernelFactors& k, Exponent p, std::size_t stride = 1);
/// Riesz–Thorin upper bound ∥T∥_{p→p} <= ∥T∥_{1→1}^{1/p} ∥T∥_{∞→∞}^{1-1/p}.
double operator_norm_upper_bound(double norm_1, double norm_inf, Exponent p);

/// ∥x^α ∇^β f∥_{L²} / ∥H^{(|α|+|β|)/2} f∥_{L²}, computed with enough degree
/// headroom that the ladder actions are exact.
double poly_diff_ratio(std::span<const int> alpha, std::span<const int> beta, const SpectralCoefficients& c);

/// ∥Hf∥ against ∥Δf∥ + ∥|x|²f∥ in L²: returns (∥Hf∥ / (∥Δf∥ + ∥|x|²f∥),
/// (∥Δf∥ + ∥|x|²f∥) / ∥Hf∥).
std::pair<double, double> oscillator_split_ratios(const SpectralCoefficients& c);

}  // namespace hbesov
