#pragma once

// Pointwise products of Hermite expansions and the Bony split
// fg = f≺g + f≻g + f⊙g, with the ratio functions for the paraproduct and
// product estimates.

#include <memory>

#include "hbesov/besov.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {

/// Relative L² mass of fg outside the projection span above which a
/// product is flagged as aliased.
inline constexpr double kAliasingTolerance = 1e-8;

struct Product {
  /// L² projection of fg onto per-axis degree 2N.
  SpectralCoefficients value;
  /// 1 - ∥P(fg)∥² / ∥fg∥².
  double lost_fraction = 0.0;
  bool aliased = false;
};

struct BonyPieces {
  SpectralCoefficients low_high;   // k <= l - N0
  SpectralCoefficients high_low;   // l <= k - N0
  SpectralCoefficients resonant;   // |k - l| < N0
  int n0 = 2;
  bool aliased = false;
};

/// Products of degree-N expansions. fg is a polynomial of degree 2N times
/// e^{-|x|²}, so its projection onto degree 2N and its L² norm are exact
/// Gauss–Hermite sums on nodes rescaled by √(2/3) and 1/√2 respectively.
class ProductEngine {
 public:
  explicit ProductEngine(HermiteBasis basis);
  ~ProductEngine();
  ProductEngine(ProductEngine&&) noexcept;
  ProductEngine& operator=(ProductEngine&&) noexcept;

  const HermiteBasis& basis() const;
  const HermiteBasis& product_basis() const;

  Product product(const SpectralCoefficients& f, const SpectralCoefficients& g) const;
  BonyPieces bony(const SpectralCoefficients& f, const SpectralCoefficients& g, const DyadicPartition& partition,
                  int n0 = 2) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Product product(const SpectralCoefficients& f, const SpectralCoefficients& g);
BonyPieces bony_decompose(const SpectralCoefficients& f, const SpectralCoefficients& g,
                          const DyadicPartition& partition, int n0 = 2);

/// Norm contexts for inputs (degree N) and products (degree 2N).
class BilinearContext {
 public:
  explicit BilinearContext(HermiteBasis basis);

  const Space& inputs() const { return inputs_; }
  const Space& products() const { return products_; }
  const ProductEngine& engine() const { return engine_; }

 private:
  Space inputs_;
  Space products_;
  ProductEngine engine_;
};

/// ∥f≺g∥_{B^s_{p,q}} / (∥f∥_{L^{p1}} ∥g∥_{B^s_{p2,q}}).
Ratio lowhigh_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                             const SpectralCoefficients& g, double s, Exponent p, Exponent p1, Exponent p2,
                             Exponent q);
/// s < 0: ∥f≺g∥_{B^{s+r}_{p,q}} / (∥f∥_{B^s_{p1,∞}} ∥g∥_{B^r_{p2,q}}).
Ratio negative_s_lowhigh_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                               const SpectralCoefficients& g, double s, double r, Exponent p, Exponent p1,
                               Exponent p2, Exponent q);
/// s1 + s2 > 0: ∥f⊙g∥_{B^{s1+s2}_{p,q}} / (∥f∥_{B^{s1}_{p1,q1}} ∥g∥_{B^{s2}_{p2,q2}}).
Ratio resonant_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                              const SpectralCoefficients& g, double s1, double s2, Exponent p, Exponent p1,
                              Exponent p2, Exponent q, Exponent q1, Exponent q2);
/// s > 0: ∥fg∥_{B^s_{p,q}} / (∥f∥_{B^s_{p1,q}}∥g∥_{L^{p2}} + ∥f∥_{L^{p3}}∥g∥_{B^s_{p4,q}}).
Ratio product_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                             const SpectralCoefficients& g, double s, Exponent p, Exponent p1, Exponent p2,
                             Exponent p3, Exponent p4, Exponent q);
/// s < 0 < r, s + r > 0: ∥fg∥_{B^s_{p,q}} / (∥f∥_{B^s_{p1,q}} ∥g∥_{B^r_{p2,q}}).
Ratio negative_positive_product_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                                      const SpectralCoefficients& g, double s, double r, Exponent p,
                                      Exponent p1, Exponent p2, Exponent q);

}  // namespace hbesov
