#pragma once

// L^p and Besov norms B^s_{p,q}(H) built on the Littlewood–Paley blocks of
// the oscillator, plus the checkers for duality, embedding, the L^p
// sandwich and interpolation.

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "hbesov/exponent.hpp"
#include "hbesov/hermite.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {

/// Relative tail size above which a function is reported as unresolved.
inline constexpr double kTailTolerance = 1e-12;

/// Trapezoid L^p norm for p < ∞, grid max for p = ∞.
double lp_norm(const GridFunction& f, Exponent p);

/// Evaluation context: basis, partition, grid and the dense transform onto
/// that grid. L² norms use Parseval on coefficients; other p synthesize.
/// The transform is built on first use, so spaces that only ever see p = 2
/// can carry very large degrees.
class Space {
 public:
  explicit Space(HermiteBasis basis, std::optional<Grid> grid = {});

  const HermiteBasis& basis() const { return basis_; }
  int dim() const { return basis_.dim(); }
  const DyadicPartition& partition() const { return partition_; }
  const Grid& grid() const { return grid_; }
  const HermiteTransform& transform() const;

  double lp_norm(const SpectralCoefficients& c, Exponent p) const;
  /// ∥φ_j(√H) f∥_{L^p} for j = j0..j_max (index 0 is j0).
  std::vector<double> block_lp_norms(const SpectralCoefficients& c, Exponent p) const;

 private:
  HermiteBasis basis_;
  DyadicPartition partition_;
  Grid grid_;
  std::shared_ptr<std::once_flag> once_;
  std::shared_ptr<std::unique_ptr<HermiteTransform>> transform_;
};

struct BesovParams {
  double s = 0.0;
  Exponent p;
  Exponent q;
  /// Defaults to the partition's [j0, j_max].
  std::optional<int> j_min;
  std::optional<int> j_max;
};

struct BlockProfile {
  int j_min = 0;
  /// a_j = 2^{sj} ∥f_j∥_{L^p}, j = j_min + index.
  std::vector<double> weighted;
  double value = 0.0;
  bool tail_unresolved = false;
};

/// ℓ^q norm of a non-negative sequence; q = ∞ is the maximum.
double lq_norm(const std::vector<double>& a, Exponent q);

/// Profile from precomputed block norms (index 0 = partition j0).
BlockProfile besov_from_blocks(const std::vector<double>& block_norms, int j0, double s, Exponent q,
                               std::optional<int> j_min = {}, std::optional<int> j_max = {});
BlockProfile besov_norm(const Space& space, const SpectralCoefficients& c, const BesovParams& params);
/// True when the top two degrees per axis carry more than kTailTolerance
/// of the L² mass.
bool tail_unresolved(const SpectralCoefficients& c);

/// A checker ratio; zero numerator and denominator give 0 with zero_input.
struct Ratio {
  double value = 0.0;
  bool zero_input = false;
};
Ratio safe_ratio(double numerator, double denominator);

/// Σ_j <φ_j f, Φ_j g> over j0..j_max.
complex duality_pairing(const Space& space, const SpectralCoefficients& f, const SpectralCoefficients& g);
/// ∥f∥_{B^s_{p,q}} / ∥f∥_{B^{s+d(1/r-1/p)}_{r,q}}; requires r <= p.
Ratio embedding_ratio(const Space& space, const SpectralCoefficients& f, double s, Exponent r, Exponent p,
                      Exponent q);
/// (∥f∥_{B^0_{p,∞}} / ∥f∥_{L^p}, ∥f∥_{L^p} / ∥f∥_{B^0_{p,1}}).
std::pair<Ratio, Ratio> sandwich_check(const Space& space, const SpectralCoefficients& f, Exponent p);

struct InterpolationParams {
  double s = 0.0;
  double s0 = 0.0;
  Exponent p;
  Exponent r;
  Exponent r0;
  double theta = 0.5;
};
/// Throws ParameterError unless the tuple satisfies the interpolation
/// hypotheses in dimension d.
void validate_interpolation(const InterpolationParams& ip, int dim);
/// ∥f∥_{B^s_{p,1}} / (∥f∥_{B^0_{r,∞}}^θ ∥f∥_{B^{s0}_{r0,∞}}^{1-θ}).
Ratio interpolation_check(const Space& space, const SpectralCoefficients& f, const InterpolationParams& ip);

/// ∥H^{α/2} f∥_{B^s_{p,q}} / ∥f∥_{B^{s+α}_{p,q}}.
Ratio lifting_ratio(const Space& space, const SpectralCoefficients& f, double alpha, double s, Exponent p,
                    Exponent q);

}  // namespace hbesov
