#pragma once

// The heat semigroup e^{-tH}: spectral and Mehler forms, smoothing and
// continuity estimates, the semigroup characterization of Besov norms and
// maximal regularity for u' + Hu = f.

#include <span>
#include <vector>

#include "hbesov/besov.hpp"
#include "hbesov/spectral.hpp"

namespace hbesov {

/// Mehler kernels are refused below this time (the closed form loses
/// accuracy as sinh 2t -> 0).
inline constexpr double kMinKernelTime = 1e-6;

/// c_n -> e^{-t(2|n|+d)} c_n, t >= 0.
SpectralCoefficients heat_apply(double t, const SpectralCoefficients& c);

/// (2π sinh 2t)^{-1/2} exp(-(cosh 2t (x²+y²) - 2xy) / (2 sinh 2t)) on a
/// one-dimensional grid.
KernelMatrix mehler_kernel(double t, const Grid& grid);
/// max over grid pairs of K_t(x,y) t^{d/2} e^{|x-y|²/(Ct)}, d = 1.
double gaussian_bound_ratio(double t, const Grid& grid, double C);

struct SmoothingParams {
  double s1 = 0.0;
  double s2 = 0.0;
  Exponent p1;
  Exponent p2;
  Exponent q1;
  Exponent q2;
};
/// Requires s2 >= s1 and p1 <= p2.
void validate_smoothing(const SmoothingParams& sp);
/// d/2 (1/p1 - 1/p2) + (s2 - s1)/2.
double smoothing_exponent(const SmoothingParams& sp, int dim);

/// ∥e^{-tH}f∥_{B^{s2}_{p2,q2}} t^{κ} / ∥f∥_{B^{s1}_{p1,q1}} with κ the
/// smoothing exponent.
Ratio smoothing_ratio(const Space& space, const SpectralCoefficients& f, double t, const SmoothingParams& sp);

struct RateFit {
  double slope = 0.0;
  /// -κ.
  double predicted = 0.0;
  /// |slope - predicted| / |predicted|, or the absolute gap when predicted = 0.
  double relative_error = 0.0;
  double intercept = 0.0;
  std::vector<double> t;
  std::vector<double> norm;
  /// Fewer than kBroadbandBlocks blocks carry energy: no power law to fit.
  bool narrowband = false;
};
inline constexpr int kBroadbandBlocks = 3;

/// Least-squares slope of log ∥e^{-tH}f∥_{B^{s2}_{p2,q2}} against log t on
/// `samples` log-spaced times in [t_min, t_max].
RateFit smoothing_rate_fit(const Space& space, const SpectralCoefficients& f, const SmoothingParams& sp,
                           double t_min, double t_max, int samples);
/// Energy-based narrowband test used by the fit.
bool is_narrowband(const Space& space, const SpectralCoefficients& f);

/// ∥e^{-tH}f - f∥_{B^s_{p,q}} for each t; q must be finite.
std::vector<double> continuity_deficit(const Space& space, const SpectralCoefficients& f, double s, Exponent p,
                                       Exponent q, std::span<const double> times);
/// Σ_j <φ_j(e^{-tH}f - f), φ_j g>.
complex weak_continuity_pairing(const Space& space, const SpectralCoefficients& f, const SpectralCoefficients& g,
                                double t);

struct SemigroupNormParams {
  double s = 0.0;
  double s0 = 1.0;
  Exponent p;
  Exponent q;
  enum class Kind { lebesgue, besov } kind = Kind::lebesgue;
  /// Summability of X = B^0_{p,r} when kind is besov.
  Exponent r;
  int nodes = 200;
  double t_min = 1e-6;
};

struct SemigroupNorm {
  double value = 0.0;
  /// Estimated contribution of (0, t_min) to the value, from the power
  /// behaviour t^{(s0 - s/2)q} of the integrand.
  double cutoff_error = 0.0;
};

/// { ∫_0^{2^{-2j0}} (t^{-s/2} ∥(tH)^{s0} e^{-tH} f∥_X)^q dt/t }^{1/q}, composite
/// Simpson in log t on [t_min, 2^{-2j0}]; q = ∞ is the max over nodes.
SemigroupNorm semigroup_norm(const Space& space, const SpectralCoefficients& f, const SemigroupNormParams& sp);

/// u(t_k) and f(t_k) on a time grid; ∂_t u = f - Hu exactly.
struct Trajectory {
  std::vector<double> t;
  std::vector<SpectralCoefficients> u;
  std::vector<SpectralCoefficients> forcing;

  SpectralCoefficients derivative(std::size_t k) const;
  SpectralCoefficients H_u(std::size_t k) const;
};

/// Exponential integrator per mode with forcing linear on each cell. An
/// empty `forcing` means f = 0; otherwise one sample per time. t_grid must
/// be strictly increasing; u(t_grid[0]) = u0.
Trajectory duhamel_solve(const SpectralCoefficients& u0, std::span<const SpectralCoefficients> forcing,
                         std::span<const double> t_grid);
/// Largest |∂_t u + λu - f| / (λ|u_k| + |f_k| + |f_{k+1}|) over modes and
/// interior points of each cell, evaluated from the cell's closed form.
double duhamel_residual(const Trajectory& traj, int points_per_cell = 3);

/// {0} followed by n - 1 log-spaced times on [t_first, T].
std::vector<double> max_reg_time_grid(double T, int n, double t_first = 1e-6);

struct MaxRegResult {
  double ratio = 0.0;
  bool zero_input = false;
  double du_norm = 0.0;
  double hu_norm = 0.0;
  double u0_norm = 0.0;
  double f_norm = 0.0;
  /// Bound on the part of ∥∂_t u∥ + ∥Hu∥ beyond T from decay at rate d.
  double tail_bound = 0.0;
};

/// (∥∂_t u∥_{L^q B^s_{p,q}} + ∥Hu∥_{L^q B^s_{p,q}}) / (∥u0∥_{B^{s+2-2/q}_{p,q}} + ∥f∥_{L^q B^s_{p,q}})
/// over the trajectory's time span.
MaxRegResult max_reg_ratio(const Space& space, const Trajectory& traj, double s, Exponent p, Exponent q);

}  // namespace hbesov
