#include <algorithm>
#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/semigroup.hpp"

namespace hbesov {
namespace {

double besov(const Space& space, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(space, c, {s, p, q, {}, {}}).value;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < n; ++k) t[std::size_t(k)] = std::exp(a + (b - a) * k / (n - 1));
  t.front() = lo;
  t.back() = hi;
  return t;
}

// Composite Simpson on equally spaced samples; an odd number of intervals
// closes with the 3/8 rule on the last three.
double simpson(const std::vector<double>& f, double h) {
  const std::size_t m = f.size() - 1;  // intervals
  std::size_t even = m % 2 == 0 ? m : m - 3;
  double s = 0.0;
  for (std::size_t i = 0; i + 2 <= even; i += 2) s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  if (even != m) s += 3.0 * h / 8.0 * (f[even] + 3.0 * f[even + 1] + 3.0 * f[even + 2] + f[even + 3]);
  return s;
}

}  // namespace

void validate_smoothing(const SmoothingParams& sp) {
  if (sp.s2 < sp.s1) throw ParameterError("smoothing estimate needs s2 >= s1");
  if (sp.p1.value() > sp.p2.value()) throw ParameterError("smoothing estimate needs p1 <= p2");
}

double smoothing_exponent(const SmoothingParams& sp, int dim) {
  return 0.5 * dim * (sp.p1.reciprocal() - sp.p2.reciprocal()) + 0.5 * (sp.s2 - sp.s1);
}

Ratio smoothing_ratio(const Space& space, const SpectralCoefficients& f, double t, const SmoothingParams& sp) {
  validate_smoothing(sp);
  if (!(t > 0.0)) throw ParameterError("smoothing ratio needs t > 0");
  const double num = besov(space, heat_apply(t, f), sp.s2, sp.p2, sp.q2);
  const double den = besov(space, f, sp.s1, sp.p1, sp.q1);
  return safe_ratio(num * std::pow(t, smoothing_exponent(sp, space.dim())), den);
}

bool is_narrowband(const Space& space, const SpectralCoefficients& f) {
  const std::vector<double> e = space.block_lp_norms(f, Exponent::finite(2.0));
  const double top = *std::max_element(e.begin(), e.end());
  if (top == 0.0) return true;
  const auto active = std::count_if(e.begin(), e.end(), [top](double v) { return v >= 1e-6 * top; });
  return active < kBroadbandBlocks;
}

RateFit smoothing_rate_fit(const Space& space, const SpectralCoefficients& f, const SmoothingParams& sp,
                           double t_min, double t_max, int samples) {
  validate_smoothing(sp);
  if (samples < 4) throw ParameterError("rate fit needs at least 4 samples");
  if (!(t_min > 0.0 && t_max > t_min)) throw ParameterError("rate fit needs 0 < t_min < t_max");
  RateFit fit;
  fit.predicted = -smoothing_exponent(sp, space.dim());
  fit.narrowband = is_narrowband(space, f);
  fit.t = log_spaced(t_min, t_max, samples);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double t : fit.t) {
    const double v = besov(space, heat_apply(t, f), sp.s2, sp.p2, sp.q2);
    fit.norm.push_back(v);
    const double x = std::log(t), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = samples;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  const double gap = std::abs(fit.slope - fit.predicted);
  fit.relative_error = fit.predicted != 0.0 ? gap / std::abs(fit.predicted) : gap;
  return fit;
}

std::vector<double> continuity_deficit(const Space& space, const SpectralCoefficients& f, double s, Exponent p,
                                       Exponent q, std::span<const double> times) {
  if (q.is_infinite()) throw ParameterError("strong continuity is only claimed for q < ∞");
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(besov(space, heat_apply(t, f) - f, s, p, q));
  return out;
}

complex weak_continuity_pairing(const Space& space, const SpectralCoefficients& f, const SpectralCoefficients& g,
                                double t) {
  if (!(f.basis() == g.basis())) throw ParameterError("pairing needs a common basis");
  const SpectralCoefficients diff = heat_apply(t, f) - f;
  const DyadicPartition& part = space.partition();
  complex acc{};
  for (int j = part.j0(); j <= part.j_max(); ++j) acc += inner(lp_block(part, j, diff), lp_block(part, j, g));
  return acc;
}

SemigroupNorm semigroup_norm(const Space& space, const SpectralCoefficients& f, const SemigroupNormParams& sp) {
  if (!(sp.s0 > sp.s / 2.0)) throw ParameterError("semigroup characterization needs s0 > s/2");
  if (sp.nodes < 4) throw ParameterError("semigroup quadrature needs at least 4 nodes");
  const int j0 = space.partition().j0();
  const double t_max = std::ldexp(1.0, -2 * j0);
  if (!(sp.t_min > 0.0 && sp.t_min < t_max)) throw ParameterError("semigroup quadrature needs 0 < t_min < 2^{-2 j0}");
  const HermiteBasis& b = f.basis();
  const std::vector<double> t = log_spaced(sp.t_min, t_max, sp.nodes);
  std::vector<double> vals;
  vals.reserve(t.size());
  std::vector<double> m(std::size_t(b.max_total_degree()) + 1);
  for (double tk : t) {
    for (std::size_t n = 0; n < m.size(); ++n) {
      const double x = tk * b.eigenvalue(int(n));
      m[n] = std::pow(x, sp.s0) * std::exp(-x);
    }
    SpectralCoefficients g(b);
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = m[std::size_t(b.total_degree(i))] * f[i];
    const double x_norm = sp.kind == SemigroupNormParams::Kind::lebesgue
                              ? space.lp_norm(g, sp.p)
                              : besov_from_blocks(space.block_lp_norms(g, sp.p), j0, 0.0, sp.r).value;
    vals.push_back(std::pow(tk, -sp.s / 2.0) * x_norm);
  }
  SemigroupNorm out;
  if (sp.q.is_infinite()) {
    out.value = *std::max_element(vals.begin(), vals.end());
    out.cutoff_error = std::max(0.0, vals.front() - out.value);
    return out;
  }
  const double q = sp.q.value();
  std::vector<double> integrand(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) integrand[k] = std::pow(vals[k], q);
  const double h = (std::log(t_max) - std::log(sp.t_min)) / (sp.nodes - 1);
  const double integral = simpson(integrand, h);
  out.value = std::pow(integral, 1.0 / q);
  const double tail = integrand.front() / ((sp.s0 - sp.s / 2.0) * q);
  out.cutoff_error = std::pow(integral + tail, 1.0 / q) - out.value;
  return out;
}

}  // namespace hbesov
