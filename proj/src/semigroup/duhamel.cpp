#include <algorithm>
#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/semigroup.hpp"

namespace hbesov {
namespace {

// φ1(z) = (1 - e^{-z}) / z
double phi1(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; }

// φ2(z) = (z - 1 + e^{-z}) / z², series near 0 where the difference cancels
double phi2(double z) {
  if (z < 0.05) {
    double term = 0.5, sum = 0.0;
    for (int k = 0; k < 8; ++k) {
      sum += term;
      term *= -z / (k + 3);
    }
    return sum;
  }
  return (z + std::expm1(-z)) / (z * z);
}

SpectralCoefficients scale_by_eigenvalue(const SpectralCoefficients& c) {
  const HermiteBasis& b = c.basis();
  SpectralCoefficients out(b);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = b.eigenvalue(b.total_degree(i)) * c[i];
  return out;
}

double besov(const Space& space, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(space, c, {s, p, q, {}, {}}).value;
}

// ∥g∥_{L^q(t0, T)} for samples g_k at times t_k, trapezoid on g^q.
double time_norm(const std::vector<double>& t, const std::vector<double>& g, Exponent q) {
  if (q.is_infinite()) return *std::max_element(g.begin(), g.end());
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    s += 0.5 * (t[k + 1] - t[k]) * (std::pow(g[k], q.value()) + std::pow(g[k + 1], q.value()));
  return std::pow(s, 1.0 / q.value());
}

}  // namespace

SpectralCoefficients Trajectory::H_u(std::size_t k) const { return scale_by_eigenvalue(u.at(k)); }

SpectralCoefficients Trajectory::derivative(std::size_t k) const {
  SpectralCoefficients d = H_u(k);
  d *= complex(-1.0);
  if (!forcing.empty()) d += forcing.at(k);
  return d;
}

Trajectory duhamel_solve(const SpectralCoefficients& u0, std::span<const SpectralCoefficients> forcing,
                         std::span<const double> t_grid) {
  if (t_grid.empty()) throw ParameterError("Duhamel solve needs a non-empty time grid");
  for (std::size_t k = 0; k + 1 < t_grid.size(); ++k)
    if (!(t_grid[k + 1] > t_grid[k])) throw ParameterError("time grid must be strictly increasing");
  if (!forcing.empty() && forcing.size() != t_grid.size())
    throw ParameterError("forcing needs one sample per time");
  const HermiteBasis& b = u0.basis();
  for (const auto& f : forcing)
    if (!(f.basis() == b)) throw ParameterError("forcing and initial data live on different bases");

  Trajectory traj;
  traj.t.assign(t_grid.begin(), t_grid.end());
  traj.forcing.assign(forcing.begin(), forcing.end());
  traj.u.reserve(t_grid.size());
  traj.u.push_back(u0);
  const std::size_t degrees = std::size_t(b.max_total_degree()) + 1;
  std::vector<double> e(degrees), p1(degrees), p2(degrees);
  for (std::size_t k = 0; k + 1 < t_grid.size(); ++k) {
    const double dt = t_grid[k + 1] - t_grid[k];
    for (std::size_t n = 0; n < degrees; ++n) {
      const double z = b.eigenvalue(int(n)) * dt;
      e[n] = std::exp(-z);
      p1[n] = dt * phi1(z);
      p2[n] = dt * phi2(z);
    }
    const SpectralCoefficients& uk = traj.u.back();
    SpectralCoefficients next(b);
    for (std::size_t i = 0; i < uk.size(); ++i) {
      const std::size_t n = std::size_t(b.total_degree(i));
      complex v = e[n] * uk[i];
      if (!forcing.empty()) {
        const complex a = forcing[k][i], c = forcing[k + 1][i];
        v += p1[n] * a + p2[n] * (c - a);
      }
      next[i] = v;
    }
    traj.u.push_back(std::move(next));
  }
  return traj;
}

double duhamel_residual(const Trajectory& traj, int points_per_cell) {
  if (points_per_cell < 1) throw ParameterError("residual audit needs at least one point per cell");
  const HermiteBasis& b = traj.u.front().basis();
  const bool forced = !traj.forcing.empty();
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < traj.t.size(); ++k) {
    const double dt = traj.t[k + 1] - traj.t[k];
    for (int m = 1; m <= points_per_cell; ++m) {
      const double tau = dt * m / (points_per_cell + 1);
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double lam = b.eigenvalue(b.total_degree(i));
        const double z = lam * tau, ez = std::exp(-z);
        const complex uk = traj.u[k][i];
        const complex a = forced ? traj.forcing[k][i] : complex{};
        const complex slope = forced ? (traj.forcing[k + 1][i] - a) / dt : complex{};
        const complex u = ez * uk + tau * phi1(z) * a + tau * tau * phi2(z) * slope;
        const complex du = -lam * ez * uk + ez * a + tau * phi1(z) * slope;
        const complex f = a + slope * tau;
        const double scale =
            lam * std::abs(uk) + std::abs(a) + (forced ? std::abs(traj.forcing[k + 1][i]) : 0.0);
        if (scale > 0.0) worst = std::max(worst, std::abs(du + lam * u - f) / scale);
      }
    }
  }
  return worst;
}

std::vector<double> max_reg_time_grid(double T, int n, double t_first) {
  if (!(T > t_first && t_first > 0.0) || n < 3) throw ParameterError("time grid needs 0 < t_first < T and n >= 3");
  std::vector<double> t(static_cast<std::size_t>(n));
  t[0] = 0.0;
  const double a = std::log(t_first), c = std::log(T);
  for (int k = 1; k < n; ++k) t[std::size_t(k)] = std::exp(a + (c - a) * (k - 1) / (n - 2));
  t.back() = T;
  return t;
}

MaxRegResult max_reg_ratio(const Space& space, const Trajectory& traj, double s, Exponent p, Exponent q) {
  if (traj.t.size() < 2) throw ParameterError("maximal regularity needs at least two times");
  const std::size_t n = traj.t.size();
  std::vector<double> du(n), hu(n), f(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    du[k] = besov(space, traj.derivative(k), s, p, q);
    hu[k] = besov(space, traj.H_u(k), s, p, q);
    if (!traj.forcing.empty()) f[k] = besov(space, traj.forcing[k], s, p, q);
  }
  MaxRegResult r;
  r.du_norm = time_norm(traj.t, du, q);
  r.hu_norm = time_norm(traj.t, hu, q);
  r.f_norm = traj.forcing.empty() ? 0.0 : time_norm(traj.t, f, q);
  r.u0_norm = besov(space, traj.u.front(), s + 2.0 - 2.0 * q.reciprocal(), p, q);
  const double end = du.back() + hu.back();
  r.tail_bound = q.is_infinite() ? end : end * std::pow(q.value() * space.dim(), -1.0 / q.value());
  const Ratio ratio = safe_ratio(r.du_norm + r.hu_norm, r.u0_norm + r.f_norm);
  r.ratio = ratio.value;
  r.zero_input = ratio.zero_input;
  return r;
}

}  // namespace hbesov
