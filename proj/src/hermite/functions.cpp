#include <cmath>
#include <numbers>
#include <vector>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {
namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kRescaleLog = 150.0 * std::numbers::ln10;
// Below this log-scale exp() is subnormal or zero; products go through logs.
constexpr double kLogScaleFloor = -700.0;

double scaled_value(double mantissa, double log_scale, double factor) {
  if (log_scale >= kLogScaleFloor) return mantissa * factor;
  if (mantissa == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(mantissa)) + log_scale), mantissa);
}

}  // namespace

// Recurrence on the mantissa of h_n with the Gaussian factor kept in log
// form: h_{k+1} = √(2/(k+1)) x h_k - √(k/(k+1)) h_{k-1}.
ScaledPair hermite_scaled(int n, double x) {
  if (n < 0) throw ParameterError("hermite degree must be non-negative");
  double prev = 0.0;
  double cur = kPiQuarter;
  double log_scale = -0.5 * x * x;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kRescaleLog;
    }
  }
  return {prev, cur, log_scale};
}

double eval_hermite(int n, double x) {
  const ScaledPair p = hermite_scaled(n, x);
  if (p.current == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(p.current)) + p.log_scale), p.current);
}

void hermite_table(int max_degree, std::span<const double> x, std::span<double> table) {
  if (max_degree < 0) throw ParameterError("hermite degree must be non-negative");
  const std::size_t np = x.size();
  const std::size_t rows = static_cast<std::size_t>(max_degree) + 1;
  if (table.size() != rows * np) throw ParameterError("hermite_table: output size mismatch");

  std::vector<double> up(rows), down(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    up[k] = std::sqrt(2.0 / double(k + 1));
    down[k] = std::sqrt(double(k) / double(k + 1));
  }
  for (std::size_t i = 0; i < np; ++i) {
    const double xi = x[i];
    double prev = 0.0;
    double cur = kPiQuarter;
    double log_scale = -0.5 * xi * xi;
    double factor = std::exp(log_scale);
    table[i] = scaled_value(cur, log_scale, factor);
    for (std::size_t k = 0; k + 1 < rows; ++k) {
      const double next = up[k] * xi * cur - down[k] * prev;
      prev = cur;
      cur = next;
      if (std::fabs(cur) > kRescaleAbove) {
        cur *= kRescaleFactor;
        prev *= kRescaleFactor;
        log_scale += kRescaleLog;
        factor = std::exp(log_scale);
      }
      table[(k + 1) * np + i] = scaled_value(cur, log_scale, factor);
    }
  }
}

std::vector<double> eval_hermite(std::array<int, 2> n, const Grid& grid) {
  const auto& x = grid.axis().nodes;
  std::vector<double> first(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) first[i] = eval_hermite(n[0], x[i]);
  if (grid.dim() == 1) return first;
  std::vector<double> second(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) second[i] = eval_hermite(n[1], x[i]);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k) out[i * x.size() + k] = first[i] * second[k];
  return out;
}

}  // namespace hbesov
