#include <Eigen/Eigenvalues>
#include <cmath>
#include <optional>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"

namespace hbesov {

// Golub–Welsch eigenvalues for the nodes, Newton polish on h_M, and the
// Christoffel numbers λ_k = 1 / (M h_{M-1}(x_k)²) for the function weights.
QuadratureRule gauss_hermite_rule(int order) {
  if (order < 1) throw ParameterError("Gauss–Hermite order must be >= 1");
  const auto m = static_cast<std::size_t>(order);
  QuadratureRule rule{QuadratureRule::Kind::gauss_hermite, std::vector<double>(m),
                      std::vector<double>(m), std::vector<double>(m)};

  if (order == 1) {
    rule.nodes[0] = 0.0;
  } else {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1);
    for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = solver.eigenvalues();
    for (std::size_t k = 0; k < m; ++k) rule.nodes[k] = ev(static_cast<Eigen::Index>(k));
  }

  const double root2m = std::sqrt(2.0 * order);
  for (std::size_t k = 0; k < m; ++k) {
    double x = rule.nodes[k];
    for (int it = 0; it < 3; ++it) {
      const ScaledPair p = hermite_scaled(order, x);
      const double deriv = root2m * p.previous - x * p.current;
      if (deriv == 0.0) break;
      const double dx = p.current / deriv;
      x -= dx;
      if (std::fabs(dx) <= 1e-16 * std::max(1.0, std::fabs(x))) break;
    }
    rule.nodes[k] = x;
  }
  // Enforce exact symmetry of the rule.
  for (std::size_t k = 0; k < m / 2; ++k) {
    const double a = 0.5 * (rule.nodes[m - 1 - k] - rule.nodes[k]);
    rule.nodes[k] = -a;
    rule.nodes[m - 1 - k] = a;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;

  for (std::size_t k = 0; k < m; ++k) {
    const double x = rule.nodes[k];
    const ScaledPair p = hermite_scaled(order - 1, x);
    const double log_h = std::log(std::fabs(p.current)) + p.log_scale;
    const double log_lambda = -std::log(double(order)) - 2.0 * log_h;
    rule.function_weights[k] = std::exp(log_lambda);
    rule.weights[k] = std::exp(log_lambda - x * x);
  }
  for (std::size_t k = 0; k < m / 2; ++k) {
    const double fw = 0.5 * (rule.function_weights[k] + rule.function_weights[m - 1 - k]);
    const double w = 0.5 * (rule.weights[k] + rule.weights[m - 1 - k]);
    rule.function_weights[k] = rule.function_weights[m - 1 - k] = fw;
    rule.weights[k] = rule.weights[m - 1 - k] = w;
  }
  return rule;
}

QuadratureRule trapezoid_rule(double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0))
    throw ParameterError("trapezoid rule needs positive half-width and spacing");
  const auto k = static_cast<std::size_t>(std::ceil(half_width / spacing - 1e-9));
  const std::size_t n = 2 * k + 1;
  QuadratureRule rule{QuadratureRule::Kind::trapezoid, std::vector<double>(n),
                      std::vector<double>(n, spacing), {}};
  for (std::size_t i = 0; i < n; ++i) rule.nodes[i] = (double(i) - double(k)) * spacing;
  rule.weights.front() = rule.weights.back() = 0.5 * spacing;
  rule.function_weights = rule.weights;
  return rule;
}

Grid::Grid(int dim, double half_width, double spacing)
    : dim_(dim), half_width_(half_width), spacing_(spacing), axis_(trapezoid_rule(half_width, spacing)) {
  if (dim != 1 && dim != 2) throw ParameterError("grid dimension must be 1 or 2");
  half_width_ = axis_.nodes.back();
}

double Grid::min_half_width(const HermiteBasis& basis) {
  return std::sqrt(2.0 * basis.max_degree() + basis.dim()) + 4.0;
}

Grid Grid::for_basis(const HermiteBasis& basis, std::optional<double> spacing,
                     std::optional<double> half_width) {
  const double turning = std::sqrt(2.0 * basis.max_degree() + basis.dim());
  const double h = spacing.value_or(std::min(1.0 / 16.0, 1.0 / turning));
  const double l = half_width.value_or(turning + 6.0);
  return Grid(basis.dim(), l, h);
}

std::vector<double> Grid::weights() const {
  const auto& w = axis_.weights;
  if (dim_ == 1) return w;
  std::vector<double> out(size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = 0; k < w.size(); ++k) out[i * w.size() + k] = w[i] * w[k];
  return out;
}

}  // namespace hbesov
