#pragma once

// Hermite eigenbasis of H = -Δ + |x|² in one and two dimensions.
//
// h_n(x) = (2^n n! √π)^{-1/2} H_n(x) e^{-x²/2} is L²-orthonormal and
// H h_n = (2|n| + d) h_n for a multi-index n. Coefficients live on the box
// 0 <= n_i <= N; functions on a uniform tensor grid over [-L, L]^d.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hbesov {

using complex = std::complex<double>;

class HermiteBasis {
 public:
  /// dim in {1, 2}, max_degree >= 0 (per axis).
  HermiteBasis(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t axis_size() const { return static_cast<std::size_t>(max_degree_) + 1; }
  std::size_t size() const { return dim_ == 1 ? axis_size() : axis_size() * axis_size(); }
  int max_total_degree() const { return dim_ * max_degree_; }
  /// Eigenvalue 2|n| + d of H for total degree |n|.
  double eigenvalue(int total_degree) const { return 2.0 * total_degree + dim_; }
  /// Total degree |n| of the flat index (row-major, last axis fastest).
  int total_degree(std::size_t flat) const;
  std::array<int, 2> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::array<int, 2> n) const;

  friend bool operator==(const HermiteBasis&, const HermiteBasis&) = default;

 private:
  int dim_;
  int max_degree_;
};

struct QuadratureRule {
  enum class Kind { gauss_hermite, trapezoid };
  Kind kind;
  std::vector<double> nodes;
  /// Weights for the rule's own measure: e^{-x²}dx (Gauss–Hermite) or dx
  /// (trapezoid). Gauss–Hermite weights underflow to 0 for |x| >~ 27.
  std::vector<double> weights;
  /// Weights for plain dx integration of functions that carry their own
  /// Gaussian decay; for Gauss–Hermite these are w_k e^{x_k²}.
  std::vector<double> function_weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss–Hermite rule for the weight e^{-x²}; order >= 1.
QuadratureRule gauss_hermite_rule(int order);
/// Composite trapezoid rule on the symmetric grid {k h : |k h| <= L}.
QuadratureRule trapezoid_rule(double half_width, double spacing);

/// Uniform tensor grid over [-L, L]^d; the same axis in every direction.
class Grid {
 public:
  Grid(int dim, double half_width, double spacing);
  /// Default grid for a basis: L = √(2N+d) + 6, h = min(1/16, 1/√(2N+d)).
  static Grid for_basis(const HermiteBasis& basis, std::optional<double> spacing = {},
                        std::optional<double> half_width = {});
  /// Smallest half-width accepted for a basis: √(2N+d) + 4.
  static double min_half_width(const HermiteBasis& basis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  const QuadratureRule& axis() const { return axis_; }
  std::size_t axis_size() const { return axis_.size(); }
  std::size_t size() const { return dim_ == 1 ? axis_size() : axis_size() * axis_size(); }
  /// Tensor trapezoid weights, flattened like the values.
  std::vector<double> weights() const;

 private:
  int dim_;
  double half_width_;
  double spacing_;
  QuadratureRule axis_;
};

/// Orthonormal Hermite function h_n(x), overflow/underflow safe for large n
/// and |x|.
double eval_hermite(int n, double x);
/// h_n on every node of the grid (tensor product in 2-D), flattened.
std::vector<double> eval_hermite(std::array<int, 2> n, const Grid& grid);
/// Fills table[k * x.size() + i] = h_k(x_i) for k = 0..max_degree.
void hermite_table(int max_degree, std::span<const double> x, std::span<double> table);
/// h_{n-1}(x) and h_n(x) as (mantissa, log-scale) pairs so that values far
/// in the tail are representable: value = mantissa * exp(log_scale).
struct ScaledPair {
  double previous;
  double current;
  double log_scale;
};
ScaledPair hermite_scaled(int n, double x);

class SpectralCoefficients {
 public:
  explicit SpectralCoefficients(HermiteBasis basis);
  SpectralCoefficients(HermiteBasis basis, std::vector<complex> values);
  static SpectralCoefficients unit(HermiteBasis basis, std::array<int, 2> n);

  const HermiteBasis& basis() const { return basis_; }
  std::size_t size() const { return values_.size(); }
  std::span<const complex> values() const { return values_; }
  std::span<complex> values() { return values_; }
  complex& operator[](std::size_t i) { return values_[i]; }
  const complex& operator[](std::size_t i) const { return values_[i]; }
  complex& at(std::array<int, 2> n) { return values_[basis_.flat_index(n)]; }
  const complex& at(std::array<int, 2> n) const { return values_[basis_.flat_index(n)]; }

  /// Set when a degree-raising operation dropped nonzero content.
  bool lossy() const { return lossy_; }
  void mark_lossy(bool lossy = true) { lossy_ = lossy_ || lossy; }

  /// Copy onto another per-axis degree; truncation of nonzero content marks
  /// the copy lossy.
  SpectralCoefficients resized(int max_degree) const;
  /// Parseval L² norm on the resolved span.
  double l2_norm() const;
  /// Energy carried by coefficients with some n_i > N - width.
  double tail_energy(int width) const;
  /// <a, b> = Σ a_n conj(b_n); bases must agree.
  friend complex inner(const SpectralCoefficients& a, const SpectralCoefficients& b);

  SpectralCoefficients& operator+=(const SpectralCoefficients& other);
  SpectralCoefficients& operator-=(const SpectralCoefficients& other);
  SpectralCoefficients& operator*=(complex factor);
  friend SpectralCoefficients operator+(SpectralCoefficients a, const SpectralCoefficients& b) { return a += b; }
  friend SpectralCoefficients operator-(SpectralCoefficients a, const SpectralCoefficients& b) { return a -= b; }
  friend SpectralCoefficients operator*(complex s, SpectralCoefficients a) { return a *= s; }

 private:
  HermiteBasis basis_;
  std::vector<complex> values_;
  bool lossy_ = false;
};

/// Sampled complex function on a uniform grid, stored as real/imag planes.
struct GridFunction {
  Grid grid;
  std::vector<double> re;
  std::vector<double> im;

  explicit GridFunction(Grid g) : grid(std::move(g)), re(grid.size(), 0.0), im(grid.size(), 0.0) {}
  complex value(std::size_t i) const { return {re[i], im[i]}; }
};

/// Dense separable transform between coefficients and function values on a
/// tensor node set (a uniform grid or a Gauss–Hermite rule).
class HermiteTransform {
 public:
  /// Rejects grids narrower than Grid::min_half_width(basis).
  HermiteTransform(HermiteBasis basis, const Grid& grid);
  HermiteTransform(HermiteBasis basis, QuadratureRule axis_rule);

  const HermiteBasis& basis() const { return basis_; }
  const QuadratureRule& axis_rule() const { return rule_; }
  std::size_t node_count() const;
  /// Flattened tensor integration weights (function_weights of the rule).
  const std::vector<double>& weights() const { return weights_; }

  /// Values at the nodes; c may have any degree <= the transform's degree.
  void synthesize(const SpectralCoefficients& c, std::vector<double>& re, std::vector<double>& im) const;
  /// c_n = Σ_k w_k f(x_k) h_n(x_k) onto the given degree (<= transform degree).
  SpectralCoefficients analyze(std::span<const double> re, std::span<const double> im,
                               int max_degree) const;

  GridFunction synthesize(const SpectralCoefficients& c) const;
  SpectralCoefficients analyze(const GridFunction& f) const;

 private:
  HermiteBasis basis_;
  QuadratureRule rule_;
  std::optional<Grid> grid_;
  std::vector<double> table_;     // (N+1) x P, h_n(x_i)
  std::vector<double> table_t_;   // P x (N+1)
  std::vector<double> weights_;
};

GridFunction synthesize(const SpectralCoefficients& c, const Grid& grid);
SpectralCoefficients analyze(const GridFunction& f, const HermiteBasis& basis);
/// Projection of a callable f(x) (x has basis.dim() entries) by tensor
/// Gauss–Hermite quadrature. order = 0 picks 2N + 41; explicit orders must be
/// >= 2N + 1.
SpectralCoefficients analyze(const std::function<complex(std::span<const double>)>& f,
                             const HermiteBasis& basis, int order = 0);

// Ladder actions on coefficients. The result keeps the input's degree; content
// pushed past N is dropped and flagged via lossy().
//   x h_n = (√n h_{n-1} + √(n+1) h_{n+1}) / √2
//   ∂ h_n = (√n h_{n-1} - √(n+1) h_{n+1}) / √2
SpectralCoefficients apply_position(int axis, const SpectralCoefficients& c);
SpectralCoefficients apply_derivative(int axis, const SpectralCoefficients& c);
/// x^α ∇^β c (derivatives first). alpha/beta have basis.dim() entries.
SpectralCoefficients apply_poly_diff(std::span<const int> alpha, std::span<const int> beta,
                                     const SpectralCoefficients& c);
/// (-Δ + |x|²) c through the ladder actions.
SpectralCoefficients apply_oscillator(const SpectralCoefficients& c);

}  // namespace hbesov
