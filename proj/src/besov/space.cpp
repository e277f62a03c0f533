#include <algorithm>
#include <cmath>
#include <limits>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "hbesov/simd/kernels.hpp"

namespace hbesov {

double lp_norm(const GridFunction& f, Exponent p) {
  if (p.is_infinite()) return simd::max_abs(f.re, f.im);
  const std::vector<double> w = f.grid.weights();
  const double sum = simd::weighted_abs_pow_sum(w, f.re, f.im, p.value());
  return p.value() == 1.0 ? sum : std::pow(sum, 1.0 / p.value());
}

Space::Space(HermiteBasis basis, std::optional<Grid> grid)
    : basis_(basis),
      partition_(basis),
      grid_(grid ? *grid : Grid::for_basis(basis)),
      once_(std::make_shared<std::once_flag>()),
      transform_(std::make_shared<std::unique_ptr<HermiteTransform>>()) {
  if (grid_.dim() != basis_.dim()) throw ParameterError("grid and basis dimensions differ");
  if (grid_.half_width() < Grid::min_half_width(basis_) - 1e-12)
    throw ParameterError("grid half-width is below the coverage bound for this basis");
}

const HermiteTransform& Space::transform() const {
  std::call_once(*once_, [this] { *transform_ = std::make_unique<HermiteTransform>(basis_, grid_); });
  return **transform_;
}

double Space::lp_norm(const SpectralCoefficients& c, Exponent p) const {
  if (c.basis().dim() != basis_.dim() || c.basis().max_degree() > basis_.max_degree())
    throw ParameterError("coefficients do not fit this space");
  if (p == Exponent::finite(2.0)) return c.l2_norm();
  bool zero = true;
  for (const complex& v : c.values()) zero = zero && v == complex{};
  if (zero) return 0.0;
  return hbesov::lp_norm(transform().synthesize(c), p);
}

std::vector<double> Space::block_lp_norms(const SpectralCoefficients& c, Exponent p) const {
  std::vector<double> out;
  out.reserve(std::size_t(partition_.j_max() - partition_.j0() + 1));
  for (int j = partition_.j0(); j <= partition_.j_max(); ++j) out.push_back(lp_norm(lp_block(partition_, j, c), p));
  return out;
}

double lq_norm(const std::vector<double>& a, Exponent q) {
  if (q.is_infinite()) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
  }
  if (q.value() == 1.0) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
  }
  // Scale by the maximum so that large exponents do not overflow.
  double m = 0.0;
  for (double v : a) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) s += std::pow(v / m, q.value());
  return m * std::pow(s, 1.0 / q.value());
}

BlockProfile besov_from_blocks(const std::vector<double>& block_norms, int j0, double s, Exponent q,
                               std::optional<int> j_min, std::optional<int> j_max) {
  const int top = j0 + int(block_norms.size()) - 1;
  const int lo = j_min.value_or(j0);
  const int hi = j_max.value_or(top);
  if (lo < j0 || hi > top) throw ParameterError("block range outside the resolved partition range");
  if (lo > hi) throw ParameterError("empty block range");
  BlockProfile prof;
  prof.j_min = lo;
  for (int j = lo; j <= hi; ++j)
    prof.weighted.push_back(std::exp2(s * j) * block_norms[std::size_t(j - j0)]);
  prof.value = lq_norm(prof.weighted, q);
  return prof;
}

bool tail_unresolved(const SpectralCoefficients& c) {
  const double total = c.l2_norm();
  if (total == 0.0) return false;
  return std::sqrt(c.tail_energy(2)) > kTailTolerance * total;
}

BlockProfile besov_norm(const Space& space, const SpectralCoefficients& c, const BesovParams& params) {
  BlockProfile prof = besov_from_blocks(space.block_lp_norms(c, params.p), space.partition().j0(), params.s,
                                        params.q, params.j_min, params.j_max);
  prof.tail_unresolved = tail_unresolved(c);
  return prof;
}

Ratio safe_ratio(double numerator, double denominator) {
  if (denominator == 0.0) {
    if (numerator == 0.0) return {0.0, true};
    return {std::numeric_limits<double>::infinity(), false};
  }
  return {numerator / denominator, false};
}

}  // namespace hbesov
