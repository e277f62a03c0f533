#include <algorithm>
#include <cmath>
#include <string>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"
#include "hbesov/simd/kernels.hpp"

namespace hbesov {
namespace {

std::vector<double> tensor_weights(const std::vector<double>& w, int dim) {
  if (dim == 1) return w;
  std::vector<double> out(w.size() * w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = 0; k < w.size(); ++k) out[i * w.size() + k] = w[i] * w[k];
  return out;
}

}  // namespace

HermiteTransform::HermiteTransform(HermiteBasis basis, const Grid& grid)
    : HermiteTransform(basis, grid.axis()) {
  if (grid.dim() != basis.dim()) throw ParameterError("grid and basis dimensions differ");
  if (grid.half_width() < Grid::min_half_width(basis) - 1e-12)
    throw ParameterError("grid half-width " + std::to_string(grid.half_width()) +
                         " is below the coverage bound " + std::to_string(Grid::min_half_width(basis)));
  grid_ = grid;
}

HermiteTransform::HermiteTransform(HermiteBasis basis, QuadratureRule axis_rule)
    : basis_(basis), rule_(std::move(axis_rule)) {
  const std::size_t p = rule_.size();
  const std::size_t rows = basis_.axis_size();
  table_.resize(rows * p);
  hermite_table(basis_.max_degree(), rule_.nodes, table_);
  table_t_.resize(p * rows);
  for (std::size_t n = 0; n < rows; ++n)
    for (std::size_t i = 0; i < p; ++i) table_t_[i * rows + n] = table_[n * p + i];
  weights_ = tensor_weights(rule_.function_weights, basis_.dim());
}

std::size_t HermiteTransform::node_count() const {
  return basis_.dim() == 1 ? rule_.size() : rule_.size() * rule_.size();
}

void HermiteTransform::synthesize(const SpectralCoefficients& c, std::vector<double>& re,
                                  std::vector<double>& im) const {
  const HermiteBasis& cb = c.basis();
  if (cb.dim() != basis_.dim() || cb.max_degree() > basis_.max_degree())
    throw ParameterError("coefficients exceed the transform's degree");
  const auto& k = simd::active();
  const std::size_t p = rule_.size();
  const std::size_t nc = cb.axis_size();
  re.assign(node_count(), 0.0);
  im.assign(node_count(), 0.0);

  if (basis_.dim() == 1) {
    std::vector<double> b(2 * nc);
    for (std::size_t n = 0; n < nc; ++n) {
      b[2 * n] = c[n].real();
      b[2 * n + 1] = c[n].imag();
    }
    std::vector<double> out(2 * p);
    k.gemm_tn(p, 2, nc, table_.data(), p, b.data(), 2, out.data(), p);
    std::copy(out.begin(), out.begin() + p, re.begin());
    std::copy(out.begin() + p, out.end(), im.begin());
    return;
  }

  // Contract the last axis, then the first.
  const std::size_t cols = 2 * nc;
  std::vector<double> b(nc * cols);  // b[n2][j]: j < nc real part of c[j][n2], else imaginary
  for (std::size_t n1 = 0; n1 < nc; ++n1)
    for (std::size_t n2 = 0; n2 < nc; ++n2) {
      const complex v = c[n1 * nc + n2];
      b[n2 * cols + n1] = v.real();
      b[n2 * cols + nc + n1] = v.imag();
    }
  std::vector<double> t(cols * p);  // t[j][i2]
  k.gemm_tn(p, cols, nc, table_.data(), p, b.data(), cols, t.data(), p);
  k.gemm_tn(p, p, nc, t.data(), p, table_.data(), p, re.data(), p);
  k.gemm_tn(p, p, nc, t.data() + nc * p, p, table_.data(), p, im.data(), p);
}

SpectralCoefficients HermiteTransform::analyze(std::span<const double> re, std::span<const double> im,
                                               int max_degree) const {
  if (max_degree > basis_.max_degree()) throw ParameterError("analysis degree exceeds the transform's degree");
  if (re.size() != node_count() || (!im.empty() && im.size() != node_count()))
    throw ParameterError("value count does not match the node set");
  const HermiteBasis out_basis(basis_.dim(), max_degree);
  const auto& k = simd::active();
  const std::size_t p = rule_.size();
  const std::size_t nc = out_basis.axis_size();
  const std::size_t total = node_count();

  std::vector<double> wv(2 * total, 0.0);
  for (std::size_t i = 0; i < total; ++i) wv[i] = weights_[i] * re[i];
  if (!im.empty())
    for (std::size_t i = 0; i < total; ++i) wv[total + i] = weights_[i] * im[i];

  std::vector<complex> out(out_basis.size());
  if (basis_.dim() == 1) {
    std::vector<double> c(nc * 2);
    k.gemm_nt(nc, 2, p, table_.data(), p, wv.data(), p, c.data(), 2);
    for (std::size_t n = 0; n < nc; ++n) out[n] = {c[2 * n], c[2 * n + 1]};
    return SpectralCoefficients(out_basis, std::move(out));
  }

  std::vector<double> u(p * nc);
  std::vector<double> cre(nc * nc), cim(nc * nc);
  for (int plane = 0; plane < 2; ++plane) {
    k.gemm_nt(p, nc, p, wv.data() + plane * total, p, table_.data(), p, u.data(), nc);
    k.gemm_tn(nc, nc, p, u.data(), nc, table_t_.data(), basis_.axis_size(),
              plane == 0 ? cre.data() : cim.data(), nc);
  }
  for (std::size_t i = 0; i < nc * nc; ++i) out[i] = {cre[i], cim[i]};
  return SpectralCoefficients(out_basis, std::move(out));
}

GridFunction HermiteTransform::synthesize(const SpectralCoefficients& c) const {
  if (!grid_) throw ParameterError("transform is not attached to a uniform grid");
  GridFunction f(*grid_);
  synthesize(c, f.re, f.im);
  return f;
}

SpectralCoefficients HermiteTransform::analyze(const GridFunction& f) const {
  if (f.grid.dim() != basis_.dim() || f.grid.axis_size() != rule_.size())
    throw ParameterError("grid function does not live on this transform's grid");
  return analyze(f.re, f.im, basis_.max_degree());
}

GridFunction synthesize(const SpectralCoefficients& c, const Grid& grid) {
  return HermiteTransform(c.basis(), grid).synthesize(c);
}

SpectralCoefficients analyze(const GridFunction& f, const HermiteBasis& basis) {
  return HermiteTransform(basis, f.grid).analyze(f);
}

SpectralCoefficients analyze(const std::function<complex(std::span<const double>)>& f,
                             const HermiteBasis& basis, int order) {
  const int n = basis.max_degree();
  if (order == 0) order = 2 * n + 41;
  if (order < 2 * n + 1) throw ParameterError("quadrature order must be >= 2N+1 to control aliasing");
  const HermiteTransform tr(basis, gauss_hermite_rule(order));
  const auto& x = tr.axis_rule().nodes;
  std::vector<double> re(tr.node_count()), im(tr.node_count());
  if (basis.dim() == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double pt[1] = {x[i]};
      const complex v = f(pt);
      re[i] = v.real();
      im[i] = v.imag();
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double pt[2] = {x[i], x[j]};
        const complex v = f(pt);
        re[i * x.size() + j] = v.real();
        im[i * x.size() + j] = v.imag();
      }
  }
  return tr.analyze(re, im, n);
}

}  // namespace hbesov
