#include <cmath>

#include "hbesov/errors.hpp"
#include "hbesov/paraproduct.hpp"

namespace hbesov {
namespace {

// Gauss–Hermite rule for ∫F(x)dx with F(x) = P(x) e^{-x²/c²}: nodes c·y_k,
// weights c·w_k e^{y_k²}. Exact for deg P <= 2·order - 1.
QuadratureRule scaled_rule(int order, double c) {
  QuadratureRule r = gauss_hermite_rule(order);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.nodes[k] *= c;
    r.weights[k] *= c;
    r.function_weights[k] *= c;
  }
  return r;
}

struct Planes {
  std::vector<double> re, im;
};

}  // namespace

struct ProductEngine::Impl {
  HermiteBasis basis;
  HermiteBasis product_basis;
  HermiteTransform to_projection_nodes;
  HermiteTransform from_projection_nodes;
  HermiteTransform to_norm_nodes;

  explicit Impl(HermiteBasis b)
      : basis(b),
        product_basis(b.dim(), 2 * b.max_degree()),
        to_projection_nodes(b, scaled_rule(4 * b.max_degree() + 1, std::sqrt(2.0 / 3.0))),
        from_projection_nodes(product_basis, to_projection_nodes.axis_rule()),
        to_norm_nodes(b, scaled_rule(4 * b.max_degree() + 1, 1.0 / std::sqrt(2.0))) {}

  void check(const SpectralCoefficients& c) const {
    if (!(c.basis() == basis)) throw ParameterError("product operands must live on the engine's basis");
  }

  Planes values(const HermiteTransform& tr, const SpectralCoefficients& c) const {
    Planes p;
    tr.synthesize(c, p.re, p.im);
    return p;
  }

  // Exact ∥fg∥²_{L²}.
  double product_norm_sq(const SpectralCoefficients& f, const SpectralCoefficients& g) const {
    const Planes a = values(to_norm_nodes, f), b = values(to_norm_nodes, g);
    const auto& w = to_norm_nodes.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::norm(complex(a.re[i], a.im[i]) * complex(b.re[i], b.im[i]));
    return s;
  }

  Product finish(const SpectralCoefficients& f, const SpectralCoefficients& g, SpectralCoefficients value) const {
    const double full = product_norm_sq(f, g);
    const double kept = std::pow(value.l2_norm(), 2);
    const double lost = full > 0.0 ? std::max(0.0, 1.0 - kept / full) : 0.0;
    return {std::move(value), lost, lost > kAliasingTolerance};
  }
};

ProductEngine::ProductEngine(HermiteBasis basis) : impl_(std::make_unique<Impl>(basis)) {}
ProductEngine::~ProductEngine() = default;
ProductEngine::ProductEngine(ProductEngine&&) noexcept = default;
ProductEngine& ProductEngine::operator=(ProductEngine&&) noexcept = default;

const HermiteBasis& ProductEngine::basis() const { return impl_->basis; }
const HermiteBasis& ProductEngine::product_basis() const { return impl_->product_basis; }

Product ProductEngine::product(const SpectralCoefficients& f, const SpectralCoefficients& g) const {
  impl_->check(f);
  impl_->check(g);
  const Planes a = impl_->values(impl_->to_projection_nodes, f);
  const Planes b = impl_->values(impl_->to_projection_nodes, g);
  std::vector<double> re(a.re.size()), im(a.re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    const complex v = complex(a.re[i], a.im[i]) * complex(b.re[i], b.im[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
  return impl_->finish(f, g, impl_->from_projection_nodes.analyze(re, im, impl_->product_basis.max_degree()));
}

BonyPieces ProductEngine::bony(const SpectralCoefficients& f, const SpectralCoefficients& g,
                               const DyadicPartition& partition, int n0) const {
  impl_->check(f);
  impl_->check(g);
  if (n0 < 1) throw ParameterError("Bony cutoff N0 must be >= 1");
  if (partition.dim() != impl_->basis.dim()) throw ParameterError("partition dimension mismatch");
  const int j0 = partition.j0();
  const int j1 = partition.j_max();
  std::vector<Planes> fk, gl;
  for (int j = j0; j <= j1; ++j) {
    fk.push_back(impl_->values(impl_->to_projection_nodes, lp_block(partition, j, f)));
    gl.push_back(impl_->values(impl_->to_projection_nodes, lp_block(partition, j, g)));
  }
  const std::size_t n = fk.front().re.size();
  Planes acc[3];
  for (auto& a : acc) {
    a.re.assign(n, 0.0);
    a.im.assign(n, 0.0);
  }
  auto add = [n](Planes& out, const Planes& a, const Planes& b) {
    for (std::size_t i = 0; i < n; ++i) {
      out.re[i] += a.re[i] * b.re[i] - a.im[i] * b.im[i];
      out.im[i] += a.re[i] * b.im[i] + a.im[i] * b.re[i];
    }
  };
  // Low index outer, high index inner, so that swapping f and g mirrors
  // the two paraproducts bit for bit. Resonant terms: ascending k, then l.
  for (int lo = j0; lo <= j1; ++lo)
    for (int hi = lo + n0; hi <= j1; ++hi) {
      add(acc[0], fk[std::size_t(lo - j0)], gl[std::size_t(hi - j0)]);
      add(acc[1], fk[std::size_t(hi - j0)], gl[std::size_t(lo - j0)]);
    }
  for (int k = j0; k <= j1; ++k)
    for (int l = std::max(j0, k - n0 + 1); l <= std::min(j1, k + n0 - 1); ++l)
      add(acc[2], fk[std::size_t(k - j0)], gl[std::size_t(l - j0)]);
  const int np = impl_->product_basis.max_degree();
  const auto& tr = impl_->from_projection_nodes;
  BonyPieces pieces{tr.analyze(acc[0].re, acc[0].im, np), tr.analyze(acc[1].re, acc[1].im, np),
                    tr.analyze(acc[2].re, acc[2].im, np), n0, false};
  SpectralCoefficients total = pieces.low_high + pieces.high_low + pieces.resonant;
  pieces.aliased = impl_->finish(f, g, std::move(total)).aliased;
  return pieces;
}

Product product(const SpectralCoefficients& f, const SpectralCoefficients& g) {
  return ProductEngine(f.basis()).product(f, g);
}

BonyPieces bony_decompose(const SpectralCoefficients& f, const SpectralCoefficients& g,
                          const DyadicPartition& partition, int n0) {
  return ProductEngine(f.basis()).bony(f, g, partition, n0);
}

BilinearContext::BilinearContext(HermiteBasis basis)
    : inputs_(basis), products_(HermiteBasis(basis.dim(), 2 * basis.max_degree())), engine_(basis) {}

}  // namespace hbesov
