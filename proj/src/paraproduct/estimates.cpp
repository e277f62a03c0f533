#include "hbesov/errors.hpp"
#include "hbesov/paraproduct.hpp"

namespace hbesov {
namespace {

void require_holder(Exponent p, Exponent p1, Exponent p2, const char* what) {
  if (!holder_compatible(p, p1, p2))
    throw ParameterError(std::string(what) + ": exponents violate 1/" + p.str() + " = 1/" + p1.str() + " + 1/" + p2.str());
}

double besov(const Space& space, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(space, c, {s, p, q, {}, {}}).value;
}

}  // namespace

Ratio lowhigh_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                             const SpectralCoefficients& g, double s, Exponent p, Exponent p1, Exponent p2,
                             Exponent q) {
  require_holder(p, p1, p2, "low-high estimate");
  const double den = ctx.inputs().lp_norm(f, p1) * besov(ctx.inputs(), g, s, p2, q);
  const BonyPieces pieces = ctx.engine().bony(f, g, ctx.inputs().partition());
  return safe_ratio(besov(ctx.products(), pieces.low_high, s, p, q), den);
}

Ratio negative_s_lowhigh_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                               const SpectralCoefficients& g, double s, double r, Exponent p, Exponent p1,
                               Exponent p2, Exponent q) {
  if (!(s < 0.0)) throw ParameterError("negative-regularity low-high estimate needs s < 0");
  require_holder(p, p1, p2, "negative-regularity low-high estimate");
  const double den = besov(ctx.inputs(), f, s, p1, Exponent::infinity()) * besov(ctx.inputs(), g, r, p2, q);
  const BonyPieces pieces = ctx.engine().bony(f, g, ctx.inputs().partition());
  return safe_ratio(besov(ctx.products(), pieces.low_high, s + r, p, q), den);
}

Ratio resonant_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                              const SpectralCoefficients& g, double s1, double s2, Exponent p, Exponent p1,
                              Exponent p2, Exponent q, Exponent q1, Exponent q2) {
  if (!(s1 + s2 > 0.0)) throw ParameterError("resonant estimate needs s1 + s2 > 0");
  require_holder(p, p1, p2, "resonant estimate");
  require_holder(q, q1, q2, "resonant estimate (summability)");
  const double den = besov(ctx.inputs(), f, s1, p1, q1) * besov(ctx.inputs(), g, s2, p2, q2);
  const BonyPieces pieces = ctx.engine().bony(f, g, ctx.inputs().partition());
  return safe_ratio(besov(ctx.products(), pieces.resonant, s1 + s2, p, q), den);
}

Ratio product_estimate_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                             const SpectralCoefficients& g, double s, Exponent p, Exponent p1, Exponent p2,
                             Exponent p3, Exponent p4, Exponent q) {
  if (!(s > 0.0)) throw ParameterError("product estimate needs s > 0");
  require_holder(p, p1, p2, "product estimate");
  require_holder(p, p3, p4, "product estimate");
  const Space& in = ctx.inputs();
  const double den = besov(in, f, s, p1, q) * in.lp_norm(g, p2) + in.lp_norm(f, p3) * besov(in, g, s, p4, q);
  const Product fg = ctx.engine().product(f, g);
  return safe_ratio(besov(ctx.products(), fg.value, s, p, q), den);
}

Ratio negative_positive_product_ratio(const BilinearContext& ctx, const SpectralCoefficients& f,
                                      const SpectralCoefficients& g, double s, double r, Exponent p,
                                      Exponent p1, Exponent p2, Exponent q) {
  if (!(s < 0.0 && r > 0.0 && s + r > 0.0))
    throw ParameterError("negative-positive product estimate needs s < 0 < r and s + r > 0");
  require_holder(p, p1, p2, "negative-positive product estimate");
  const double den = besov(ctx.inputs(), f, s, p1, q) * besov(ctx.inputs(), g, r, p2, q);
  const Product fg = ctx.engine().product(f, g);
  return safe_ratio(besov(ctx.products(), fg.value, s, p, q), den);
}

}  // namespace hbesov
