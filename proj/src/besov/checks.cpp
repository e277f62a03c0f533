#include <cmath>
#include <string>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"

namespace hbesov {
namespace {

constexpr double kParamTol = 1e-12;

double besov(const Space& space, const SpectralCoefficients& f, double s, Exponent p, Exponent q) {
  return besov_norm(space, f, {s, p, q, {}, {}}).value;
}

}  // namespace

complex duality_pairing(const Space& space, const SpectralCoefficients& f, const SpectralCoefficients& g) {
  if (!(f.basis() == g.basis())) throw ParameterError("pairing needs a common basis");
  const DyadicPartition& part = space.partition();
  complex acc{};
  for (int j = part.j0(); j <= part.j_max(); ++j)
    acc += inner(lp_block(part, j, f), widened_block(part, j, g));
  return acc;
}

Ratio embedding_ratio(const Space& space, const SpectralCoefficients& f, double s, Exponent r, Exponent p,
                      Exponent q) {
  if (r.value() > p.value()) throw ParameterError("embedding needs r <= p");
  const double shift = space.dim() * (r.reciprocal() - p.reciprocal());
  const std::vector<double> bp = space.block_lp_norms(f, p);
  const std::vector<double> br = r == p ? bp : space.block_lp_norms(f, r);
  const int j0 = space.partition().j0();
  return safe_ratio(besov_from_blocks(bp, j0, s, q).value, besov_from_blocks(br, j0, s + shift, q).value);
}

std::pair<Ratio, Ratio> sandwich_check(const Space& space, const SpectralCoefficients& f, Exponent p) {
  const std::vector<double> blocks = space.block_lp_norms(f, p);
  const int j0 = space.partition().j0();
  const double lp = space.lp_norm(f, p);
  const double b_inf = besov_from_blocks(blocks, j0, 0.0, Exponent::infinity()).value;
  const double b_one = besov_from_blocks(blocks, j0, 0.0, Exponent::finite(1.0)).value;
  return {safe_ratio(b_inf, lp), safe_ratio(lp, b_one)};
}

void validate_interpolation(const InterpolationParams& ip, int dim) {
  const double d = dim;
  if (!(ip.s > 0.0 && ip.s0 > 0.0)) throw ParameterError("interpolation needs s > 0 and s0 > 0");
  if (!(ip.theta > 0.0 && ip.theta < 1.0)) throw ParameterError("interpolation needs theta in (0, 1)");
  const double lhs = ip.s - d * ip.p.reciprocal();
  const double end0 = -d * ip.r.reciprocal();
  const double end1 = ip.s0 - d * ip.r0.reciprocal();
  const double rhs = ip.theta * end0 + (1.0 - ip.theta) * end1;
  if (std::abs(lhs - rhs) > kParamTol)
    throw ParameterError("interpolation identity s - d/p = theta(-d/r) + (1-theta)(s0 - d/r0) fails");
  if (std::abs(end0 - end1) <= kParamTol) throw ParameterError("interpolation needs -d/r != s0 - d/r0");
  const double pv = ip.p.value();
  const double hi = std::max(ip.r.value(), ip.r0.value());
  const double lo = std::min(ip.r.value(), ip.r0.value());
  const double cap = (1.0 - ip.theta) * ip.s0;
  if (hi <= pv) {
    if (ip.s > cap + kParamTol) throw ParameterError("interpolation needs s <= (1-theta) s0");
  } else if (lo <= pv) {
    if (ip.s >= cap - kParamTol) throw ParameterError("interpolation needs s < (1-theta) s0");
  } else {
    throw ParameterError("interpolation needs min(r, r0) <= p");
  }
}

Ratio interpolation_check(const Space& space, const SpectralCoefficients& f, const InterpolationParams& ip) {
  validate_interpolation(ip, space.dim());
  const int j0 = space.partition().j0();
  const std::vector<double> bp = space.block_lp_norms(f, ip.p);
  const std::vector<double> br = ip.r == ip.p ? bp : space.block_lp_norms(f, ip.r);
  const std::vector<double> br0 = ip.r0 == ip.p ? bp : ip.r0 == ip.r ? br : space.block_lp_norms(f, ip.r0);
  const double num = besov_from_blocks(bp, j0, ip.s, Exponent::finite(1.0)).value;
  const double a = besov_from_blocks(br, j0, 0.0, Exponent::infinity()).value;
  const double b = besov_from_blocks(br0, j0, ip.s0, Exponent::infinity()).value;
  return safe_ratio(num, std::pow(a, ip.theta) * std::pow(b, 1.0 - ip.theta));
}

Ratio lifting_ratio(const Space& space, const SpectralCoefficients& f, double alpha, double s, Exponent p,
                    Exponent q) {
  return safe_ratio(besov(space, apply_H_power(alpha, f), s, p, q), besov(space, f, s + alpha, p, q));
}

}  // namespace hbesov
