#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hbesov/besov.hpp"
#include "hbesov/errors.hpp"
#include "oracles.hpp"

using namespace hbesov;

namespace {

const Exponent one = Exponent::finite(1.0);
const Exponent two = Exponent::finite(2.0);
const Exponent inf = Exponent::infinity();

double lp_oracle(const SpectralCoefficients& c, double p, double half_width) {
  double acc = 0.0;
  for (double a = -half_width; a < half_width; a += 1.0)
    acc += oracle::integrate([&](double x) { return std::pow(double(std::abs(oracle::expansion_value(c, x))), p); }, a,
                             a + 1.0);
  return std::pow(acc, 1.0 / p);
}

double besov(const Space& sp, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(sp, c, {s, p, q, {}, {}}).value;
}

}  // namespace

TEST_SUITE("besov") {

TEST_CASE("L^p norms of h_0") {
  const Space sp(HermiteBasis(1, 32));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  CHECK(sp.lp_norm(h0, two) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.lp_norm(h0, inf) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-14));
  CHECK(sp.lp_norm(h0, one) == doctest::Approx(oracle::gaussian_l1()).epsilon(1e-10));
  CHECK(oracle::gaussian_l1() == doctest::Approx(1.882792).epsilon(1e-6));
  // the grid path for p = 2 agrees with Parseval
  CHECK(lp_norm(sp.transform().synthesize(h0), two) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("L^p norms of a random expansion against quadrature") {
  // |f|^p has kinks near the zeros of f, so the trapezoid rule is only
  // second order there: loose on the default grid, tight on a fine one.
  const Space sp(HermiteBasis(1, 24));
  const Space fine(HermiteBasis(1, 24), Grid(1, sp.grid().half_width(), 1.0 / 256));
  const auto f = oracle::random_coefficients(sp.basis(), 17);
  const double L = sp.grid().half_width();
  for (double p : {1.0, 1.5, 3.0}) {
    INFO("p = " << p);
    const double ref = lp_oracle(f, p, L);
    CHECK(sp.lp_norm(f, Exponent::finite(p)) == doctest::Approx(ref).epsilon(1e-3));
    CHECK(fine.lp_norm(f, Exponent::finite(p)) == doctest::Approx(ref).epsilon(1e-8));
  }
  CHECK(sp.lp_norm(f, two) == doctest::Approx(lp_oracle(f, 2.0, L)).epsilon(1e-10));
  CHECK(lp_norm(sp.transform().synthesize(f), two) == doctest::Approx(f.l2_norm()).epsilon(1e-10));
}

TEST_CASE("Besov norm of h_0 is its L^p norm") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  for (double s : {-1.0, 0.0, 0.5, 3.0})
    for (Exponent p : {one, two, Exponent::finite(4.0), inf})
      for (Exponent q : {one, two, inf}) {
        const BlockProfile b = besov_norm(sp, h0, {s, p, q, {}, {}});
        CHECK(b.value == doctest::Approx(sp.lp_norm(h0, p)).epsilon(1e-12));
        int nonzero = 0;
        for (double a : b.weighted) nonzero += a != 0.0;
        CHECK(nonzero == 1);
        CHECK_FALSE(b.tail_unresolved);
      }
  CHECK(besov(sp, h0, 3.0, two, two) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("B^0_{2,2} against L^2 for a random expansion") {
  const Space sp(HermiteBasis(1, 64));
  const auto f = oracle::random_coefficients(sp.basis(), 11);
  const double b = besov(sp, f, 0.0, two, two);
  const double l2 = f.l2_norm();
  MESSAGE("B^0_{2,2} / L2 = " << b / l2);
  // Σφ_j² lies in [1/2, 1] on the spectrum.
  CHECK(b <= l2 * (1.0 + 1e-12));
  CHECK(b >= l2 / std::sqrt(2.0) * (1.0 - 1e-12));
  // the sandwich chain
  CHECK(besov(sp, f, 0.0, two, inf) <= l2 * (1.0 + 1e-12));
  CHECK(l2 <= besov(sp, f, 0.0, two, one) * (1.0 + 1e-12));
}

TEST_CASE("l^q monotonicity") {
  const Space sp(HermiteBasis(1, 48));
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto f = oracle::random_coefficients(sp.basis(), seed);
    for (double s : {-0.5, 0.0, 1.0})
      for (Exponent p : {one, two, inf}) {
        const auto blocks = sp.block_lp_norms(f, p);
        const double b1 = besov_from_blocks(blocks, sp.partition().j0(), s, one).value;
        const double b2 = besov_from_blocks(blocks, sp.partition().j0(), s, two).value;
        const double b3 = besov_from_blocks(blocks, sp.partition().j0(), s, Exponent::finite(3.0)).value;
        const double bi = besov_from_blocks(blocks, sp.partition().j0(), s, inf).value;
        CHECK(b2 <= b1 * (1 + 1e-14));
        CHECK(b3 <= b2 * (1 + 1e-14));
        CHECK(bi <= b3 * (1 + 1e-14));
      }
  }
}

TEST_CASE("lq_norm scaling and edge cases") {
  CHECK(lq_norm({}, two) == 0.0);
  CHECK(lq_norm({0.0, 0.0}, Exponent::finite(3.0)) == 0.0);
  CHECK(lq_norm({3.0, 4.0}, two) == doctest::Approx(5.0));
  // no overflow for large entries
  CHECK(lq_norm({1e200, 1e200}, two) == doctest::Approx(std::sqrt(2.0) * 1e200));
  CHECK(lq_norm({1.0, 2.0, 0.5}, inf) == 2.0);
}

TEST_CASE("block window restricts the sum") {
  const Space sp(HermiteBasis(1, 64));
  const auto f = oracle::random_coefficients(sp.basis(), 2);
  const BlockProfile full = besov_norm(sp, f, {0.0, two, one, {}, {}});
  const BlockProfile part = besov_norm(sp, f, {0.0, two, one, 1, 3});
  CHECK(part.j_min == 1);
  CHECK(part.weighted.size() == 3);
  double s = 0.0;
  for (double a : part.weighted) s += a;
  CHECK(part.value == doctest::Approx(s));
  CHECK(part.value < full.value);
  CHECK_THROWS_AS(besov_norm(sp, f, {0.0, two, one, 3, 1}), ParameterError);
}

TEST_CASE("unresolved tail is flagged") {
  const Space sp(HermiteBasis(1, 32));
  auto f = SpectralCoefficients::unit(sp.basis(), {3, 0});
  CHECK_FALSE(besov_norm(sp, f, {0.0, two, two, {}, {}}).tail_unresolved);
  f[32] = 1e-3;
  CHECK(besov_norm(sp, f, {0.0, two, two, {}, {}}).tail_unresolved);
}

TEST_CASE("duality pairing") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const auto h1 = SpectralCoefficients::unit(sp.basis(), {1, 0});
  CHECK(std::abs(duality_pairing(sp, h0, h0) - 1.0) < 1e-14);
  CHECK(std::abs(duality_pairing(sp, h0, h1)) == 0.0);
  const auto f = oracle::random_coefficients(sp.basis(), 5);
  const auto g = oracle::random_coefficients(sp.basis(), 6);
  const complex direct = inner(f, g);
  CHECK(std::abs(duality_pairing(sp, f, g) - direct) <= 1e-10 * std::abs(direct));

  const Space sp2(HermiteBasis(2, 16));
  const auto f2 = oracle::random_coefficients(sp2.basis(), 5);
  const auto g2 = oracle::random_coefficients(sp2.basis(), 6);
  CHECK(std::abs(duality_pairing(sp2, f2, g2) - inner(f2, g2)) <= 1e-10 * std::abs(inner(f2, g2)));
}

TEST_CASE("embedding ratio") {
  const Space sp(HermiteBasis(1, 32));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const Ratio r = embedding_ratio(sp, h0, 0.0, one, two, two);
  CHECK(r.value == doctest::Approx(1.0 / oracle::gaussian_l1()).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(0.531126).epsilon(1e-5));
  const Ratio z = embedding_ratio(sp, SpectralCoefficients(sp.basis()), 0.0, one, two, two);
  CHECK(z.value == 0.0);
  CHECK(z.zero_input);
  CHECK_THROWS_AS(embedding_ratio(sp, h0, 0.0, two, one, two), ParameterError);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = oracle::random_coefficients(sp.basis(), seed);
    worst = std::max(worst, embedding_ratio(sp, f, 0.5, one, inf, two).value);
  }
  CHECK(std::isfinite(worst));
  CHECK(worst > 0.0);
}

TEST_CASE("safe ratio") {
  CHECK(safe_ratio(0.0, 0.0).value == 0.0);
  CHECK(safe_ratio(0.0, 0.0).zero_input);
  CHECK(safe_ratio(1.0, 4.0).value == 0.25);
  CHECK_FALSE(safe_ratio(1.0, 4.0).zero_input);
  CHECK(std::isinf(safe_ratio(1.0, 0.0).value));
}

TEST_CASE("sandwich") {
  const Space sp(HermiteBasis(1, 32));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  for (Exponent p : {one, two, Exponent::finite(3.0), inf}) {
    const auto [a, b] = sandwich_check(sp, h0, p);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto f = SpectralCoefficients::unit(sp.basis(), {0, 0}) + SpectralCoefficients::unit(sp.basis(), {1, 0});
  for (Exponent p : {one, two, inf}) {
    const auto [a, b] = sandwich_check(sp, f, p);
    CHECK(a.value > 0.0);
    CHECK(a.value <= 2.0);
    CHECK(b.value > 0.0);
    CHECK(b.value <= 2.0);
  }
  const auto [za, zb] = sandwich_check(sp, SpectralCoefficients(sp.basis()), two);
  CHECK(za.zero_input);
  CHECK(zb.zero_input);
}

TEST_CASE("interpolation parameter validation") {
  // r = r0 = p = 2, s0 = 1, θ = 1/2, s = 1/2
  CHECK_NOTHROW(validate_interpolation({0.5, 1.0, two, two, two, 0.5}, 1));
  // identity broken
  CHECK_THROWS_AS(validate_interpolation({0.6, 1.0, two, two, two, 0.5}, 1), ParameterError);
  // s0 = 0 makes -d/r = s0 - d/r0 (and s0 must be positive anyway)
  CHECK_THROWS_AS(validate_interpolation({0.0, 0.0, two, two, two, 0.5}, 1), ParameterError);
  // r = 1 and r0 = 4 with s0 chosen so the endpoints coincide: -1 = s0 - 1/4 has no positive s0,
  // so use r = 4, r0 = 1: -1/4 = s0 - 1 at s0 = 3/4
  {
    const double theta = 0.5, s0 = 0.75;
    const double s = 1.0 / 2.0 + theta * (-0.25) + (1 - theta) * (s0 - 1.0);
    CHECK_THROWS_AS(validate_interpolation({s, s0, two, Exponent::finite(4.0), one, theta}, 1), ParameterError);
  }
  // both r, r0 > p
  CHECK_THROWS_AS(validate_interpolation({0.5, 1.0, one, two, two, 0.5}, 1), ParameterError);
  // theta out of range
  CHECK_THROWS_AS(validate_interpolation({0.5, 1.0, two, two, two, 1.0}, 1), ParameterError);
  // mixed case r <= p < r0 needs the strict inequality s < (1-θ)s0
  {
    const Exponent p = two, r = one, r0 = Exponent::finite(4.0);
    const double theta = 0.5, s0 = 2.0;
    const double s = 0.5 + theta * (-1.0) + (1 - theta) * (s0 - 0.25);
    CHECK(s < (1 - theta) * s0);
    CHECK_NOTHROW(validate_interpolation({s, s0, p, r, r0, theta}, 1));
  }
  // d = 2 shifts the identity
  CHECK_NOTHROW(validate_interpolation({0.5, 1.0, two, two, two, 0.5}, 2));
}

TEST_CASE("interpolation ratio") {
  const Space sp(HermiteBasis(1, 48));
  const InterpolationParams ip{0.5, 1.0, two, two, two, 0.5};
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  // one block at j = 0: every norm is ∥h_0∥_2 = 1
  CHECK(interpolation_check(sp, h0, ip).value == doctest::Approx(1.0).epsilon(1e-12));
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    worst = std::max(worst, interpolation_check(sp, oracle::random_coefficients(sp.basis(), seed), ip).value);
  CHECK(std::isfinite(worst));
  CHECK_THROWS_AS(interpolation_check(sp, h0, {0.6, 1.0, two, two, two, 0.5}), ParameterError);
}

TEST_CASE("lifting ratio stays within the block scaling bound") {
  const Space sp(HermiteBasis(1, 64));
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto f = oracle::random_coefficients(sp.basis(), seed);
    for (double alpha : {-2.0, -1.0, 1.0, 2.0})
      for (Exponent p : {one, two, inf}) {
        const double r = lifting_ratio(sp, f, alpha, 0.5, p, two).value;
        CHECK(r <= 4.0);
        CHECK(r > 0.0);
      }
  }
  // exact per-block bound for p = 2: (2n+1)^{α/2} / 2^{αj} in [2^{-|α|}, 2^{|α|}]
  const auto f = oracle::random_coefficients(sp.basis(), 77);
  for (double alpha : {-2.0, 2.0}) {
    const double r = lifting_ratio(sp, f, alpha, 0.0, two, two).value;
    CHECK(r <= std::pow(2.0, std::abs(alpha)));
    CHECK(r >= std::pow(2.0, -std::abs(alpha)));
  }
}

TEST_CASE("two-dimensional norms") {
  const Space sp(HermiteBasis(2, 16));
  const auto h00 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  // h_0 ⊗ h_0 sits at λ = √2, shared by blocks 0 and 1
  CHECK(besov(sp, h00, 0.0, two, inf) <= 1.0);
  CHECK(besov(sp, h00, 0.0, two, one) >= 1.0);
  CHECK(besov(sp, h00, 0.0, two, two) == doctest::Approx(std::sqrt(std::pow(DyadicPartition::phi(0, std::sqrt(2.0)), 2) +
                                                                   std::pow(DyadicPartition::phi(1, std::sqrt(2.0)), 2))));
  CHECK(sp.lp_norm(h00, inf) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(sp.lp_norm(h00, one) == doctest::Approx(oracle::gaussian_l1() * oracle::gaussian_l1()).epsilon(1e-9));
}

}  // TEST_SUITE
