#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hbesov/errors.hpp"
#include "hbesov/semigroup.hpp"
#include "oracles.hpp"

using namespace hbesov;

namespace {

const Exponent one = Exponent::finite(1.0);
const Exponent two = Exponent::finite(2.0);
const Exponent inf = Exponent::infinity();

double besov(const Space& sp, const SpectralCoefficients& c, double s, Exponent p, Exponent q) {
  return besov_norm(sp, c, {s, p, q, {}, {}}).value;
}

}  // namespace

TEST_SUITE("semigroup") {

TEST_CASE("heat flow is diagonal and a semigroup") {
  const HermiteBasis b(1, 64);
  const auto f = oracle::random_coefficients(b, 1);
  CHECK(oracle::max_abs_diff(heat_apply(0.0, f).values(), f.values()) == 0.0);
  for (int n : {0, 3, 40}) {
    const auto h = heat_apply(0.3, SpectralCoefficients::unit(b, {n, 0}));
    CHECK(h[std::size_t(n)].real() == doctest::Approx(std::exp(-0.3 * (2 * n + 1))).epsilon(1e-15));
  }
  const auto a = heat_apply(0.2, heat_apply(0.05, f)), c = heat_apply(0.25, f);
  CHECK(oracle::max_abs_diff(a.values(), c.values()) <= 1e-12 * f.l2_norm());
  const HermiteBasis b2(2, 8);
  const auto e = heat_apply(0.1, SpectralCoefficients::unit(b2, {2, 3}));
  CHECK(e[b2.flat_index({2, 3})].real() == doctest::Approx(std::exp(-0.1 * 12)).epsilon(1e-15));
  CHECK_THROWS_AS(heat_apply(-1.0, f), ParameterError);
}

TEST_CASE("Mehler kernel") {
  const Grid g(1, 8.0, 0.125);
  const KernelMatrix km = mehler_kernel(0.5, g);
  double lo = INFINITY;
  for (double v : km.values) lo = std::min(lo, v);
  CHECK(lo > 0.0);
  for (std::size_t i = 0; i < km.x.size(); i += 17)
    for (std::size_t k = 0; k < km.y.size(); k += 13) {
      CHECK(km(i, k) == doctest::Approx(oracle::mehler(0.5, km.x[i], km.y[k])).epsilon(1e-13));
      CHECK(km(i, k) == km(k, i));
    }
  // applied to h_0
  double worst = 0.0;
  for (std::size_t i = 0; i < km.x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < km.y.size(); ++k) acc += km(i, k) * km.y_weights[k] * eval_hermite(0, km.y[k]);
    worst = std::max(worst, std::abs(acc - std::exp(-0.5) * eval_hermite(0, km.x[i])));
  }
  CHECK(worst < 1e-8);
  CHECK_THROWS_AS(mehler_kernel(0.0, g), ParameterError);
  CHECK_THROWS_AS(mehler_kernel(-0.1, g), ParameterError);
  CHECK_THROWS_AS(mehler_kernel(1e-7, g), ParameterError);
}

TEST_CASE("Mehler kernel against the spectral sum") {
  const Grid g(1, 8.0, 0.125);
  for (double t : {0.1, 0.5, 1.0}) {
    const KernelMatrix spec = multiplier_kernel(SymbolFn::heat(t), g, 128);
    const KernelMatrix closed = mehler_kernel(t, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.values.size(); ++i)
      worst = std::max(worst, std::abs(spec.values[i] - closed.values[i]));
    INFO("t = " << t);
    CHECK(worst <= 1e-8);
    CHECK(spec.resolved);
  }
}

TEST_CASE("Gaussian upper bound") {
  const Grid g(1, 12.0, 0.0625);
  for (double t : {0.1, 0.5, 1.0}) {
    const double r = gaussian_bound_ratio(t, g, 8.0);
    MESSAGE("t = " << t << ": sup K t^{1/2} e^{|x-y|²/8t} = " << r);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
  }
  // independent evaluation of the same maximum
  double worst = 0.0;
  for (double x : g.axis().nodes)
    for (double y : g.axis().nodes)
      worst = std::max(worst, oracle::mehler(0.5, x, y) * std::sqrt(0.5) * std::exp((x - y) * (x - y) / 4.0));
  CHECK(gaussian_bound_ratio(0.5, g, 8.0) == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("smoothing ratio") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const SmoothingParams up{0.0, 1.0, two, two, two, two};
  double prev = INFINITY;
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    const double r = smoothing_ratio(sp, h0, t, up).value;
    CHECK(r == doctest::Approx(std::exp(-t) * std::sqrt(t)).epsilon(1e-12));
    if (t >= 1.0) CHECK(r < prev);
    prev = r;
  }
  auto f = oracle::random_coefficients(sp.basis(), 13);
  for (std::size_t n = 0; n < f.size(); ++n) f[n] *= std::pow(2.0 * n + 1, -0.5);
  double worst = 0.0;
  for (double t = 1e-3; t <= 1.0; t *= 2.0) worst = std::max(worst, smoothing_ratio(sp, f, t, up).value);
  MESSAGE("broadband smoothing ratio max = " << worst);
  CHECK(worst < 10.0);
  // same space on both sides: no gain, no loss
  for (double t : {1e-3, 1e-2, 0.1, 1.0})
    CHECK(smoothing_ratio(sp, f, t, {0.5, 0.5, two, two, two, two}).value <= 1.0 + 1e-12);
  CHECK_THROWS_AS(smoothing_ratio(sp, f, 0.1, {1.0, 0.0, two, two, two, two}), ParameterError);
  CHECK_THROWS_AS(smoothing_ratio(sp, f, 0.1, {0.0, 1.0, inf, two, two, two}), ParameterError);
  CHECK_THROWS_AS(smoothing_ratio(sp, f, 0.0, up), ParameterError);
}

TEST_CASE("smoothing rate fits") {
  const HermiteBasis b(1, 4096);
  const Space sp(b);
  SpectralCoefficients f(b);
  for (int n = 0; n <= 4096; ++n) f[std::size_t(n)] = std::pow(2.0 * n + 1, -0.5);
  const RateFit a = smoothing_rate_fit(sp, f, {0.0, 1.0, two, two, inf, two}, 1e-3, 1e-1, 12);
  CHECK_FALSE(a.narrowband);
  CHECK(a.predicted == -0.5);
  CHECK(a.relative_error < 0.15);
  // dirac projection: c_n = h_n(0), p1 = 1 -> p2 = 2
  SpectralCoefficients delta(b);
  for (int n = 0; n <= 4096; n += 2) delta[std::size_t(n)] = eval_hermite(n, 0.0);
  const RateFit c = smoothing_rate_fit(sp, delta, {0.0, 0.0, one, two, inf, two}, 1e-3, 3e-2, 12);
  CHECK(c.predicted == -0.25);
  CHECK(c.relative_error < 0.15);
  // equal spaces: flat
  const Space small(HermiteBasis(1, 64));
  const auto g = oracle::random_coefficients(small.basis(), 3);
  const RateFit flat = smoothing_rate_fit(small, g, {0.0, 0.0, two, two, two, two}, 1e-5, 1e-4, 6);
  CHECK(flat.predicted == 0.0);
  CHECK(std::abs(flat.slope) < 0.01);
  // single mode
  const RateFit nb = smoothing_rate_fit(small, SpectralCoefficients::unit(small.basis(), {0, 0}),
                                        {0.0, 1.0, two, two, two, two}, 1e-3, 1e-1, 6);
  CHECK(nb.narrowband);
  CHECK_THROWS_AS(smoothing_rate_fit(small, g, {0.0, 1.0, two, two, two, two}, 1e-3, 1e-1, 3), ParameterError);
}

TEST_CASE("continuity deficit") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const double ts[] = {1e-1, 1e-2, 1e-3, 0.0};
  const auto d0 = continuity_deficit(sp, h0, 1.0, two, two, ts);
  for (std::size_t k = 0; k < 3; ++k) CHECK(d0[k] == doctest::Approx(-std::expm1(-ts[k])).epsilon(1e-12));
  CHECK(d0[3] == 0.0);
  const auto f = oracle::random_coefficients(sp.basis(), 8);
  for (double s : {0.0, 1.0}) {
    const auto d = continuity_deficit(sp, f, s, two, two, ts);
    // per mode |1 - e^{-tλ²}| <= tλ² and λ² < 4^{j+1} on supp φ_j
    const double bound = besov(sp, f, s + 2.0, two, two);
    for (std::size_t k = 0; k < 3; ++k) CHECK(d[k] <= 4.0 * ts[k] * bound);
    CHECK(d[0] > d[1]);
    CHECK(d[1] > d[2]);
    CHECK(d[3] == 0.0);
  }
  const auto dp = continuity_deficit(sp, f, 0.0, inf, one, ts);
  CHECK(dp[0] > dp[1]);
  CHECK(dp[1] > dp[2]);
  CHECK_THROWS_AS(continuity_deficit(sp, f, 0.0, two, inf, ts), ParameterError);
}

TEST_CASE("weak continuity pairing") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const auto h1 = SpectralCoefficients::unit(sp.basis(), {1, 0});
  CHECK(std::abs(weak_continuity_pairing(sp, h0, h0, 0.1) - std::expm1(-0.1)) < 1e-15);
  CHECK(std::abs(weak_continuity_pairing(sp, h0, h1, 0.1)) == 0.0);
  const auto f = oracle::random_coefficients(sp.basis(), 21), g = oracle::random_coefficients(sp.basis(), 22);
  double prev = INFINITY;
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double v = std::abs(weak_continuity_pairing(sp, f, g, t));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-6 * f.l2_norm() * g.l2_norm() * 129);
}

TEST_CASE("semigroup characterization of the norm") {
  const Space sp(HermiteBasis(1, 64));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  SemigroupNormParams p;
  p.s = 0.0;
  p.s0 = 1.0;
  p.p = two;
  p.q = two;
  // (tH)^1 e^{-tH} h_0 = t e^{-t} h_0
  const double expect = std::sqrt(oracle::integrate([](double t) { return t * std::exp(-2.0 * t); }, 0.0, 4.0));
  const SemigroupNorm v = semigroup_norm(sp, h0, p);
  CHECK(v.value == doctest::Approx(expect).epsilon(1e-6));
  CHECK(v.cutoff_error < 1e-9);
  CHECK(semigroup_norm(sp, SpectralCoefficients(sp.basis()), p).value == 0.0);
  p.s = 2.0;
  CHECK_THROWS_AS(semigroup_norm(sp, h0, p), ParameterError);
  // q = ∞: sup_t t e^{-t} = 1/e at t = 1
  p.s = 0.0;
  p.q = inf;
  CHECK(semigroup_norm(sp, h0, p).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
  // two-sided on random members
  const auto f = oracle::random_coefficients(sp.basis(), 4);
  for (auto [s, pp, q] : {std::tuple{1.0, two, two}, {0.5, two, one}, {0.0, inf, inf}}) {
    SemigroupNormParams sp2;
    sp2.s = s;
    sp2.p = pp;
    sp2.q = q;
    sp2.s0 = 1.0;
    for (auto kind : {SemigroupNormParams::Kind::lebesgue, SemigroupNormParams::Kind::besov}) {
      sp2.kind = kind;
      sp2.r = two;
      const double r = semigroup_norm(sp, f, sp2).value / besov(sp, f, s, pp, q);
      CHECK(r > 0.1);
      CHECK(r < 10.0);
    }
  }
  // 2-D: upper limit 2^{-2 j0} = 1
  const Space sp2d(HermiteBasis(2, 8));
  SemigroupNormParams q2;
  q2.p = two;
  q2.q = two;
  const auto g00 = SpectralCoefficients::unit(sp2d.basis(), {0, 0});
  const double e2 = std::sqrt(oracle::integrate([](double t) { return 4.0 * t * std::exp(-4.0 * t); }, 0.0, 1.0));
  CHECK(semigroup_norm(sp2d, g00, q2).value == doctest::Approx(e2).epsilon(1e-6));
}

TEST_CASE("Duhamel solver") {
  const HermiteBasis b(1, 32);
  const auto u0 = oracle::random_coefficients(b, 2);
  const std::vector<double> t = max_reg_time_grid(2.0, 60);
  const Trajectory free = duhamel_solve(u0, {}, t);
  for (std::size_t k = 0; k < t.size(); k += 7)
    CHECK(oracle::max_abs_diff(free.u[k].values(), heat_apply(t[k], u0).values()) <= 1e-12 * u0.l2_norm());

  // constant forcing h_0 from rest
  const auto h0 = SpectralCoefficients::unit(b, {0, 0});
  std::vector<SpectralCoefficients> f(t.size(), h0);
  const Trajectory rest = duhamel_solve(SpectralCoefficients(b), f, t);
  for (std::size_t k = 0; k < t.size(); ++k) CHECK(std::abs(rest.u[k][0] - (-std::expm1(-t[k]))) < 1e-14);

  // manufactured u = e^{-t} h_3, f = 6 e^{-t} h_3
  const auto h3 = SpectralCoefficients::unit(b, {3, 0});
  std::vector<double> tm(10001);
  for (std::size_t k = 0; k < tm.size(); ++k) tm[k] = k * 1e-4;
  std::vector<SpectralCoefficients> fm;
  for (double tk : tm) fm.push_back(complex(6.0 * std::exp(-tk)) * h3);
  const Trajectory man = duhamel_solve(h3, fm, tm);
  double err = 0.0;
  for (std::size_t k = 0; k < tm.size(); ++k) err = std::max(err, std::abs(man.u[k][3] - std::exp(-tm[k])));
  CHECK(err < 1e-8);
  // linear-in-time manufactured pair is reproduced exactly: u = (1 + t) h_3, f = (1 + 7(1 + t)) h_3
  std::vector<double> tl = {0.0, 0.3, 0.7, 1.5, 4.0};
  std::vector<SpectralCoefficients> fl;
  for (double tk : tl) fl.push_back(complex(1.0 + 7.0 * (1.0 + tk)) * h3);
  const Trajectory lin = duhamel_solve(h3, fl, tl);
  for (std::size_t k = 0; k < tl.size(); ++k) CHECK(std::abs(lin.u[k][3] - (1.0 + tl[k])) < 1e-13);

  CHECK(duhamel_residual(man) < 1e-12);
  CHECK(duhamel_residual(free) < 1e-12);
  const auto fr = oracle::random_coefficients(b, 3);
  std::vector<SpectralCoefficients> fs;
  for (std::size_t k = 0; k < t.size(); ++k) fs.push_back(complex(std::cos(t[k])) * fr);
  const Trajectory forced = duhamel_solve(u0, fs, t);
  CHECK(duhamel_residual(forced) < 1e-12);
  // ∂_t u is f - Hu at samples
  const auto d = forced.derivative(5);
  CHECK(std::abs(d[4] - (fs[5][4] - 9.0 * forced.u[5][4])) < 1e-14);

  const std::vector<double> bad = {0.0, 1.0, 0.5};
  CHECK_THROWS_AS(duhamel_solve(u0, {}, bad), ParameterError);
  CHECK_THROWS_AS(duhamel_solve(u0, std::span(fs).first(3), t), ParameterError);
}

TEST_CASE("maximal regularity ratio") {
  const Space sp(HermiteBasis(1, 32));
  const auto h0 = SpectralCoefficients::unit(sp.basis(), {0, 0});
  const std::vector<double> t = max_reg_time_grid(10.0, 400);
  const Trajectory tr = duhamel_solve(h0, {}, t);
  // u = e^{-t} h_0: both time norms are (∫_0^10 e^{-2t})^{1/2}, ∥h_0∥_{B^1} = 1
  const MaxRegResult r = max_reg_ratio(sp, tr, 0.0, two, two);
  CHECK(r.ratio == doctest::Approx(2.0 * std::sqrt(-std::expm1(-20.0) / 2.0)).epsilon(1e-3));
  CHECK(r.tail_bound < 1e-4);
  const MaxRegResult ri = max_reg_ratio(sp, tr, 0.0, two, inf);
  CHECK(ri.ratio == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(max_reg_ratio(sp, duhamel_solve(SpectralCoefficients(sp.basis()), {}, t), 0.0, two, two).zero_input);
  for (Exponent q : {one, two, inf}) {
    const Trajectory rnd = duhamel_solve(oracle::random_coefficients(sp.basis(), 6, 16), {}, t);
    const double v = max_reg_ratio(sp, rnd, 0.0, two, q).ratio;
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
}

}  // TEST_SUITE
