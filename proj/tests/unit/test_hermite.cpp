#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hbesov/errors.hpp"
#include "hbesov/hermite.hpp"
#include "oracles.hpp"

using namespace hbesov;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

double grid_l2_sq(const GridFunction& f) {
  const auto w = f.grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (f.re[i] * f.re[i] + f.im[i] * f.im[i]);
  return s;
}

}  // namespace

TEST_SUITE("hermite_core") {

TEST_CASE("gauss-hermite small rules") {
  const auto r1 = gauss_hermite_rule(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(kSqrtPi).epsilon(1e-15));

  const auto r2 = gauss_hermite_rule(2);
  REQUIRE(r2.size() == 2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(kSqrtPi / 2).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(kSqrtPi / 2).epsilon(1e-15));

  CHECK_THROWS_AS(gauss_hermite_rule(0), ParameterError);
}

TEST_CASE("gauss-hermite integrates x^4 e^{-x^2}") {
  const auto r = gauss_hermite_rule(20);
  double q = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], 4);
  const double ref = oracle::integrate_line([](double x) { return std::pow(x, 4) * std::exp(-x * x); });
  CHECK(std::abs(ref - 0.75 * kSqrtPi) < 1e-13);
  CHECK(std::abs(q - ref) / ref < 1e-12);
}

TEST_CASE("gauss-hermite exactness up to degree 2M-1") {
  for (int m : {3, 10, 20, 40}) {
    CAPTURE(m);
    const auto r = gauss_hermite_rule(m);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.weights[i] > 0.0);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      // ∫x^k e^{-x²} = Γ((k+1)/2) for even k, 0 for odd k; compare on the
      // scale of the integrand's magnitude ∫|x|^k e^{-x²}.
      const double scale = std::tgamma((k + 1) / 2.0);
      const double exact = k % 2 ? 0.0 : scale;
      double q = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], k);
      CAPTURE(k);
      CHECK(std::abs(q - exact) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("trapezoid rule") {
  const auto r = trapezoid_rule(1.0, 0.25);
  REQUIRE(r.size() == 9);
  CHECK(r.nodes.front() == -1.0);
  CHECK(r.nodes.back() == 1.0);
  CHECK(r.weights.front() == 0.125);
  CHECK(r.weights[4] == 0.25);
  CHECK_THROWS(trapezoid_rule(1.0, 0.0));
}

TEST_CASE("eval_hermite point values") {
  CHECK(eval_hermite(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  CHECK(eval_hermite(0, 0.0) == doctest::Approx(0.75112554).epsilon(1e-8));
  CHECK(eval_hermite(1, 0.0) == 0.0);
  const double ref = oracle::hermite_function(50, 10.0);
  CHECK(std::isfinite(ref));
  CHECK(std::abs(eval_hermite(50, 10.0) - ref) <= 1e-10 * std::abs(ref));
  for (int n : {7, 33, 120, 255}) {
    for (double x : {-3.2, 0.4, 5.5, 14.0, 25.0}) {
      CAPTURE(n);
      CAPTURE(x);
      const double o = oracle::hermite_function(n, x);
      CHECK(std::abs(eval_hermite(n, x) - o) <= 1e-10 * std::max(std::abs(o), 1e-300));
    }
  }
}

TEST_CASE("eval_hermite large degree stays finite") {
  for (double x : {0.0, 1.0, 30.0, 63.0, 70.0, 90.0}) {
    CAPTURE(x);
    const double v = eval_hermite(2000, x);
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) < 1.0);
  }
  // Far tail is tiny but representable.
  const double tail = eval_hermite(2000, 70.0);
  CHECK(tail != 0.0);
  const double o = oracle::hermite_function(2000, 70.0);
  CHECK(std::abs(tail - o) <= 1e-9 * std::abs(o));
  // Odd/even symmetry.
  CHECK(eval_hermite(2001, -3.0) == doctest::Approx(-eval_hermite(2001, 3.0)).epsilon(1e-14));
}

TEST_CASE("hermite_table matches point evaluation") {
  const std::vector<double> x{-12.0, -1.5, 0.0, 0.25, 7.0, 40.0};
  const int n = 300;
  std::vector<double> table(std::size_t(n + 1) * x.size());
  hermite_table(n, x, table);
  for (int k : {0, 1, 2, 150, 300})
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = eval_hermite(k, x[i]);
      CHECK(std::abs(table[std::size_t(k) * x.size() + i] - v) <= 1e-13 * std::max(std::abs(v), 1e-300));
    }
}

TEST_CASE("orthonormality under gauss-hermite quadrature") {
  const int n = 40;
  const HermiteBasis basis(1, n);
  const HermiteTransform tr(basis, gauss_hermite_rule(n + 1));
  for (int m = 0; m <= n; ++m) {
    std::vector<double> re(tr.node_count()), im;
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = eval_hermite(m, tr.axis_rule().nodes[i]);
    const auto c = tr.analyze(re, im, n);
    for (int k = 0; k <= n; ++k) CHECK(std::abs(c[std::size_t(k)] - (k == m ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("basis indexing") {
  const HermiteBasis b(2, 4);
  CHECK(b.size() == 25);
  CHECK(b.flat_index({2, 3}) == 13);
  CHECK(b.multi_index(13) == std::array<int, 2>{2, 3});
  CHECK(b.total_degree(13) == 5);
  CHECK(b.eigenvalue(5) == 12.0);
  CHECK_THROWS_AS(HermiteBasis(3, 4), ParameterError);
  CHECK_THROWS_AS(HermiteBasis(1, -1), ParameterError);
  CHECK_THROWS(b.flat_index({5, 0}));
}

TEST_CASE("analyze known functions") {
  const HermiteBasis basis(1, 32);
  const Grid grid = Grid::for_basis(basis);
  SUBCASE("h_3 gives a unit vector") {
    GridFunction f(grid);
    for (std::size_t i = 0; i < f.re.size(); ++i) f.re[i] = eval_hermite(3, grid.axis().nodes[i]);
    const auto c = analyze(f, basis);
    for (int k = 0; k <= 32; ++k) CHECK(std::abs(c[std::size_t(k)] - (k == 3 ? 1.0 : 0.0)) < 1e-10);
  }
  SUBCASE("linear combination") {
    const auto c = analyze(
        [](std::span<const double> x) {
          return complex((eval_hermite(0, x[0]) + eval_hermite(1, x[0])) / std::sqrt(2.0));
        },
        basis);
    CHECK(std::abs(c[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(c[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
    for (int k = 2; k <= 32; ++k) CHECK(std::abs(c[std::size_t(k)]) < 1e-12);
  }
  SUBCASE("e^{-x^2} against adaptive quadrature") {
    GridFunction f(grid);
    for (std::size_t i = 0; i < f.re.size(); ++i) {
      const double x = grid.axis().nodes[i];
      f.re[i] = std::exp(-x * x);
    }
    const auto c = analyze(f, basis);
    const auto cq = analyze([](std::span<const double> x) { return complex(std::exp(-x[0] * x[0])); }, basis);
    for (int n : {0, 1, 2, 4, 10, 20, 31}) {
      const double ref = oracle::integrate_line([n](double x) { return std::exp(-x * x) * oracle::hermite_function(n, x); });
      CAPTURE(n);
      CHECK(std::abs(c[std::size_t(n)].real() - ref) < 1e-8);
      CHECK(std::abs(cq[std::size_t(n)].real() - ref) < 1e-8);
    }
  }
}

TEST_CASE("analyze preconditions") {
  const HermiteBasis basis(1, 64);
  const auto narrow = Grid(1, 9.0, 1.0 / 16);  // below √129 + 4
  CHECK_THROWS_AS(HermiteTransform(basis, narrow), ParameterError);
  CHECK_THROWS_AS(analyze([](std::span<const double>) { return complex(1.0); }, basis, 100), ParameterError);
  CHECK_NOTHROW(analyze([](std::span<const double>) { return complex(0.0); }, basis, 129));
}

TEST_CASE("synthesize simple inputs") {
  const HermiteBasis basis(1, 8);
  const Grid grid = Grid::for_basis(basis);
  const GridFunction g = synthesize(SpectralCoefficients::unit(basis, {0, 0}), grid);
  for (std::size_t i = 0; i < g.re.size(); i += 7) {
    const double x = grid.axis().nodes[i];
    CHECK(g.re[i] == doctest::Approx(std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2)).epsilon(1e-14));
    CHECK(g.im[i] == 0.0);
  }
  const GridFunction z = synthesize(SpectralCoefficients(basis), grid);
  for (std::size_t i = 0; i < z.re.size(); ++i) CHECK((z.re[i] == 0.0 && z.im[i] == 0.0));
}

TEST_CASE("round trip, seed 42, N = 64") {
  const HermiteBasis basis(1, 64);
  const auto c = oracle::random_coefficients(basis, 42);
  const auto back = analyze(synthesize(c, Grid::for_basis(basis)), basis);
  CHECK(oracle::max_abs_diff(c.values(), back.values()) < 1e-10);
}

TEST_CASE("two-dimensional transforms") {
  const HermiteBasis basis(2, 24);
  const Grid grid = Grid::for_basis(basis);
  const auto c = oracle::random_coefficients(basis, 17);
  const GridFunction f = synthesize(c, grid);
  CHECK(oracle::max_abs_diff(c.values(), analyze(f, basis).values()) < 1e-10);
  CHECK(std::abs(grid_l2_sq(f) - std::pow(c.l2_norm(), 2)) < 1e-9);

  // Separable member: h_2(x) h_5(y).
  const auto h25 = SpectralCoefficients::unit(basis, {2, 5});
  const GridFunction g = synthesize(h25, grid);
  const auto& x = grid.axis().nodes;
  const std::size_t p = x.size();
  for (std::size_t i = 0; i < p; i += 37)
    for (std::size_t k = 0; k < p; k += 41)
      CHECK(std::abs(g.re[i * p + k] - eval_hermite(2, x[i]) * eval_hermite(5, x[k])) < 1e-14);
  CHECK(eval_hermite({2, 5}, grid)[3 * p + 11] == doctest::Approx(g.re[3 * p + 11]).epsilon(1e-13));
}

TEST_CASE("ladder identities") {
  const HermiteBasis basis(1, 8);
  const auto h0 = SpectralCoefficients::unit(basis, {0, 0});
  const auto xh0 = apply_position(0, h0);
  CHECK(xh0[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(xh0[0]) == 0.0);

  const auto dh1 = apply_derivative(0, SpectralCoefficients::unit(basis, {1, 0}));
  CHECK(dh1[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(dh1[2].real() == doctest::Approx(-1.0).epsilon(1e-15));

  const auto h5 = SpectralCoefficients::unit(basis, {5, 0});
  const auto hh5 = apply_oscillator(h5);
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(hh5[std::size_t(k)] - (k == 5 ? 11.0 : 0.0)) < 1e-13);

  const int none[1] = {0};
  const auto id = apply_poly_diff(none, none, h5);
  CHECK(oracle::max_abs_diff(id.values(), h5.values()) == 0.0);

  const int one[1] = {1};
  const auto xd = apply_poly_diff(one, one, h0);
  CHECK(xd[0].real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(xd[2].real() == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-15));
}

TEST_CASE("lossy flag on truncation") {
  const HermiteBasis basis(1, 6);
  CHECK_FALSE(apply_position(0, SpectralCoefficients::unit(basis, {5, 0})).lossy());
  CHECK(apply_position(0, SpectralCoefficients::unit(basis, {6, 0})).lossy());
  CHECK(apply_derivative(0, SpectralCoefficients::unit(basis, {6, 0})).lossy());
  const auto wide = SpectralCoefficients::unit(basis, {6, 0}).resized(8);
  CHECK_FALSE(apply_position(0, wide).lossy());
  CHECK(wide.resized(5).lossy());
  CHECK_FALSE(SpectralCoefficients::unit(basis, {2, 0}).resized(3).lossy());
}

TEST_CASE("eigenrelation through ladder operators, N = 256") {
  for (int dim : {1, 2}) {
    const int n = dim == 1 ? 256 : 40;
    const HermiteBasis basis(dim, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto mi = basis.multi_index(i);
      if (mi[0] > n - 2 || mi[1] > n - 2) continue;
      const auto e = SpectralCoefficients::unit(basis, mi);
      auto r = apply_oscillator(e);
      r -= complex(basis.eigenvalue(basis.total_degree(i))) * e;
      worst = std::max(worst, r.l2_norm() / basis.eigenvalue(basis.total_degree(i)));
    }
    CAPTURE(dim);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("parseval and round trip on the default grid, N = 256") {
  const HermiteBasis basis(1, 256);
  const Grid grid = Grid::for_basis(basis);
  CHECK(grid.half_width() >= Grid::min_half_width(basis));
  const HermiteTransform tr(basis, grid);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto c = oracle::random_coefficients(basis, seed);
    const GridFunction f = tr.synthesize(c);
    const double exact = std::pow(c.l2_norm(), 2);
    CHECK(std::abs(grid_l2_sq(f) - exact) <= 1e-9 * exact);
    CHECK(oracle::max_abs_diff(c.values(), tr.analyze(f).values()) < 1e-10);
  }
  // Each eigenfunction individually.
  double worst = 0.0;
  for (int k = 0; k <= 256; ++k) {
    const GridFunction f = tr.synthesize(SpectralCoefficients::unit(basis, {k, 0}));
    worst = std::max(worst, std::abs(grid_l2_sq(f) - 1.0));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("ladder actions agree with grid differentiation") {
  const HermiteBasis basis(1, 40);
  const HermiteBasis wide(1, 42);
  const Grid grid(1, Grid::min_half_width(wide) + 2.0, 1.0 / 64);
  const auto& x = grid.axis().nodes;
  for (std::uint64_t seed : {4u, 5u}) {
    const auto c = oracle::random_coefficients(basis, seed, 24).resized(42);
    const GridFunction f = synthesize(c, grid);
    const auto dre = oracle::derivative8(f.re, grid.spacing());
    const auto dim = oracle::derivative8(f.im, grid.spacing());

    const GridFunction d = synthesize(apply_derivative(0, c), grid);
    const GridFunction xf = synthesize(apply_position(0, c), grid);
    const int one[1] = {1};
    const GridFunction xd = synthesize(apply_poly_diff(one, one, c), grid);
    double e_d = 0.0, e_x = 0.0, e_xd = 0.0;
    for (std::size_t i = 4; i + 4 < x.size(); ++i) {
      e_d = std::max(e_d, std::abs(complex(d.re[i], d.im[i]) - complex(dre[i], dim[i])));
      e_x = std::max(e_x, std::abs(complex(xf.re[i], xf.im[i]) - x[i] * f.value(i)));
      e_xd = std::max(e_xd, std::abs(complex(xd.re[i], xd.im[i]) - x[i] * complex(dre[i], dim[i])));
    }
    CHECK(e_d < 1e-8);
    CHECK(e_x < 1e-12);
    CHECK(e_xd < 1e-8);
  }
}

TEST_CASE("x d/dx is dominated by H on eigenfunctions") {
  const HermiteBasis basis(1, 66);
  const int one[1] = {1};
  double worst = 0.0;
  for (int n = 0; n <= 64; ++n) {
    const auto e = SpectralCoefficients::unit(basis, {n, 0});
    const auto xd = apply_poly_diff(one, one, e);
    CHECK_FALSE(xd.lossy());
    worst = std::max(worst, xd.l2_norm() / (2.0 * n + 1.0));
  }
  MESSAGE("max ||x d h_n|| / ||H h_n||, n <= 64: " << worst);
  CHECK(worst <= 2.0);
}

TEST_CASE("coefficient arithmetic") {
  const HermiteBasis basis(1, 4);
  auto a = SpectralCoefficients::unit(basis, {1, 0});
  auto b = SpectralCoefficients::unit(basis, {2, 0});
  CHECK(std::abs(inner(a, b)) == 0.0);
  CHECK((a + b).l2_norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK((complex(0, 2) * a)[1] == complex(0, 2));
  CHECK_THROWS(a += SpectralCoefficients(HermiteBasis(1, 5)));
  b[4] = 1e-3;
  CHECK(b.tail_energy(1) == doctest::Approx(1e-6));
}

}
