#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kornshell/korn_solver.hpp"
#include "kornshell/rect_harmonic.hpp"

using namespace kornshell;
using namespace kornshell::rect;

namespace {

const double kPi = std::acos(-1.0);

double max_abs_diff(const ScalarField2D& a, const Fn2& f) {
  double m = 0;
  for (int j = 0; j < a.grid.ny(); ++j)
    for (int i = 0; i < a.grid.nx(); ++i)
      m = std::max(m, std::abs(a.v[a.grid.index(i, j)] - f(a.grid.x(i), a.grid.y(j))));
  return m;
}

}  // namespace

TEST_CASE("harmonic family samples") {
  const Grid2D g(Rect{0.5, 2.0}, 9, 17);
  const auto q = harmonic_family({"re_poly", 2}, g);
  CHECK(discrete_laplacian_residual(q.w) <= 1e-12);
  CHECK(q.w.v[g.index(3, 5)] == doctest::Approx(g.x(3) * g.x(3) - g.y(5) * g.y(5)));
  CHECK(q.wy.v[g.index(3, 5)] == doctest::Approx(-2 * g.y(5)));

  const auto im = harmonic_family({"im_poly", 3}, g);
  // Im (x + iy)^3 = 3x^2 y - y^3
  const double x = g.x(4), y = g.y(7);
  CHECK(im.w.v[g.index(4, 7)] == doctest::Approx(3 * x * x * y - y * y * y));
  CHECK(im.wx.v[g.index(4, 7)] == doctest::Approx(6 * x * y));
  CHECK(im.wy.v[g.index(4, 7)] == doctest::Approx(3 * x * x - 3 * y * y));

  const auto c = harmonic_family({"re_poly", 0}, g);
  CHECK(l2_norm(c.wy) == 0.0);

  CHECK_THROWS_AS(harmonic_family({"bessel", 1}, g), std::invalid_argument);
  CHECK_THROWS_AS(harmonic_family({"re_poly", 7}, g), std::invalid_argument);
}

TEST_CASE("exponential members: truncation of the discrete Laplacian") {
  // |Lap_h w| <= (dx^2 + dy^2) k^4 max|w| / 12 to leading order
  const double k = 2.0;
  for (int n : {17, 33}) {
    const Grid2D g(Rect{1.0, 1.0}, n, n);
    const auto s = harmonic_family({"exp_cos", k}, g);
    const double d = g.dx();
    const double bound = 1.1 * 2 * d * d * std::pow(k, 4) * std::exp(k) / 12.0;
    const double lap = discrete_laplacian_residual(s.w);   // L2 over the unit square
    CHECK(lap <= bound);
  }
}

TEST_CASE("Dirichlet solver") {
  const Grid2D g(Rect{1.0, 1.5}, 13, 17);
  auto quad = [](double x, double y) { return x * x - y * y; };
  CHECK(max_abs_diff(solve_dirichlet_harmonic(quad, g), quad) <= 1e-10);
  auto c = [](double, double) { return 2.5; };
  CHECK(max_abs_diff(solve_dirichlet_harmonic(c, g), c) <= 1e-12);

  auto ex = [](double x, double y) { return std::exp(y) * std::cos(x); };
  auto err = [&](int n) {
    return max_abs_diff(solve_dirichlet_harmonic(ex, Grid2D(Rect{1, 1}, n, n)), ex);
  };
  const double e1 = err(17), e2 = err(33), e3 = err(65);
  CHECK(std::log2(e1 / e2) >= 1.8);
  CHECK(std::log2(e2 / e3) >= 1.8);

  CHECK_THROWS_AS(solve_dirichlet_harmonic(ex, Grid2D(Rect{1, 1}, 33, 33), 1e-14, 2), std::runtime_error);
}

TEST_CASE("Dirichlet solver is linear") {
  const Grid2D g(Rect{0.3, 1.2}, 9, 25);
  auto g1 = [](double x, double y) { return std::sin(3 * x + y); };
  auto g2 = [](double x, double y) { return x * y * y + 1; };
  const auto a = solve_dirichlet_harmonic(g1, g), b = solve_dirichlet_harmonic(g2, g);
  const auto s = solve_dirichlet_harmonic([&](double x, double y) { return g1(x, y) + g2(x, y); }, g);
  for (std::size_t i = 0; i < s.v.size(); ++i) CHECK(std::abs(s.v[i] - a.v[i] - b.v[i]) <= 1e-10);
}

TEST_CASE("near-harmonic gate") {
  const Grid2D g(Rect{0.25, 1.0}, 9, 33);
  const auto bump = from_grid(sample([](double x, double y) { return x * x + y * y; }, g));
  CHECK_THROWS_AS(require_near_harmonic(bump), std::domain_error);
  CHECK_THROWS_AS(lemma31_ratio(bump), std::domain_error);
  const auto solved = from_grid(solve_dirichlet_harmonic([](double x, double y) { return x * x + y * y; }, g));
  CHECK_NOTHROW(require_near_harmonic(solved));
}

TEST_CASE("thin-rectangle gradient ratio") {
  const Grid2D g(Rect{0.25, 1.0}, 33, 129);
  CHECK(lemma31_ratio(harmonic_family({"re_poly", 1}, g)) == 0.0);
  // w = y: ||w_y||^2 = hb, ||w||^2 = h b^3 / 3 (trapezoid slightly above)
  const double r = lemma31_ratio(harmonic_family({"im_poly", 1}, g));
  CHECK(r <= 3.0);
  CHECK(r == doctest::Approx(3.0).epsilon(1e-3));
  const auto s = harmonic_family({"exp_sin", 2}, g);
  auto s3 = s;
  for (auto* f : {&s3.w, &s3.wx, &s3.wy})
    for (double& v : f->v) v *= -3.0;
  CHECK(lemma31_ratio(s3) == doctest::Approx(lemma31_ratio(s)).epsilon(1e-14));
  CHECK(lemma31_ratio(harmonic_family({"re_poly", 0}, g)) == 0.0);

  const Grid2D fat(Rect{0.5, 1.0}, 9, 9);
  CHECK_THROWS_AS(lemma31_ratio(harmonic_family({"im_poly", 1}, fat)), std::invalid_argument);
  auto zero = harmonic_family({"re_poly", 1}, g);
  for (auto* f : {&zero.w, &zero.wx, &zero.wy})
    for (double& v : f->v) v = 0;
  CHECK_THROWS_AS(lemma31_ratio(zero), std::domain_error);
}

TEST_CASE("Step-1 ratio") {
  const Grid2D g(Rect{0.25, 1.0}, 65, 65);
  CHECK(step1_ratio(harmonic_family({"im_poly", 1}, g)) == 0.0);
  // w = xy = Im (x + iy)^2 / 2: ratio h^2 / 2 up to trapezoid error
  const double r = step1_ratio(harmonic_family({"im_poly", 2}, g));
  CHECK(r == doctest::Approx(0.25 * 0.25 / 2).epsilon(1e-3));
  CHECK_THROWS_AS(step1_ratio(harmonic_family({"im_poly", 1}, Grid2D(Rect{0.25, 2.0}, 9, 9))),
                  std::invalid_argument);
}

TEST_CASE("gradient and step-1 ratios are uniform in h") {
  std::vector<double> hs, max31, maxs;
  for (int d : {4, 8, 16, 32, 64}) {
    const Rect r{1.0 / d, 1.0};
    const auto g = default_grid(r);
    double m31 = 0, ms = 0;
    const auto fam = default_family(r);
    CHECK(fam.size() >= 8);
    for (const auto& spec : fam) {
      const auto s = harmonic_family(spec, g);
      const double a = lemma31_ratio(s), b = step1_ratio(s);
      CHECK(std::isfinite(a));
      CHECK(std::isfinite(b));
      m31 = std::max(m31, a);
      ms = std::max(ms, b);
    }
    hs.push_back(r.h);
    max31.push_back(m31);
    maxs.push_back(ms);
  }
  CHECK(fit_scaling(hs, max31).slope >= -0.1);
  CHECK(fit_scaling(hs, maxs).slope >= -0.1);
}

TEST_CASE("one-dimensional Hardy-type inequality") {
  auto one = lemma32_check([](double) { return 1.0; }, 0.7, 64);
  CHECK(one.lhs == doctest::Approx(0.7));
  CHECK(one.rhs == doctest::Approx(2.8));
  auto lin = lemma32_check([](double t) { return t; }, 1.0, 64);
  CHECK(lin.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(lin.rhs == doctest::Approx(20.0).epsilon(1e-12));
  const double a = 1.5;
  auto dec = lemma32_check([a](double t) { return 1 - t / (2 * a); }, a, 256);
  // int_0^a (1 - t/2a)^2 = 7a/12, tail 4 * a/12, Hardy term 4 * (2a)^3 / 3 / (2a)^2
  CHECK(dec.lhs == doctest::Approx(7 * a / 12).epsilon(1e-4));
  CHECK(dec.rhs == doctest::Approx(4 * a / 12 + 4 * 2 * a / 3).epsilon(1e-4));
  CHECK(dec.lhs <= dec.rhs);

  CHECK_THROWS_AS(lemma32_check([](double t) { return std::sin(40 * t); }, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(lemma32_check(std::vector<double>{1, 2, 3}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lemma32_check([](double) { return 1.0; }, 1.0, 10), std::invalid_argument);
}

TEST_CASE("boundary-distance weighted gradient") {
  const Grid2D sq(Rect{1, 1}, 65, 65);
  const double r = lemma33_ratio(harmonic_family({"re_poly", 1}, sq));
  CHECK(r <= 0.5);
  CHECK(r > 0.0);
  CHECK_THROWS_AS(lemma33_ratio(harmonic_family({"re_poly", 0}, sq)), std::domain_error);
  CHECK(max_boundary_distance(Rect{0.2, 3}) == doctest::Approx(0.1));

  for (double aspect : {1.0, 4.0, 16.0}) {
    const Rect rc{1.0, aspect};
    const Grid2D g(rc, 33, static_cast<int>(32 * aspect) + 1);
    for (const auto& spec : default_family(Rect{rc.h, rc.b})) {
      const double v = lemma33_ratio(harmonic_family(spec, g));
      CHECK(v <= 2.2);
      CHECK(v <= max_boundary_distance(rc) + 1e-12);
    }
    const auto solved = from_grid(solve_dirichlet_harmonic(
        [](double x, double y) { return std::sin(3 * x + 1) * std::cos(2 * y) + x * y * y; }, g));
    CHECK(lemma33_ratio(solved) <= 2.2);
  }
}
