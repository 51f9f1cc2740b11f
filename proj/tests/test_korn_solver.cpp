#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kornshell/ansatz.hpp"
#include "kornshell/korn_solver.hpp"
#include "oracles.hpp"

using namespace kornshell;

namespace {

const double kPi = std::acos(-1.0);

double dense_second(const SurfacePatch& p, double h, const GridPolicy& pol) {
  const auto f = assemble_forms(p, pol.grid_for(p, h));
  const auto D = QuadraticForm::combine("M+E", {{1.0, f.M}, {1.0, f.E}});
  return h * oracle::dense_max_eig(oracle::dense(f.G), oracle::dense(D));
}

}  // namespace

TEST_CASE("fit_scaling fixtures") {
  const std::vector<double> h{0.2, 0.1, 0.05, 0.025};
  auto fit = fit_scaling(h, h);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual <= 1e-12);
  CHECK(fit_scaling(h, {7, 7, 7, 7}).slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::vector<double> c;
  for (double x : h) c.push_back((1 + noise(rng)) / x);
  CHECK(std::abs(fit_scaling(h, c).slope + 1.0) <= 0.02);

  CHECK_THROWS_AS(fit_scaling({0.1, 0.2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(fit_scaling({0.1, 0.1, 0.2}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(fit_scaling({0.1, 0.2, 0.3}, {1, 0, 3}), std::invalid_argument);
}

TEST_CASE("second constant matches the dense oracle") {
  const GridPolicy tiny{4, 6, 6};
  const auto cyl = make_cylinder(1, kPi, 1);
  const auto r = korn_second_constant(cyl, 0.1, tiny);
  CHECK(r.eig.converged);
  CHECK(r.constant == doctest::Approx(dense_second(cyl, 0.1, tiny)).epsilon(1e-6));
  CHECK(r.constant == doctest::Approx(0.1 * r.lambda));
}

TEST_CASE("plate second constant is order one") {
  const GridPolicy pol{4, 8, 8};
  const auto plate = make_plate(1, 1);
  const double a = korn_second_constant(plate, 0.1, pol).constant;
  const double b = korn_second_constant(plate, 0.05, pol).constant;
  CHECK(a / b <= 2.0);
  CHECK(b / a <= 2.0);
}

TEST_CASE("second constant beats the Ansatz candidate") {
  const auto cyl = make_cylinder(1, kPi, 1);
  const double h = 0.1;
  const auto w = default_profile(0, 1);
  const GridPolicy pol{4, min_theta_nodes(kPi, w.period, h), 8};
  const auto r = korn_second_constant(cyl, h, pol);
  const double cand = second_quotient(make_ansatz(w, cyl, r.grid), cyl);
  CHECK(r.constant >= cand);
}

TEST_CASE("refinement does not lose the supremum") {
  const auto cyl = make_cylinder(1, kPi, 1);
  const double coarse = korn_second_constant(cyl, 0.1, GridPolicy{3, 6, 6}).constant;
  const double fine = korn_second_constant(cyl, 0.1, GridPolicy{5, 11, 11}).constant;
  CHECK(fine >= 0.98 * coarse);
}

TEST_CASE("AM-GM envelope") {
  const auto cyl = make_cylinder(1, kPi, 1);
  const auto g = ShellGrid::over(cyl, 0.1, 4, 7, 7);
  const auto f = assemble_forms(cyl, g);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = oracle::random_smooth_field(g, rng).dofs();
    const double d = interp_denominator(f, x);
    for (double s : {1e-3, 0.1, 1.0, 10.0, 1e3}) CHECK(amgm_denominator(f, x, s) >= d * (1 - 1e-14));
    const double s_star = std::sqrt(f.E.energy(x) / f.Nt.energy(x));
    CHECK(amgm_denominator(f, x, s_star) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("interpolation constant: self-consistency and ascent oracle") {
  const auto cyl = make_cylinder(1, kPi, 1);
  const double h = 0.1;
  const GridPolicy tiny{4, 6, 6};
  const auto r = korn_interp_constant(cyl, h, tiny);
  REQUIRE(r.constant > 0.0);
  CHECK(r.scan_log_s.size() == 9);

  const auto u = VecField3::from_dofs(r.grid, r.eig.x);
  const double q = interp_quotient(u, cyl);
  CHECK(std::abs(q / r.constant - 1.0) <= 0.05);
  CHECK(q <= r.constant * (1 + 1e-6));

  const auto f = assemble_forms(cyl, r.grid);
  const oracle::InterpDense dense{oracle::dense(f.G), oracle::dense(f.M), oracle::dense(f.E),
                                  oracle::dense(f.Nt), h};
  const double asc = oracle::ascent_interp_max(dense, 4, 100, 11);
  CHECK(std::abs(asc / r.constant - 1.0) <= 0.02);

  const auto w = default_profile(0, 1);
  const auto ga = ShellGrid::over(cyl, h, 4, min_theta_nodes(kPi, w.period, h), 6);
  const auto ra = korn_interp_constant(cyl, h, GridPolicy{4, ga.n_theta(), 6});
  CHECK(ra.constant >= interp_quotient(make_ansatz(w, cyl, ra.grid), cyl));
}
