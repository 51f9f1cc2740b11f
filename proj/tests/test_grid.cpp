#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "kornshell/field_io.hpp"
#include "kornshell/grid.hpp"

using namespace kornshell;

namespace {
const double kPi = std::acos(-1.0);

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("grid geometry") {
  const ShellGrid g(0.1, 5, 7, 9, 2.0, -1.0, 3.0);
  CHECK(g.t(0) == -0.05);
  CHECK(g.t(4) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(g.theta(6) == doctest::Approx(2.0));
  CHECK(g.z(8) == doctest::Approx(3.0));
  CHECK(g.index(1, 2, 3) == 1 + 5 * (2 + 7 * 3));
  CHECK_THROWS_AS(ShellGrid(0.1, 2, 7, 9, 2.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ShellGrid(-0.1, 3, 7, 9, 2.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("diff examples") {
  const ShellGrid g(0.2, 5, 9, 6, kPi, 0.0, 1.0);
  const auto c = sample([](double, double, double) { return 5.0; }, g);
  const auto dc = diff(c, Axis::theta);
  for (std::size_t i = 0; i < dc.size(); ++i) CHECK(dc[i] == 0.0);

  const auto t = sample([](double t, double, double) { return t; }, g);
  const auto dt = diff(t, Axis::t);
  for (std::size_t i = 0; i < dt.size(); ++i) CHECK(dt[i] == doctest::Approx(1.0).epsilon(1e-13));

  const auto tth = sample([](double t, double th, double) { return t * th; }, g);
  const auto d = diff(tth, Axis::t);
  const auto th = sample([](double, double th, double) { return th; }, g);
  CHECK(max_abs_diff(d, th) <= 1e-12);

  const ShellGrid thin(0.2, 3, 3, 3, 1.0, 0.0, 1.0);
  CHECK_NOTHROW(diff(sample([](double, double, double) { return 1.0; }, thin), Axis::z));
}

TEST_CASE("diff converges at second order") {
  auto err = [](int n) {
    const ShellGrid g(0.1, 3, n, 3, 2.0, 0.0, 1.0);
    const auto f = sample([](double, double th, double) { return std::sin(th); }, g);
    const auto ex = sample([](double, double th, double) { return std::cos(th); }, g);
    return max_abs_diff(diff(f, Axis::theta), ex);
  };
  const double e1 = err(17), e2 = err(33), e3 = err(65);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("diff is exact on quadratics at interior nodes") {
  const ShellGrid g(0.4, 6, 5, 7, 1.3, 0.5, 2.0);
  const auto f = sample([](double t, double th, double z) { return 3 * z * z - th * z + t; }, g);
  const auto d = diff(f, Axis::z);
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j)
      for (int i = 0; i < g.n_t(); ++i)
        CHECK(d.at(i, j, k) == doctest::Approx(6 * g.z(k) - g.theta(j)).epsilon(1e-12));
}

TEST_CASE("inner product examples") {
  const auto plate = make_plate(1, 1);
  const auto gp = ShellGrid::over(plate, 0.1, 5, 6, 7);
  const ScalarField one(gp, 1.0);
  CHECK(inner_product(one, one, plate) == doctest::Approx(0.1).epsilon(1e-14));

  const auto cyl = make_cylinder(2, kPi, 1);
  const auto gc = ShellGrid::over(cyl, 0.1, 5, 9, 7);
  const ScalarField onec(gc, 1.0);
  CHECK(inner_product(onec, onec, cyl) == doctest::Approx(0.2 * kPi).epsilon(1e-14));

  const auto odd = sample([](double t, double th, double) { return t * std::cos(th); }, gc);
  const auto even = sample([](double t, double, double z) { return 1 + t * t + z; }, gc);
  CHECK(std::abs(inner_product(odd, even, cyl)) <= 1e-15);
  CHECK(inner_product(odd, even, cyl) == inner_product(even, odd, cyl));
}

TEST_CASE("norms") {
  const auto plate = make_plate(1, 1);
  const auto g = ShellGrid::over(plate, 0.1, 3, 5, 5);
  CHECK(norm(ScalarField(g), plate) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
  const double c = -2.5;
  CHECK(norm(c * f, plate) == doctest::Approx(std::abs(c) * norm(f, plate)).epsilon(1e-14));
  const double n = norm(f, plate);
  CHECK(n * n == doctest::Approx(inner_product(f, f, plate)).epsilon(1e-14));

  auto sin_norm2 = [&](int nz) {
    const auto gg = ShellGrid::over(plate, 0.1, 3, 3, nz);
    const auto s = sample([](double, double, double z) { return std::sin(kPi * z); }, gg);
    const double v = norm(s, plate);
    return v * v;
  };
  // trapezoid on a function vanishing at both ends with an integer number of
  // half-periods is exact up to rounding
  CHECK(sin_norm2(33) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("quadrature converges at second order") {
  const auto cyl = make_cylinder(1, kPi, 1);
  auto err = [&](int n) {
    const auto g = ShellGrid::over(cyl, 0.2, n, n, n);
    const auto f = sample([](double t, double th, double z) { return std::exp(t) * std::sin(th) * (1 + z * z); }, g);
    const ScalarField one(g, 1.0);
    // exact: int e^t dt * int sin = 2 * int (1 + z^2) = 4/3
    const double ex = (std::exp(0.1) - std::exp(-0.1)) * 2.0 * (4.0 / 3.0);
    return std::abs(inner_product(f, one, cyl) - ex);
  };
  CHECK(std::log2(err(9) / err(17)) >= 1.8);
}

TEST_CASE("sample round-trips node values") {
  const ShellGrid g(0.3, 4, 5, 6, 1.0, 0.0, 2.0);
  auto fn = [](double t, double th, double z) { return std::sin(3 * t + th) * std::exp(z); };
  const auto f = sample(fn, g);
  CHECK(f.at(2, 3, 4) == fn(g.t(2), g.theta(3), g.z(4)));
  const auto c = sample([](double, double, double) { return 2.0; }, g);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == 2.0);
}

TEST_CASE("dof layout") {
  const ShellGrid g(0.3, 3, 4, 5, 1.0, 0.0, 2.0);
  VecField3 u(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    u.t[i] = i;
    u.theta[i] = 1000 + i;
    u.z[i] = 2000 + i;
  }
  const auto x = u.dofs();
  CHECK(x[g.size()] == 1000);
  CHECK(x[2 * g.size() + 5] == 2005);
  const auto v = VecField3::from_dofs(g, x);
  CHECK(v.z[7] == 2007);
}

TEST_CASE("blob round trip") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const ShellGrid g(0.05 + 0.1 * trial, 3 + trial, 4, 5 + trial, 1.5, -0.5, 0.75);
    VecField3 f(g);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) f[c][i] = u(rng);
    std::stringstream ss;
    write_blob(ss, f, "cylinder");
    const auto b = read_blob(ss);
    CHECK(b.grid == g);
    CHECK(b.patch_name == "cylinder");
    const auto back = to_vec_field(b);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(back[c][i] == f[c][i]);
    CHECK_THROWS(to_scalar_field(b));
  }
}

TEST_CASE("malformed blobs are rejected") {
  std::stringstream bad("NOPE");
  CHECK_THROWS(read_blob(bad));
  const ShellGrid g(0.1, 3, 3, 3, 1, 0, 1);
  std::stringstream ss;
  write_blob(ss, ScalarField(g, 1.0), "plate");
  std::string s = ss.str();
  s.resize(s.size() - 8);
  std::stringstream cut(s);
  CHECK_THROWS(read_blob(cut));
}

TEST_CASE("csv has one row per node") {
  const ShellGrid g(0.1, 3, 3, 4, 1, 0, 1);
  const ScalarField f(g, 0.5);
  std::stringstream ss;
  write_csv(ss, g, {"f"}, {f.values()});
  std::string line;
  std::getline(ss, line);
  CHECK(line == "i_t,i_theta,i_z,t,theta,z,f");
  int rows = 0;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 36);
}
