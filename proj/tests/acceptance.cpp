// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kornshell/ansatz.hpp"
#include "kornshell/korn_solver.hpp"
#include "kornshell/lemma_suite.hpp"
#include "kornshell/report.hpp"
#include "kornshell/shell_ops.hpp"
#include "oracles.hpp"

using namespace kornshell;

namespace {

const double kPi = std::acos(-1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<SurfacePatch> builtins() {
  return {make_plate(1.0, 1.0), make_cylinder(1.0, kPi, 1.0),
          make_sphere_band(1.0, kPi / 3, 2 * kPi / 3, kPi),
          make_torus_patch(3.0, 1.0, kPi / 2, -1.0, 1.0)};
}

Outcome rigid_motions() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  double plate_worst = 0, min_order = 1e300;
  for (const auto& p : builtins())
    for (int trial = 0; trial < 5; ++trial) {
      const Vec3 a{u(rng), u(rng), u(rng)};
      const double x = u(rng), y = u(rng), z = u(rng);
      const Mat3 B{{{0, x, y}, {-x, 0, z}, {-y, -z, 0}}};
      const auto st = rigid_refinement(p, a, B, 0.1);
      if (p.name() == "plate") {
        for (const auto& l : st.levels) plate_worst = std::max(plate_worst, l.residual);
      } else {
        min_order = std::min(min_order, st.min_order());
      }
    }
  return {plate_worst <= 1e-12 && min_order >= 1.8,
          fmt("plate max residual %.2e, curved min order %.3f", plate_worst, min_order)};
}

Outcome plate_fd() {
  const auto plate = make_plate(1.3, 0.8);
  const auto g = ShellGrid::over(plate, 0.2, 5, 7, 6);
  std::mt19937_64 rng(42);
  const VecField3 u = oracle::random_smooth_field(g, rng);
  const FrameMatrixField m = gradient(u, plate);
  const Axis axes[3] = {Axis::t, Axis::theta, Axis::z};
  std::size_t mismatches = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const ScalarField d = diff(u[i], axes[j]);
      for (std::size_t q = 0; q < d.size(); ++q) mismatches += m(i, j)[q] != d[q];
    }
  return {mismatches == 0, fmt("%zu entries differ", mismatches)};
}

Outcome ansatz_exponents() {
  const auto cyl = make_cylinder(1, kPi, 1);
  const auto rep = ansatz_sweep(cyl, default_profile(0, 1), {0.1, 0.05, 0.02, 0.01, 0.005});
  bool pass = true;
  std::ostringstream os;
  for (const char* s : {"interp", "second"}) {
    const auto v = rep.values(s);
    const double slope = rep.fits.at(s).slope;
    const double spread = *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
    pass = pass && std::abs(slope) <= 0.15 && spread <= 5.0;
    os << s << fmt(" slope %.4f max/min %.3f; ", slope, spread);
  }
  return {pass, os.str()};
}

Outcome closeness() {
  std::mt19937_64 rng(42);
  double worst_f = 0, worst_e = 0;
  const double h = 0.1;
  for (const auto& p : builtins()) {
    const auto g = ShellGrid::over(p, h, 5, 9, 9);
    const auto w = quadrature_weights(g, p);
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = oracle::random_smooth_field(g, rng);
      const auto G = gradient(u, p), F = simplified_gradient(u, p);
      worst_f = std::max(worst_f, norm(F - G, w) / (h * norm(F, w)));
      worst_e = std::max(worst_e, norm(strain(F) - strain(G), w) / (h * norm(G, w)));
    }
  }
  return {worst_f <= 1.05 && worst_e <= 1.05,
          fmt("max ||F-grad||/(h||F||) %.4f, max ||e(F)-e(grad)||/(h||grad||) %.4f", worst_f, worst_e)};
}

const std::vector<double> kSecondHs{0.2, 0.1, 0.05, 0.025};

SweepReport second_sweep() {
  return sweep_constant(make_cylinder(1, kPi, 1), kSecondHs, GridPolicy{8, 48, 48}, SolverSettings{},
                        "second");
}

SweepReport* cached_second = nullptr;

Outcome second_scaling() {
  static SweepReport rep = second_sweep();
  cached_second = &rep;
  const double ls = rep.fits.at("lambda").slope, cs = rep.fits.at("constant").slope;
  const auto c = rep.values("constant"), cand = rep.values("ansatz_candidate");
  bool dominates = cand.size() == c.size();
  for (std::size_t i = 0; dominates && i < c.size(); ++i) dominates = c[i] >= cand[i];
  std::ostringstream os;
  os << fmt("lambda slope %.4f, C2 slope %.4f, C2 =", ls, cs);
  for (double v : c) os << fmt(" %.4f", v);
  os << ", candidate =";
  for (double v : cand) os << fmt(" %.4f", v);
  return {std::abs(ls + 1) <= 0.25 && std::abs(cs) <= 0.25 && dominates, os.str()};
}

Outcome dense_eigen() {
  const auto plate = make_plate(1, 1);
  const auto g = ShellGrid::over(plate, 0.1, 4, 6, 6);
  const auto f = assemble_forms(plate, g);
  const auto D = QuadraticForm::combine("M+E", {{1.0, f.M}, {1.0, f.E}});
  const double dense = oracle::dense_max_eig(oracle::dense(f.G), oracle::dense(D));
  EigOptions o;
  o.preconditioner = LineBlockCache(f).for_combination(1.0, 1.0, 0.0);
  const auto r = max_rayleigh(f.G, D, o);
  const double rel = std::abs(r.lambda / dense - 1);
  return {rel <= 1e-6, fmt("iterative %.10f dense %.10f rel %.2e", r.lambda, dense, rel)};
}

Outcome interp_consistency() {
  const auto cyl = make_cylinder(1, kPi, 1);
  const double h = 0.1;
  const auto r = korn_interp_constant(cyl, h, GridPolicy{4, 6, 6});
  const double q = interp_quotient(VecField3::from_dofs(r.grid, r.eig.x), cyl);
  const auto f = assemble_forms(cyl, r.grid);
  const oracle::InterpDense dense{oracle::dense(f.G), oracle::dense(f.M), oracle::dense(f.E),
                                  oracle::dense(f.Nt), h};
  const double asc = oracle::ascent_interp_max(dense, 4, 100, 42);
  const double self = std::abs(q / r.constant - 1), orc = std::abs(asc / r.constant - 1);
  return {self <= 0.05 && orc <= 0.02,
          fmt("constant %.6f, own maximizer %.6f (%.2e), ascent %.6f (%.2e)", r.constant, q, self, asc, orc)};
}

const rect::LemmaSuite& lemma_suite() {
  static const rect::LemmaSuite s = rect::run_lemma_suite({});
  return s;
}

const rect::LemmaCheck& check(const std::string& name) {
  for (const auto& c : lemma_suite().checks)
    if (c.name == name) return c;
  throw std::logic_error("missing check " + name);
}

Outcome gradient_lemma() {
  const auto& s = lemma_suite();
  const auto members = rect::default_family(rect::Rect{0.25, 1.0}).size();
  const auto& fin = check("ratios_finite");
  const auto& slope = check("lemma31_slope");
  return {members >= 8 && fin.passed && slope.passed,
          fmt("%zu members, max ratio %.4f, slope %.2e, %zu rows", members, check("lemma31_max").value,
              slope.value, s.rows.size())};
}

Outcome step1() {
  const auto& slope = check("step1_slope");
  return {slope.passed, fmt("max ratio %.4f, slope %.2e", check("step1_max").value, slope.value)};
}

Outcome hardy() {
  const auto battery = rect::lemma32_battery();
  double worst = 0;
  for (const auto& c : battery) {
    const auto r = rect::lemma32_check(c.f, c.a, 1024);
    worst = std::max(worst, r.lhs / r.rhs);
  }
  return {battery.size() == 20 && worst <= 1.0, fmt("%zu functions, max lhs/rhs %.4f", battery.size(), worst)};
}

Outcome boundary_distance() {
  const auto& c = check("lemma33_max");
  return {c.passed, fmt("max ratio %.4f over aspects 1, 4, 16", c.value)};
}

Outcome determinism() {
  if (!cached_second) second_scaling();
  const SweepReport again = second_sweep();
  const bool same = again.deterministic_payload() == cached_second->deterministic_payload();
  return {same, fmt("%zu-byte payload %s", again.deterministic_payload().size(), same ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"rigid motions: strain residual converges", rigid_motions},
      {"plate gradient equals FD Jacobian", plate_fd},
      {"Ansatz quotients are order one", ansatz_exponents},
      {"closeness of F and the gradient", closeness},
      {"second constant scaling on the cylinder", second_scaling},
      {"eigensolver vs dense", dense_eigen},
      {"interpolation constant self-consistency", interp_consistency},
      {"thin-rectangle gradient ratio bounded", gradient_lemma},
      {"step-1 ratio bounded", step1},
      {"one-dimensional Hardy-type battery", hardy},
      {"boundary-distance weighted gradient", boundary_distance},
      {"determinism of the second-constant sweep", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s [%s] (%.1fs)\n", n, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
