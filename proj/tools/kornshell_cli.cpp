#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kornshell/ansatz.hpp"
#include "kornshell/kernels.hpp"
#include "kornshell/korn_solver.hpp"
#include "kornshell/lemma_suite.hpp"
#include "kornshell/report.hpp"
#include "kornshell/shell_ops.hpp"

using namespace kornshell;
using nlohmann::json;

namespace {

const double kPi = std::acos(-1.0);

// Exit codes.
constexpr int kOk = 0, kFailed = 1, kConfig = 2;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  std::string surface;
  double radius = 1.0, major = 3.0, minor = 1.0;
  std::vector<double> band;
  double omega = kPi, length = 1.0;
  std::vector<double> hs;
  std::string grid = "auto";
  double tol = 1e-6, inner_tol = 1e-3;
  int max_iter = 400;
  std::uint64_t seed = 42;
  std::string out, csv;
  std::string quotient = "second";
  std::string profile = "default";
  std::string kind;
  double b = 1.0;
  std::vector<double> a{0.1, 0.2, 0.3};
  std::vector<double> B{0, 0.3, -0.5, -0.3, 0, 0.8, 0.5, -0.8, 0};

  json to_json() const {
    return {{"subcommand", subcommand}, {"surface", surface},   {"radius", radius},
            {"major", major},           {"minor", minor},       {"band", band},
            {"omega", omega},           {"length", length},     {"h", hs},
            {"grid", grid},             {"tol", tol},           {"inner_tol", inner_tol},
            {"max_iter", max_iter},     {"seed", seed},         {"out", out},
            {"csv", csv},               {"quotient", quotient}, {"profile", profile},
            {"kind", kind},             {"b", b},               {"a", a},
            {"B", B}};
  }
};

std::vector<double> normalize_hs(std::vector<double> hs, const std::vector<double>& fallback) {
  if (hs.empty()) hs = fallback;
  for (double h : hs)
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("--h values must be positive");
  std::sort(hs.begin(), hs.end(), std::greater<>());
  if (std::adjacent_find(hs.begin(), hs.end()) != hs.end())
    throw ConfigError("--h contains a duplicate value");
  return hs;
}

struct GridDims {
  bool automatic = true;
  int n_t = 0, n_theta = 0, n_z = 0;
};

GridDims parse_grid(const std::string& s) {
  if (s == "auto") return {};
  GridDims g;
  g.automatic = false;
  char x1 = 0, x2 = 0;
  std::istringstream is(s);
  if (!(is >> g.n_t >> x1 >> g.n_theta >> x2 >> g.n_z) || x1 != 'x' || x2 != 'x' || !is.eof())
    throw ConfigError("--grid must be NTxNTHxNZ or auto, got '" + s + "'");
  if (g.n_t < 3 || g.n_theta < 3 || g.n_z < 3) throw ConfigError("--grid: every count must be >= 3");
  return g;
}

SurfacePatch build_patch(const RunConfig& c) {
  if (c.surface.empty()) throw ConfigError("--surface is required");
  auto band = [&](double lo, double hi) {
    if (c.band.empty()) return std::pair{lo, hi};
    if (c.band.size() != 2) throw ConfigError("--band takes two values LO,HI");
    return std::pair{c.band[0], c.band[1]};
  };
  try {
    if (c.surface == "plate") return make_plate(c.omega, c.length);
    if (c.surface == "cylinder") return make_cylinder(c.radius, c.omega, c.length);
    if (c.surface == "sphere") {
      const auto [lo, hi] = band(kPi / 3, 2 * kPi / 3);
      return make_sphere_band(c.radius, lo, hi, c.omega);
    }
    if (c.surface == "torus") {
      const auto [lo, hi] = band(-0.5, 0.5);
      return make_torus_patch(c.major, c.minor, c.omega, lo, hi);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown --surface '" + c.surface + "' (plate, cylinder, sphere, torus)");
}

void check_tolerances(const RunConfig& c) {
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("--tol must lie in (0, 1)");
  if (!(c.inner_tol > 0.0 && c.inner_tol < 1.0)) throw ConfigError("--inner-tol must lie in (0, 1)");
  if (c.max_iter < 1) throw ConfigError("--max-iter must be positive");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void emit(const SweepReport& rep, const RunConfig& c) {
  if (!c.out.empty()) rep.write_json(c.out);
  if (!c.csv.empty()) rep.write_csv(c.csv);
}

void print_series(const SweepReport& rep) {
  std::map<std::string, std::vector<const SweepPoint*>> by;
  for (const auto& p : rep.points) by[p.series].push_back(&p);
  for (const auto& [name, pts] : by) {
    std::printf("%s\n", name.c_str());
    for (const auto* p : pts)
      std::printf("  h = %-8g value = %-14.8g grid %dx%dx%d  %.2fs\n", p->h, p->value, p->n_t,
                  p->n_theta, p->n_z, p->seconds);
    if (auto it = rep.fits.find(name); it != rep.fits.end())
      std::printf("  slope = %.4f\n", it->second.slope);
  }
}

int cmd_sweep_constant(const RunConfig& c) {
  const SurfacePatch patch = build_patch(c);
  check_tolerances(c);
  if (c.quotient != "second" && c.quotient != "interp")
    throw ConfigError("--quotient must be interp or second");
  const GridDims gd = parse_grid(c.grid);
  GridPolicy pol;
  if (!gd.automatic) pol = GridPolicy{gd.n_t, gd.n_theta, gd.n_z};
  SolverSettings s;
  s.tol = c.tol;
  s.inner_tol = c.inner_tol;
  s.max_iter = c.max_iter;
  s.seed = c.seed;

  SweepReport rep;
  try {
    rep = sweep_constant(patch, c.hs, pol, s, c.quotient);
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kFailed;
  }
  rep.config["run"] = c.to_json();
  print_series(rep);
  emit(rep, c);
  for (const auto& p : rep.points)
    if (p.details.contains("converged") && !p.details["converged"].get<bool>()) return kFailed;
  return kOk;
}

int cmd_sweep_ansatz(const RunConfig& c) {
  const SurfacePatch patch = build_patch(c);
  ProfileW w;
  try {
    w = profile_by_name(c.profile, patch.z_lo(), patch.z_hi());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const GridDims gd = parse_grid(c.grid);
  AnsatzGrid ag;
  if (!gd.automatic) ag = AnsatzGrid{gd.n_t, gd.n_z, 48, gd.n_theta};

  SweepReport rep;
  try {
    rep = ansatz_sweep(patch, w, c.hs, ag);
  } catch (const UnderResolved& e) {
    throw ConfigError(std::string(e.what()) +
                      "; theta spacing must shrink like sqrt(h), use --grid auto");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  rep.config["run"] = c.to_json();
  print_series(rep);
  emit(rep, c);
  return kOk;
}

int cmd_rect_lemmas(const RunConfig& c) {
  rect::LemmaSuiteConfig cfg;
  cfg.hs = c.hs;
  cfg.b = c.b;
  cfg.kind = c.kind;
  rect::LemmaSuite suite;
  try {
    suite = rect::run_lemma_suite(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& ch : suite.checks)
    std::printf("%-24s %-14.8g bound %-10g %s\n", ch.name.c_str(), ch.value, ch.bound,
                ch.passed ? "ok" : "VIOLATED");
  if (!c.out.empty()) {
    json j = suite.to_json();
    j["config"] = c.to_json();
    write_text(c.out, j.dump(2) + "\n");
  }
  if (!c.csv.empty()) write_text(c.csv, suite.to_csv());
  return suite.passed() ? kOk : kFailed;
}

int cmd_check_rigid(const RunConfig& c) {
  const SurfacePatch patch = build_patch(c);
  if (c.a.size() != 3) throw ConfigError("--a takes 3 values");
  if (c.B.size() != 9) throw ConfigError("--B takes 9 values (row-major)");
  const Vec3 a{c.a[0], c.a[1], c.a[2]};
  Mat3 B{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B[i][j] = c.B[3 * i + j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(B[i][j] + B[j][i]) > 1e-14) throw ConfigError("--B must be skew-symmetric");

  RefinementStudy st;
  try {
    st = rigid_refinement(patch, a, B, c.hs.front());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::printf("%6s %8s %6s %14s %8s\n", "n_t", "n_theta", "n_z", "residual", "order");
  double worst = 0;
  json levels = json::array();
  for (std::size_t l = 0; l < st.levels.size(); ++l) {
    const auto& lv = st.levels[l];
    worst = std::max(worst, lv.residual);
    if (l == 0)
      std::printf("%6d %8d %6d %14.6e %8s\n", lv.n_t, lv.n_theta, lv.n_z, lv.residual, "-");
    else
      std::printf("%6d %8d %6d %14.6e %8.3f\n", lv.n_t, lv.n_theta, lv.n_z, lv.residual,
                  st.orders[l - 1]);
    levels.push_back({{"n_t", lv.n_t}, {"n_theta", lv.n_theta}, {"n_z", lv.n_z}, {"residual", lv.residual}});
  }
  const bool exact = worst <= 1e-12;
  const bool pass = exact || st.min_order() >= 1.8;
  std::printf("%s\n", exact ? "exact to round-off" : pass ? "order >= 1.8" : "order below 1.8");
  if (!c.out.empty()) {
    json j{{"config", c.to_json()}, {"levels", levels}, {"orders", st.orders}, {"passed", pass}};
    write_text(c.out, j.dump(2) + "\n");
  }
  if (!c.csv.empty()) {
    std::ostringstream os;
    os.precision(17);
    os << "n_t,n_theta,n_z,residual\n";
    for (const auto& lv : st.levels) os << lv.n_t << ',' << lv.n_theta << ',' << lv.n_z << ',' << lv.residual << '\n';
    write_text(c.csv, os.str());
  }
  return pass ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-shell Korn inequality experiments"};
  app.set_config("--config", "", "Flat key=value file (same keys as the flags; flags win)");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  RunConfig c;
  app.add_option("--surface", c.surface, "plate | cylinder | sphere | torus");
  app.add_option("--radius", c.radius, "Cylinder or sphere radius")->capture_default_str();
  app.add_option("--major", c.major, "Torus major radius")->capture_default_str();
  app.add_option("--minor", c.minor, "Torus minor radius")->capture_default_str();
  app.add_option("--band", c.band, "Sphere colatitude or torus minor-angle range LO,HI")->delimiter(',');
  app.add_option("--omega", c.omega, "Angular extent (plate: width in theta)")->capture_default_str();
  app.add_option("--length", c.length, "Axial length (plate: width in z)")->capture_default_str();
  app.add_option("--h", c.hs, "Comma-separated thicknesses")->delimiter(',');
  app.add_option("--grid", c.grid, "NTxNTHxNZ or auto")->capture_default_str();
  app.add_option("--tol", c.tol, "Eigen residual tolerance")->capture_default_str();
  app.add_option("--inner-tol", c.inner_tol, "Correction solve tolerance")->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "Outer iteration cap")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--out", c.out, "JSON report path");
  app.add_option("--csv", c.csv, "CSV plot-data path");
  app.add_option("--quotient", c.quotient, "interp | second")->capture_default_str();
  app.add_option("--profile", c.profile, "Ansatz profile: default | sin2 | mixed")->capture_default_str();
  app.add_option("--kind", c.kind, "rect-lemmas: restrict to one family (re_poly, im_poly, exp_cos, exp_sin)");
  app.add_option("--b", c.b, "rect-lemmas: rectangle height")->capture_default_str();
  app.add_option("--a", c.a, "check-rigid: translation a0,a1,a2")->delimiter(',');
  app.add_option("--B", c.B, "check-rigid: skew matrix, 9 values row-major")->delimiter(',');

  for (const char* name : {"sweep-constant", "sweep-ansatz", "rect-lemmas", "check-rigid"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    kernels::thread_count();
    if (c.subcommand == "sweep-constant") {
      c.hs = normalize_hs(c.hs, {0.2, 0.1, 0.05, 0.025});
      return cmd_sweep_constant(c);
    }
    if (c.subcommand == "sweep-ansatz") {
      c.hs = normalize_hs(c.hs, {0.1, 0.05, 0.02, 0.01, 0.005});
      return cmd_sweep_ansatz(c);
    }
    if (c.subcommand == "rect-lemmas") {
      c.hs = normalize_hs(c.hs, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64});
      return cmd_rect_lemmas(c);
    }
    c.hs = normalize_hs(c.hs, {0.1});
    return cmd_check_rigid(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
