#include "kornshell/lemma_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kornshell/korn_solver.hpp"

namespace kornshell::rect {

namespace {

const double kPi = std::acos(-1.0);

double hat(double t, double c, double w) { return std::max(0.0, 1.0 - std::abs(t - c) / w); }

std::vector<HarmonicSpec> filtered_family(const Rect& r, const std::string& kind) {
  auto fam = default_family(r);
  if (!kind.empty())
    fam.erase(std::remove_if(fam.begin(), fam.end(),
                             [&](const HarmonicSpec& s) { return s.kind != kind; }),
              fam.end());
  return fam;
}

// Dirichlet data for the solved (grid) inputs of the boundary-distance check.
std::vector<std::pair<std::string, Fn2>> boundary_data() {
  return {{"solved_trig", [](double x, double y) { return std::sin(3 * x + 1) * std::cos(2 * y); }},
          {"solved_poly", [](double x, double y) { return x * y * y - x * x; }},
          {"solved_mixed", [](double x, double y) { return std::exp(-x) * std::sin(y) + 0.3 * x; }}};
}

}  // namespace

bool LemmaSuite::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

nlohmann::json LemmaSuite::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
  j["rows"] = rows.size();
  return j;
}

std::string LemmaSuite::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "lemma,kind,param,h,b,ratio\n";
  for (const auto& r : rows)
    os << r.lemma << ',' << r.kind << ',' << r.param << ',' << r.h << ',' << r.b << ',' << r.ratio << '\n';
  return os.str();
}

std::vector<OneDimCase> lemma32_battery() {
  std::vector<OneDimCase> v;
  v.push_back({"one", [](double) { return 1.0; }, 1.0});
  v.push_back({"t", [](double t) { return t; }, 1.0});
  v.push_back({"t2", [](double t) { return t * t; }, 1.0});
  v.push_back({"t3_minus_t", [](double t) { return t * t * t - t; }, 0.5});
  v.push_back({"one_minus_t", [](double t) { return 1 - t; }, 1.0});
  v.push_back({"decay_quadratic", [](double t) { return (2 - t) * (2 - t); }, 1.0});
  v.push_back({"bump_poly", [](double t) { return t * (4 - t); }, 2.0});
  v.push_back({"quartic", [](double t) { return 1 + t - 3 * t * t * t * t; }, 0.5});
  v.push_back({"sin", [](double t) { return std::sin(t); }, 1.0});
  v.push_back({"cos", [](double t) { return std::cos(t); }, 1.0});
  v.push_back({"sin3", [](double t) { return std::sin(3 * t); }, 2.0});
  v.push_back({"cos5", [](double t) { return std::cos(5 * t); }, 1.0});
  v.push_back({"cos_offset", [](double t) { return 1 + 0.5 * std::cos(7 * t); }, 1.0});
  v.push_back({"sin_squared", [](double t) { return std::pow(std::sin(kPi * t / 2), 2); }, 1.0});
  v.push_back({"damped_cos", [](double t) { return std::exp(-t) * std::cos(2 * t); }, 2.0});
  v.push_back({"hat_inner", [](double t) { return hat(t, 0.5, 0.25); }, 1.0});
  v.push_back({"hat_outer", [](double t) { return hat(t, 1.5, 0.5); }, 1.0});
  v.push_back({"ramp", [](double t) { return std::min(t, 1.0); }, 1.0});
  v.push_back({"step_down", [](double t) { return std::clamp(2.0 - t, 0.0, 1.0); }, 1.0});
  v.push_back({"zigzag", [](double t) { return hat(t, 0.25, 0.25) + hat(t, 0.75, 0.25) + 0.5 * hat(t, 1.5, 0.5); }, 1.0});
  return v;
}

LemmaSuite run_lemma_suite(const LemmaSuiteConfig& cfg) {
  if (cfg.hs.size() < 3) throw std::invalid_argument("rect lemmas: need at least 3 thicknesses");
  for (double h : cfg.hs)
    if (!(cfg.b > 3 * h)) {
      std::ostringstream msg;
      msg << "rect lemmas: need b > 3h (b = " << cfg.b << ", h = " << h << ")";
      throw std::invalid_argument(msg.str());
    }
  if (!cfg.kind.empty() && filtered_family(Rect{cfg.hs.front(), cfg.b}, cfg.kind).empty())
    throw std::invalid_argument("rect lemmas: unknown kind '" + cfg.kind + "'");

  LemmaSuite out;
  const bool unit_b = cfg.b == 1.0;
  std::vector<double> max31, maxs;
  bool finite = true;
  for (double h : cfg.hs) {
    const Rect r{h, cfg.b};
    const Grid2D g = default_grid(r);
    double m31 = 0, ms = 0;
    for (const auto& spec : filtered_family(r, cfg.kind)) {
      const HarmonicSample s = harmonic_family(spec, g);
      const double a = lemma31_ratio(s);
      finite = finite && std::isfinite(a);
      m31 = std::max(m31, a);
      out.rows.push_back({"lemma31", spec.kind, spec.param, h, cfg.b, a});
      if (unit_b) {
        const double st = step1_ratio(s);
        finite = finite && std::isfinite(st);
        ms = std::max(ms, st);
        out.rows.push_back({"step1", spec.kind, spec.param, h, cfg.b, st});
      }
    }
    max31.push_back(m31);
    maxs.push_back(ms);
  }
  out.checks.push_back({"ratios_finite", finite ? 1.0 : 0.0, 1.0, finite});

  auto trend = [&](const std::string& name, const std::vector<double>& m) {
    const bool positive = std::all_of(m.begin(), m.end(), [](double x) { return x > 0.0; });
    const double slope = positive ? fit_scaling(cfg.hs, m).slope : 0.0;
    out.checks.push_back({name + "_max", *std::max_element(m.begin(), m.end()),
                          std::numeric_limits<double>::infinity(), true});
    out.checks.push_back({name + "_slope", slope, -0.1, slope >= -0.1});
  };
  trend("lemma31", max31);
  if (unit_b) trend("step1", maxs);

  double worst32 = 0;
  for (const auto& c : lemma32_battery()) {
    const auto res = lemma32_check(c.f, c.a, 1024);
    const double q = res.lhs / res.rhs;
    worst32 = std::max(worst32, q);
    out.rows.push_back({"lemma32", c.name, c.a, 0, 0, q});
  }
  out.checks.push_back({"lemma32_lhs_over_rhs", worst32, 1.0, worst32 <= 1.0});

  double worst33 = 0;
  for (double aspect : cfg.aspects) {
    const Rect r{1.0, aspect};
    const Grid2D g(r, 33, static_cast<int>(32 * aspect) + 1);
    for (const auto& spec : filtered_family(r, cfg.kind)) {
      const double v = lemma33_ratio(harmonic_family(spec, g));
      worst33 = std::max(worst33, v);
      out.rows.push_back({"lemma33", spec.kind, spec.param, r.h, r.b, v});
    }
    if (cfg.kind.empty())
      for (const auto& [name, bc] : boundary_data()) {
        const double v = lemma33_ratio(from_grid(solve_dirichlet_harmonic(bc, g)));
        worst33 = std::max(worst33, v);
        out.rows.push_back({"lemma33", name, 0, r.h, r.b, v});
      }
  }
  out.checks.push_back({"lemma33_max", worst33, 2.2, worst33 <= 2.2});
  return out;
}

}  // namespace kornshell::rect
