#include "kornshell/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kornshell/ansatz.hpp"
#include "kornshell/shell_ops.hpp"

namespace kornshell {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::vector<double> SweepReport::values(const std::string& series) const {
  std::vector<double> v;
  for (const auto& p : points)
    if (p.series == series) v.push_back(p.value);
  return v;
}

std::vector<double> SweepReport::hs(const std::string& series) const {
  std::vector<double> v;
  for (const auto& p : points)
    if (p.series == series) v.push_back(p.h);
  return v;
}

void SweepReport::add(SweepPoint p) {
  auto h = hs(p.series), c = values(p.series);
  h.push_back(p.h);
  c.push_back(p.value);
  p.slope_to_date.reset();
  if (h.size() >= 3) {
    try {
      p.slope_to_date = fit_scaling(h, c).slope;
    } catch (const std::invalid_argument&) {
    }
  }
  points.push_back(std::move(p));
}

void SweepReport::refit() {
  fits.clear();
  std::set<std::string> names;
  for (const auto& p : points) names.insert(p.series);
  for (const auto& n : names) {
    const auto h = hs(n);
    if (h.size() < 3) continue;
    try {
      fits[n] = fit_scaling(h, values(n));
    } catch (const std::invalid_argument&) {
    }
  }
}

nlohmann::json SweepReport::report_json() const {
  nlohmann::json series = nlohmann::json::object();
  for (const auto& p : points) {
    nlohmann::json pt = {{"h", p.h},         {"value", p.value},     {"n_t", p.n_t},
                         {"n_theta", p.n_theta}, {"n_z", p.n_z}};
    pt["slope_to_date"] = p.slope_to_date ? nlohmann::json(*p.slope_to_date) : nlohmann::json();
    if (!p.details.empty()) pt["details"] = p.details;
    series[p.series]["points"].push_back(std::move(pt));
  }
  for (const auto& [name, f] : fits)
    series[name]["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
  return {{"kind", kind}, {"config", config}, {"series", series}};
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json secs = nlohmann::json::array();
  for (const auto& p : points) secs.push_back({{"series", p.series}, {"h", p.h}, {"seconds", p.seconds}});
  return {{"report", report_json()}, {"metadata", {{"timestamp", timestamp}, {"timings", secs}}}};
}

std::string SweepReport::deterministic_payload() const { return report_json().dump(2); }

std::string SweepReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "h,value,n_t,n_theta,n_z,seconds,slope_to_date,series\n";
  for (const auto& p : points) {
    os << p.h << ',' << p.value << ',' << p.n_t << ',' << p.n_theta << ',' << p.n_z << ','
       << p.seconds << ',';
    if (p.slope_to_date) os << *p.slope_to_date;
    os << ',' << p.series << '\n';
  }
  return os.str();
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void SweepReport::write_json(const std::string& path) const {
  write_text(path, to_json().dump(2) + "\n");
}

void SweepReport::write_csv(const std::string& path) const { write_text(path, to_csv()); }

SweepReport sweep_constant(const SurfacePatch& patch, const std::vector<double>& hs,
                           const GridPolicy& policy, const SolverSettings& settings,
                           const std::string& quotient) {
  if (quotient != "second" && quotient != "interp")
    throw std::invalid_argument("sweep_constant: quotient must be 'second' or 'interp'");
  const bool second = quotient == "second";
  SweepReport rep;
  rep.kind = second ? "second_constant" : "interp_constant";
  rep.timestamp = utc_timestamp();
  rep.config = {{"quotient", quotient},
                {"grid", {policy.n_t, policy.n_theta, policy.n_z}},
                {"tol", settings.tol},
                {"inner_tol", settings.inner_tol},
                {"max_iter", settings.max_iter},
                {"seed", settings.seed}};

  const ProfileW profile = default_profile(patch.z_lo(), patch.z_hi());
  for (double h : hs) {
    const auto start = std::chrono::steady_clock::now();
    const ConstantResult r = second ? korn_second_constant(patch, h, policy, settings)
                                    : korn_interp_constant(patch, h, policy, settings);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto point = [&](const std::string& series, double value) {
      SweepPoint p;
      p.h = h;
      p.value = value;
      p.n_t = r.grid.n_t();
      p.n_theta = r.grid.n_theta();
      p.n_z = r.grid.n_z();
      p.seconds = secs;
      p.series = series;
      return p;
    };
    SweepPoint c = point("constant", r.constant);
    c.details = {{"iterations", r.eig.iterations},
                 {"inner_iterations", r.eig.inner_iterations},
                 {"residual", r.eig.residual},
                 {"converged", r.eig.converged}};
    if (!second) {
      c.details["s_opt"] = r.s_opt;
      c.details["flat"] = r.flat;
    }
    rep.add(std::move(c));
    rep.add(point("lambda", r.lambda));
    try {
      const VecField3 u = make_ansatz(profile, patch, r.grid);
      rep.add(point("ansatz_candidate",
                    second ? second_quotient(u, patch) : interp_quotient(u, patch)));
    } catch (const UnderResolved&) {
    }
  }
  rep.refit();
  return rep;
}

}  // namespace kornshell
