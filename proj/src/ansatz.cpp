#include "kornshell/ansatz.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "kornshell/shell_ops.hpp"

namespace kornshell {

namespace {

const double kPi = std::acos(-1.0);

// sin(pi (y - z_lo) / L) and its y-derivative.
struct Bump {
  double lo, len;
  double v(double y) const { return std::sin(kPi * (y - lo) / len); }
  double d(double y) const { return kPi / len * std::cos(kPi * (y - lo) / len); }
};

}  // namespace

ProfileW default_profile(double z_lo, double z_hi) {
  return profile_by_name("default", z_lo, z_hi);
}

std::vector<std::string> profile_names() { return {"default", "sin2", "mixed"}; }

ProfileW profile_by_name(const std::string& name, double z_lo, double z_hi) {
  if (!(z_hi > z_lo)) throw std::invalid_argument("profile: need z_hi > z_lo");
  const Bump b{z_lo, z_hi - z_lo};
  ProfileW p;
  p.name = name;
  p.period = 2 * kPi;
  if (name == "default") {
    p.W = [b](double x, double y) { return std::sin(x) * b.v(y); };
    p.Wx = [b](double x, double y) { return std::cos(x) * b.v(y); };
    p.Wy = [b](double x, double y) { return std::sin(x) * b.d(y); };
  } else if (name == "sin2") {
    p.period = kPi;
    p.W = [b](double x, double y) { return std::sin(2 * x) * b.v(y); };
    p.Wx = [b](double x, double y) { return 2 * std::cos(2 * x) * b.v(y); };
    p.Wy = [b](double x, double y) { return std::sin(2 * x) * b.d(y); };
  } else if (name == "mixed") {
    p.W = [b](double x, double y) { return (std::sin(x) + 0.5 * std::cos(2 * x)) * b.v(y); };
    p.Wx = [b](double x, double y) { return (std::cos(x) - std::sin(2 * x)) * b.v(y); };
    p.Wy = [b](double x, double y) { return (std::sin(x) + 0.5 * std::cos(2 * x)) * b.d(y); };
  } else {
    std::ostringstream msg;
    msg << "unknown profile '" << name << "' (known:";
    for (const auto& n : profile_names()) msg << ' ' << n;
    msg << ')';
    throw std::invalid_argument(msg.str());
  }
  return p;
}

void validate_profile(const ProfileW& w, double z_lo, double z_hi) {
  if (!w.W || !w.Wx || !w.Wy) throw std::invalid_argument("profile: missing callable");
  if (!(w.period > 0.0) || !std::isfinite(w.period))
    throw std::invalid_argument("profile: period must be positive");
  constexpr int n = 17;
  double max_wx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = w.period * i / (n - 1);
      const double y = z_lo + (z_hi - z_lo) * j / (n - 1);
      const double a = w.W(x, y), b = w.W(x + w.period, y);
      if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw std::invalid_argument("profile '" + w.name + "' is not periodic in x");
      max_wx = std::max(max_wx, std::abs(w.Wx(x, y)));
    }
  if (!(max_wx > 0.0))
    throw std::invalid_argument("profile '" + w.name + "' has W_x identically zero");
}

int min_theta_nodes(double omega, double period, double h) {
  return static_cast<int>(std::ceil(12.0 * omega / (period * std::sqrt(h)))) + 1;
}

int ansatz_theta_nodes(double omega, double period, double h, int per_period) {
  const int n = static_cast<int>(std::ceil(per_period * omega / (period * std::sqrt(h)))) + 1;
  return std::max(n, min_theta_nodes(omega, period, h));
}

VecField3 make_ansatz(const ProfileW& w, const SurfacePatch& patch, const ShellGrid& grid) {
  validate_profile(w, patch.z_lo(), patch.z_hi());
  const double h = grid.h();
  const int need = min_theta_nodes(grid.omega(), w.period, h);
  if (grid.n_theta() < need) {
    std::ostringstream msg;
    msg << "grid under-resolves the Ansatz: n_theta = " << grid.n_theta() << " < " << need
        << " (12 nodes per theta-period of length " << w.period << " * sqrt(h))";
    throw UnderResolved(msg.str());
  }
  const double sh = std::sqrt(h);
  VecField3 u(grid);
  for (int k = 0; k < grid.n_z(); ++k)
    for (int j = 0; j < grid.n_theta(); ++j) {
      const double th = grid.theta(j), z = grid.z(k);
      const double x = th / sh;
      const double W = w.W(x, z), Wx = w.Wx(x, z), Wy = w.Wy(x, z);
      const double at = patch.a_theta(th, z), az = patch.a_z(th, z);
      for (int i = 0; i < grid.n_t(); ++i) {
        const double t = grid.t(i);
        u.t.at(i, j, k) = W;
        u.theta.at(i, j, k) = -t * Wx / (at * sh);
        u.z.at(i, j, k) = -t * Wy / az;
      }
    }
  return u;
}

SweepReport ansatz_sweep(const SurfacePatch& patch, const ProfileW& w,
                         const std::vector<double>& hs, const AnsatzGrid& ag) {
  if (hs.size() < 4) throw std::invalid_argument("ansatz_sweep: need at least 4 thicknesses");
  double lo = hs.front(), hi = hs.front();
  for (double h : hs) {
    if (!(h > 0.0)) throw std::invalid_argument("ansatz_sweep: thickness must be positive");
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  if (hi < 10 * lo * (1 - 1e-12))
    throw std::invalid_argument("ansatz_sweep: thicknesses must span at least a decade");
  validate_profile(w, patch.z_lo(), patch.z_hi());

  SweepReport rep;
  rep.kind = "ansatz";
  rep.timestamp = utc_timestamp();
  rep.config = {{"profile", w.name}, {"n_t", ag.n_t}, {"n_z", ag.n_z},
                {"per_period", ag.per_period}, {"n_theta", ag.n_theta}};
  for (double h : hs) {
    const auto start = std::chrono::steady_clock::now();
    const int nth = ag.n_theta > 0 ? ag.n_theta
                                   : ansatz_theta_nodes(patch.omega(), w.period, h, ag.per_period);
    const ShellGrid grid = ShellGrid::over(patch, h, ag.n_t, nth, ag.n_z);
    const VecField3 u = make_ansatz(w, patch, grid);
    const KornTerms k = korn_terms(u, patch);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double diag = h * k.grad2 / (std::sqrt(k.normal2) * std::sqrt(k.strain2));
    const std::pair<const char*, double> series[] = {
        {"interp", interp_quotient(k, h)},
        {"second", second_quotient(k, h)},
        {"diagnostic", diag},
        {"strain_ratio", std::sqrt(k.strain2 / k.grad2)}};
    for (const auto& [name, value] : series) {
      SweepPoint p;
      p.h = h;
      p.value = value;
      p.n_t = grid.n_t();
      p.n_theta = grid.n_theta();
      p.n_z = grid.n_z();
      p.seconds = secs;
      p.series = name;
      p.details = {{"grad2", k.grad2}, {"mass2", k.mass2}, {"strain2", k.strain2},
                   {"normal2", k.normal2}};
      rep.add(std::move(p));
    }
  }
  rep.refit();
  return rep;
}

}  // namespace kornshell
