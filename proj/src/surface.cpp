#include "kornshell/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kornshell {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / len, v[1] / len, v[2] / len};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be positive");
}

CoefFn constant(double c) {
  return [c](double, double) { return c; };
}

}  // namespace

SurfacePatch::SurfacePatch(std::string name, PatchCoefficients coef, double omega,
                           double z_lo, double z_hi,
                           std::optional<EmbedFn> embedding,
                           std::optional<FrameFn> frame, double orientation)
    : name_(std::move(name)),
      coef_(std::move(coef)),
      omega_(omega),
      z_lo_(z_lo),
      z_hi_(z_hi),
      embedding_(std::move(embedding)),
      frame_(std::move(frame)),
      orientation_(orientation < 0 ? -1.0 : 1.0) {
  require_positive(omega, "omega");
  if (!(z_hi > z_lo)) throw std::invalid_argument("z_hi must exceed z_lo");
  if (!coef_.a_theta || !coef_.a_z || !coef_.kappa_theta || !coef_.kappa_z ||
      !coef_.da_theta_dz || !coef_.da_z_dtheta)
    throw std::invalid_argument("patch '" + name_ + "': missing coefficient function");
}

Vec3 SurfacePatch::embedding(double theta, double z) const {
  if (!embedding_)
    throw std::logic_error("patch '" + name_ + "' has no embedding");
  return (*embedding_)(theta, z);
}

Vec3 SurfacePatch::shell_point(double t, double theta, double z) const {
  const Vec3 r = embedding(theta, z);
  const Frame f = eval_frame(*this, theta, z);
  return {r[0] + t * f.n[0], r[1] + t * f.n[1], r[2] + t * f.n[2]};
}

Frame eval_frame(const SurfacePatch& patch, double theta, double z) {
  if (!patch.embedding_)
    throw std::logic_error("eval_frame: patch '" + patch.name_ + "' has no embedding");
  if (patch.frame_) return (*patch.frame_)(theta, z);

  const double step = 1e-6;
  const auto& r = *patch.embedding_;
  Vec3 rt{}, rz{};
  const Vec3 tp = r(theta + step, z), tm = r(theta - step, z);
  const Vec3 zp = r(theta, z + step), zm = r(theta, z - step);
  for (int i = 0; i < 3; ++i) {
    rt[i] = tp[i] - tm[i];
    rz[i] = zp[i] - zm[i];
  }
  Frame f;
  f.e_theta = normalized(rt);
  f.e_z = normalized(rz);
  Vec3 n = cross(f.e_theta, f.e_z);
  for (double& c : n) c *= patch.orientation_;
  f.n = normalized(n);
  return f;
}

SurfacePatch make_plate(double width_theta, double width_z) {
  require_positive(width_theta, "plate width_theta");
  require_positive(width_z, "plate width_z");
  PatchCoefficients c{constant(1.0), constant(1.0), constant(0.0),
                      constant(0.0), constant(0.0), constant(0.0)};
  EmbedFn emb = [](double th, double z) { return Vec3{th, z, 0.0}; };
  FrameFn frame = [](double, double) {
    return Frame{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  };
  SurfacePatch p("plate", std::move(c), width_theta, 0.0, width_z, emb, frame);
  p.set_parameters({{"width_theta", width_theta}, {"width_z", width_z}});
  return p;
}

SurfacePatch make_cylinder(double radius, double omega, double length) {
  require_positive(radius, "cylinder radius");
  require_positive(omega, "cylinder omega");
  require_positive(length, "cylinder length");
  const double R = radius;
  PatchCoefficients c{constant(R), constant(1.0), constant(1.0 / R),
                      constant(0.0), constant(0.0), constant(0.0)};
  EmbedFn emb = [R](double th, double z) {
    return Vec3{R * std::cos(th), R * std::sin(th), z};
  };
  FrameFn frame = [](double th, double) {
    const double ct = std::cos(th), st = std::sin(th);
    return Frame{{ct, st, 0.0}, {-st, ct, 0.0}, {0.0, 0.0, 1.0}};
  };
  SurfacePatch p("cylinder", std::move(c), omega, 0.0, length, emb, frame);
  p.set_parameters({{"radius", R}, {"omega", omega}, {"length", length}});
  return p;
}

SurfacePatch make_sphere_band(double radius, double phi_lo, double phi_hi,
                              double omega) {
  require_positive(radius, "sphere radius");
  require_positive(omega, "sphere omega");
  if (!(phi_lo > 0.0) || !(phi_hi < std::numbers::pi) || !(phi_lo < phi_hi))
    throw std::invalid_argument(
        "sphere band must satisfy 0 < phi_lo < phi_hi < pi (poles excluded)");
  const double R = radius;
  PatchCoefficients c{
      [R](double, double phi) { return R * std::sin(phi); },
      constant(R),
      constant(1.0 / R),
      constant(1.0 / R),
      [R](double, double phi) { return R * std::cos(phi); },
      constant(0.0)};
  EmbedFn emb = [R](double th, double phi) {
    return Vec3{R * std::sin(phi) * std::cos(th), R * std::sin(phi) * std::sin(th),
                R * std::cos(phi)};
  };
  FrameFn frame = [](double th, double phi) {
    const double ct = std::cos(th), st = std::sin(th);
    const double cp = std::cos(phi), sp = std::sin(phi);
    return Frame{{sp * ct, sp * st, cp}, {-st, ct, 0.0}, {cp * ct, cp * st, -sp}};
  };
  SurfacePatch p("sphere", std::move(c), omega, phi_lo, phi_hi, emb, frame, -1.0);
  p.set_parameters({{"radius", R}, {"phi_lo", phi_lo}, {"phi_hi", phi_hi},
                    {"omega", omega}});
  return p;
}

SurfacePatch make_torus_patch(double major, double minor, double omega,
                              double phi_lo, double phi_hi) {
  require_positive(minor, "torus minor radius");
  require_positive(omega, "torus omega");
  if (!(major > minor))
    throw std::invalid_argument("torus requires major radius > minor radius");
  if (!(phi_hi > phi_lo)) throw std::invalid_argument("torus: empty minor-angle range");
  const double R = major, r = minor;
  PatchCoefficients c{
      [R, r](double, double phi) { return R + r * std::cos(phi); },
      constant(r),
      [R, r](double, double phi) {
        return std::cos(phi) / (R + r * std::cos(phi));
      },
      constant(1.0 / r),
      [r](double, double phi) { return -r * std::sin(phi); },
      constant(0.0)};
  EmbedFn emb = [R, r](double th, double phi) {
    const double rho = R + r * std::cos(phi);
    return Vec3{rho * std::cos(th), rho * std::sin(th), r * std::sin(phi)};
  };
  FrameFn frame = [](double th, double phi) {
    const double ct = std::cos(th), st = std::sin(th);
    const double cp = std::cos(phi), sp = std::sin(phi);
    return Frame{{cp * ct, cp * st, sp}, {-st, ct, 0.0}, {-sp * ct, -sp * st, cp}};
  };
  SurfacePatch p("torus", std::move(c), omega, phi_lo, phi_hi, emb, frame);
  p.set_parameters({{"major", R}, {"minor", r}, {"omega", omega},
                    {"phi_lo", phi_lo}, {"phi_hi", phi_hi}});
  return p;
}

MidSurfaceParams mid_surface_params(const SurfacePatch& patch, int resolution) {
  if (resolution < 2) throw std::invalid_argument("mid_surface_params: resolution < 2");
  const double w = patch.omega(), zl = patch.z_lo(), zh = patch.z_hi();
  const double eps = 1e-4 * std::min(w, zh - zl);

  // Sup norms of f and its partial derivatives up to `order`, combined as the
  // max over derivative orders.
  auto sobolev_sup = [&](const CoefFn& f, int order) {
    double best = 0.0;
    for (int i = 0; i < resolution; ++i) {
      // Pull sample points inside by eps so the stencils stay in the domain.
      const double th = eps + (w - 2 * eps) * i / (resolution - 1);
      for (int j = 0; j < resolution; ++j) {
        const double z = zl + eps + (zh - zl - 2 * eps) * j / (resolution - 1);
        const double f0 = f(th, z);
        best = std::max(best, std::abs(f0));
        if (order >= 1) {
          const double ft = (f(th + eps, z) - f(th - eps, z)) / (2 * eps);
          const double fz = (f(th, z + eps) - f(th, z - eps)) / (2 * eps);
          best = std::max({best, std::abs(ft), std::abs(fz)});
        }
        if (order >= 2) {
          const double ftt = (f(th + eps, z) - 2 * f0 + f(th - eps, z)) / (eps * eps);
          const double fzz = (f(th, z + eps) - 2 * f0 + f(th, z - eps)) / (eps * eps);
          const double ftz = (f(th + eps, z + eps) - f(th + eps, z - eps) -
                              f(th - eps, z + eps) + f(th - eps, z - eps)) /
                             (4 * eps * eps);
          best = std::max({best, std::abs(ftt), std::abs(fzz), std::abs(ftz)});
        }
      }
    }
    return best;
  };

  CoefFn at = [&](double th, double z) { return patch.a_theta(th, z); };
  CoefFn az = [&](double th, double z) { return patch.a_z(th, z); };
  CoefFn kt = [&](double th, double z) { return patch.kappa_theta(th, z); };
  CoefFn kz = [&](double th, double z) { return patch.kappa_z(th, z); };

  MidSurfaceParams p;
  p.a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    const double th = w * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double z = zl + (zh - zl) * j / (resolution - 1);
      p.a = std::min({p.a, at(th, z), az(th, z)});
    }
  }
  p.A = sobolev_sup(at, 2) + sobolev_sup(az, 2);
  p.k = sobolev_sup(kt, 1) + sobolev_sup(kz, 1);
  p.l = p.L = zh - zl;
  p.Z = std::max(std::abs(zl), std::abs(zh));
  p.omega = w;
  return p;
}

}  // namespace kornshell
