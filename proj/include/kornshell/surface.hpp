#pragma once

// Shell mid-surface patches in principal coordinates (theta, z).
//
// Orientation convention: the unit normal n of every patch is chosen so that
//   dn/dtheta = kappa_theta * A_theta * e_theta,  dn/dz = kappa_z * A_z * e_z,
// i.e. the metric of the parallel surface at height t is A (1 + t kappa).
// For the built-in cylinder, sphere band and torus this is the outward normal,
// and the curvatures of the cylinder and sphere are positive.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace kornshell {

using Vec3 = std::array<double, 3>;

/// Orthonormal local basis. Rows and columns of frame matrices are ordered
/// (n, e_theta, e_z).
struct Frame {
  Vec3 n;
  Vec3 e_theta;
  Vec3 e_z;
};

using CoefFn = std::function<double(double theta, double z)>;
using EmbedFn = std::function<Vec3(double theta, double z)>;
using FrameFn = std::function<Frame(double theta, double z)>;

struct PatchCoefficients {
  CoefFn a_theta;       // |dr/dtheta|
  CoefFn a_z;           // |dr/dz|
  CoefFn kappa_theta;
  CoefFn kappa_z;
  CoefFn da_theta_dz;   // dA_theta/dz
  CoefFn da_z_dtheta;   // dA_z/dtheta
};

/// Mid-surface parameters the Korn constants depend on.
struct MidSurfaceParams {
  double a = 0;      // min of the Lame coefficients
  double A = 0;      // W^{2,inf} norms of A_theta plus A_z
  double k = 0;      // W^{1,inf} norms of kappa_theta plus kappa_z
  double l = 0;      // min z-width
  double L = 0;      // max z-width
  double Z = 0;      // W^{1,inf} norm of the (constant) z-bounds
  double omega = 0;
};

/// Immutable after construction; safe to share between threads as long as
/// the stored callables are pure.
class SurfacePatch {
 public:
  SurfacePatch(std::string name, PatchCoefficients coef, double omega,
               double z_lo, double z_hi, std::optional<EmbedFn> embedding = {},
               std::optional<FrameFn> frame = {}, double orientation = 1.0);

  const std::string& name() const { return name_; }
  double omega() const { return omega_; }
  double z_lo() const { return z_lo_; }
  double z_hi() const { return z_hi_; }

  double a_theta(double theta, double z) const { return coef_.a_theta(theta, z); }
  double a_z(double theta, double z) const { return coef_.a_z(theta, z); }
  double kappa_theta(double theta, double z) const { return coef_.kappa_theta(theta, z); }
  double kappa_z(double theta, double z) const { return coef_.kappa_z(theta, z); }
  double da_theta_dz(double theta, double z) const { return coef_.da_theta_dz(theta, z); }
  double da_z_dtheta(double theta, double z) const { return coef_.da_z_dtheta(theta, z); }

  bool has_embedding() const { return embedding_.has_value(); }
  /// Mid-surface point r(theta, z). Throws std::logic_error without an embedding.
  Vec3 embedding(double theta, double z) const;
  /// Point r + t n of the shell.
  Vec3 shell_point(double t, double theta, double z) const;

  /// Numeric parameters the patch was built from, for reports.
  const std::map<std::string, double>& parameters() const { return params_; }
  void set_parameters(std::map<std::string, double> p) { params_ = std::move(p); }

  friend Frame eval_frame(const SurfacePatch& patch, double theta, double z);

 private:
  std::string name_;
  PatchCoefficients coef_;
  double omega_, z_lo_, z_hi_;
  std::optional<EmbedFn> embedding_;
  std::optional<FrameFn> frame_;
  double orientation_;
  std::map<std::string, double> params_;
};

/// Flat sheet r = (theta, z, 0) on [0, width_theta] x [0, width_z].
SurfacePatch make_plate(double width_theta, double width_z);

/// r = (R cos theta, R sin theta, z), theta in [0, omega], z in [0, length].
/// Outward normal, kappa_theta = 1/R.
SurfacePatch make_cylinder(double radius, double omega, double length);

/// Sphere band; z is the colatitude in [phi_lo, phi_hi], which must avoid
/// both poles. Outward normal, both curvatures 1/R.
SurfacePatch make_sphere_band(double radius, double phi_lo, double phi_hi,
                              double omega);

/// Torus with theta the major angle in [0, omega] and z the minor angle in
/// [phi_lo, phi_hi]. Outward normal; kappa_z = 1/minor,
/// kappa_theta = cos(phi) / (major + minor cos(phi)).
SurfacePatch make_torus_patch(double major, double minor, double omega,
                              double phi_lo, double phi_hi);

/// (e_theta, e_z, n) at (theta, z). Built-ins use closed forms; user patches
/// with an embedding use central differences of it. Throws std::logic_error
/// when the patch has no embedding.
Frame eval_frame(const SurfacePatch& patch, double theta, double z);

/// Sampled diagnostics on a res x res parameter grid (res >= 2). Derivatives
/// are central differences of the coefficient callables.
MidSurfaceParams mid_surface_params(const SurfacePatch& patch, int resolution);

}  // namespace kornshell
