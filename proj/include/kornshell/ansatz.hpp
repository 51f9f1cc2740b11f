#pragma once

// The oscillating Kirchhoff-type displacement that realizes the optimal
// thickness exponents:
//   u_t     = W(theta / sqrt h, z)
//   u_theta = -t W_x(theta / sqrt h, z) / (A_theta sqrt h)
//   u_z     = -t W_y(theta / sqrt h, z) / A_z
// with W periodic in its first argument.

#include <functional>
#include <string>
#include <vector>

#include "kornshell/grid.hpp"
#include "kornshell/report.hpp"
#include "kornshell/surface.hpp"

namespace kornshell {

struct ProfileW {
  std::string name;
  std::function<double(double x, double y)> W, Wx, Wy;
  double period = 0;   // in x
};

/// W(x, y) = sin(x) sin(pi (y - z_lo) / (z_hi - z_lo)).
ProfileW default_profile(double z_lo, double z_hi);

/// "default", "sin2" (sin 2x in place of sin x) or "mixed"
/// (sin x + cos 2x / 2 times the same z-bump). Throws
/// std::invalid_argument for other names.
ProfileW profile_by_name(const std::string& name, double z_lo, double z_hi);
std::vector<std::string> profile_names();

/// Checks periodicity to 1e-12 and max |W_x| > 0 on a sample of points in
/// [0, period] x [z_lo, z_hi]. Throws std::invalid_argument.
void validate_profile(const ProfileW& w, double z_lo, double z_hi);

/// Fewest theta nodes giving 12 nodes per oscillation period.
int min_theta_nodes(double omega, double period, double h);

/// Theta nodes for `per_period` nodes per oscillation, never below the
/// minimum above.
int ansatz_theta_nodes(double omega, double period, double h, int per_period = 48);

/// Thrown when a grid cannot resolve the theta-oscillation.
class UnderResolved : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Samples the Ansatz at thickness grid.h(). Validates the profile; throws
/// UnderResolved when grid.n_theta() < min_theta_nodes(...).
VecField3 make_ansatz(const ProfileW& w, const SurfacePatch& patch, const ShellGrid& grid);

struct AnsatzGrid {
  int n_t = 5;
  int n_z = 33;
  int per_period = 48;
  /// Fixed n_theta instead of per_period scaling (0 = scale with h).
  int n_theta = 0;
};

/// Per h: interp_quotient, second_quotient, and the diagnostic
/// h ||grad u||^2 / (||u_t|| ||e||); series "interp", "second",
/// "diagnostic", plus "strain_ratio" = ||e|| / ||grad u||.
/// Needs >= 4 distinct h spanning at least a factor 10.
SweepReport ansatz_sweep(const SurfacePatch& patch, const ProfileW& w,
                         const std::vector<double>& hs, const AnsatzGrid& grid = {});

}  // namespace kornshell
