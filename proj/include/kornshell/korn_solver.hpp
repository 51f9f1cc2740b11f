#pragma once

// Discrete optimal Korn constants as generalized Rayleigh maxima, and
// log-log fits of their thickness scaling.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kornshell/eigensolver.hpp"
#include "kornshell/forms.hpp"
#include "kornshell/surface.hpp"

namespace kornshell {

struct GridPolicy {
  int n_t = 8;
  int n_theta = 48;
  int n_z = 48;
  ShellGrid grid_for(const SurfacePatch& patch, double h) const {
    return ShellGrid::over(patch, h, n_t, n_theta, n_z);
  }
};

struct SolverSettings {
  double tol = 1e-6;
  // Davidson corrections only need to be approximate.
  double inner_tol = 1e-3;
  int max_iter = 400;
  std::uint64_t seed = 42;
};

struct ConstantResult {
  double constant = 0;   // h * lambda for the second inequality; the sup itself for interp
  double lambda = 0;     // largest generalized eigenvalue at the optimum
  double s_opt = 0;      // AM-GM splitting parameter (interp only)
  bool flat = false;     // coarse s-scan found no interior peak (interp only)
  EigResult eig;
  ShellGrid grid;
  std::vector<double> scan_log_s, scan_lambda;   // coarse s-scan (interp only)
};

/// C2(h) = h * lambda_max(G, M + E).
ConstantResult korn_second_constant(const SurfacePatch& patch, double h,
                                    const GridPolicy& policy,
                                    const SolverSettings& settings = {});

/// sup_u ||grad u||^2 / (||u_t|| ||e|| / h + ||u||^2 + ||e||^2), computed as
/// sup_s lambda_max(G, D_s) with
///   D_s = s/(2h) N_t + 1/(2 s h) E + M + E,
/// a 9-point scan of log s over [-20, 20] followed by golden-section search.
/// Throws SolverError when the maximum sits on the scan boundary.
ConstantResult korn_interp_constant(const SurfacePatch& patch, double h,
                                    const GridPolicy& policy,
                                    const SolverSettings& settings = {});

/// lambda_max(G, D_s) for one s; exposed for envelope checks.
EigResult interp_lambda_at(const ShellForms& forms, double s,
                           const SolverSettings& settings,
                           const std::vector<double>& start = {});

/// The interpolation denominator of a DOF vector and its AM-GM majorant.
double interp_denominator(const ShellForms& forms, std::span<const double> x);
double amgm_denominator(const ShellForms& forms, std::span<const double> x, double s);

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;   // RMS of log-residuals
};

/// Least squares of log C against log h. Needs >= 3 points with distinct h
/// and positive C; throws std::invalid_argument otherwise.
ScalingFit fit_scaling(const std::vector<double>& h, const std::vector<double>& c);

/// Block-Jacobi preconditioner for a linear combination of forms, built from
/// probed line blocks of each term.
class LineBlockCache {
 public:
  LineBlockCache(const ShellForms& forms);
  Preconditioner for_combination(double c_mass, double c_strain, double c_normal) const;

 private:
  LineBlocks mass_, strain_, normal_;
};

}  // namespace kornshell
