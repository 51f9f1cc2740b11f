#pragma once

// Harmonic functions on thin rectangles R = (0, h) x (0, b).
//
// All norms here are unweighted 2-D L^2 norms with trapezoidal quadrature.
// Nodes are x-fastest: (i, j) -> i + nx * j.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kornshell::rect {

struct Rect {
  double h = 0;   // x in (0, h)
  double b = 0;   // y in (0, b)
};

class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(const Rect& r, int nx, int ny);

  const Rect& rect() const { return rect_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  double dx() const { return rect_.h / (nx_ - 1); }
  double dy() const { return rect_.b / (ny_ - 1); }
  double x(int i) const { return rect_.h * i / (nx_ - 1); }
  double y(int j) const { return rect_.b * j / (ny_ - 1); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j;
  }
  bool operator==(const Grid2D&) const = default;

 private:
  Rect rect_;
  int nx_ = 0, ny_ = 0;
};

struct ScalarField2D {
  Grid2D grid;
  std::vector<double> v;
};

using Fn2 = std::function<double(double x, double y)>;

/// A harmonic input with its first derivatives. Analytic members carry exact
/// derivatives; grid-only inputs get second-order finite differences.
struct HarmonicSample {
  std::string kind;
  double param = 0;
  ScalarField2D w, wx, wy;
  bool analytic = false;
};

/// Member of the analytic harmonic family:
///   re_poly / im_poly : Re / Im (X + iY)^n, n = param in 0..6
///   exp_cos / exp_sin : e^{kY} cos(kX) / e^{kY} sin(kX), k = param
/// with X = scale (x - x0), Y = scale (y - y0).
struct HarmonicSpec {
  std::string kind;
  double param = 1;
  double x0 = 0, y0 = 0, scale = 1;
};

/// Exact samples of w, w_x, w_y. Throws std::invalid_argument for an
/// unknown kind or polynomial degree outside 0..6.
HarmonicSample harmonic_family(const HarmonicSpec& spec, const Grid2D& grid);

/// Default test battery for a rectangle: polynomials up to degree 6,
/// fixed-frequency exponentials, and exponentials with frequency ~ 1/h
/// anchored at the top edge.
std::vector<HarmonicSpec> default_family(const Rect& r);

/// Resolution used by the sweeps: 33 nodes across, at least 32 per h along y.
Grid2D default_grid(const Rect& r);

/// Sample an arbitrary function on the grid.
ScalarField2D sample(const Fn2& fn, const Grid2D& grid);

/// Harmonic extension of boundary data: 5-point Laplacian with Dirichlet
/// boundary rows, solved by conjugate gradients to relative residual `tol`.
/// Throws std::runtime_error on non-convergence.
ScalarField2D solve_dirichlet_harmonic(const Fn2& boundary, const Grid2D& grid,
                                       double tol = 1e-12, int max_iter = 100000);

/// Wraps a grid field, differentiating it with second-order stencils.
HarmonicSample from_grid(const ScalarField2D& w, std::string kind = "grid");

/// L^2 norm of the 5-point Laplacian over interior nodes.
double discrete_laplacian_residual(const ScalarField2D& w);

/// Throws std::domain_error unless the input is harmonic: analytic members
/// pass by construction; grid fields need
///   ||Lap_h w|| <= 1e-6 ||w|| / h^2.
void require_near_harmonic(const HarmonicSample& s);

double l2_norm(const ScalarField2D& f);
double integral(const ScalarField2D& f);

/// ||w_y||^2 / ( ||w|| ||w_x|| / h + ||w||^2 / b^2 + ||w_x||^2 ).
/// Requires b > 3h and w != 0.
double lemma31_ratio(const HarmonicSample& s);

/// h ||w_y - a|| / ||w_x|| on (0, h) x (0, 1), a the mean of w_y.
/// Returns 0 when w_y is constant; throws std::domain_error when w_x
/// vanishes but w_y does not (a violation candidate).
double step1_ratio(const HarmonicSample& s);

struct Lemma32Result {
  double lhs = 0;   // int_0^a f^2
  double rhs = 0;   // 4 int_a^{2a} f^2 + 4 int_0^{2a} t^2 f'(t)^2
};

/// Evaluates both sides for the piecewise-linear interpolant of `samples`,
/// given on a uniform grid over [0, 2a] with 4m + 1 points (m >= 2).
/// Throws std::invalid_argument if halving the sampling changes either side
/// by more than 1%.
Lemma32Result lemma32_check(const std::vector<double>& samples, double a);
/// Convenience overload sampling f at n + 1 points (n a multiple of 4).
Lemma32Result lemma32_check(const std::function<double(double)>& f, double a, int n);

/// ||delta grad u|| / ||grad u|| with delta the distance to the boundary.
/// Throws std::domain_error if grad u vanishes.
double lemma33_ratio(const HarmonicSample& s);

/// Largest distance to the boundary, min(h, b) / 2.
double max_boundary_distance(const Rect& r);

}  // namespace kornshell::rect
