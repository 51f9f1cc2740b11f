#include "kornshell/rect_harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "kornshell/kernels.hpp"

namespace kornshell::rect {

Grid2D::Grid2D(const Rect& r, int nx, int ny) : rect_(r), nx_(nx), ny_(ny) {
  if (!(r.h > 0.0) || !(r.b > 0.0) || !std::isfinite(r.h) || !std::isfinite(r.b))
    throw std::invalid_argument("Grid2D: rectangle sides must be positive");
  if (nx < 3 || ny < 3) throw std::invalid_argument("Grid2D: need at least 3 nodes per axis");
}

Grid2D default_grid(const Rect& r) {
  const int ny = std::max(65, static_cast<int>(std::ceil(32.0 * r.b / r.h)) + 1);
  return Grid2D(r, 33, ny);
}

ScalarField2D sample(const Fn2& fn, const Grid2D& g) {
  ScalarField2D f{g, std::vector<double>(g.size())};
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) f.v[g.index(i, j)] = fn(g.x(i), g.y(j));
  return f;
}

namespace {

struct Eval {
  double w, wx, wy;
};

Eval eval_member(const HarmonicSpec& s, double x, double y) {
  const double X = s.scale * (x - s.x0), Y = s.scale * (y - s.y0);
  if (s.kind == "re_poly" || s.kind == "im_poly") {
    const int n = static_cast<int>(s.param);
    const std::complex<double> z(X, Y);
    const std::complex<double> zn = std::pow(z, n);
    const std::complex<double> dz =
        n == 0 ? std::complex<double>(0.0) : static_cast<double>(n) * std::pow(z, n - 1);
    // d/dx z^n = n z^{n-1}, d/dy z^n = i n z^{n-1}
    if (s.kind == "re_poly")
      return {zn.real(), s.scale * dz.real(), -s.scale * dz.imag()};
    return {zn.imag(), s.scale * dz.imag(), s.scale * dz.real()};
  }
  const double k = s.param;
  const double e = std::exp(k * Y), c = std::cos(k * X), sn = std::sin(k * X);
  if (s.kind == "exp_cos") return {e * c, -s.scale * k * e * sn, s.scale * k * e * c};
  return {e * sn, s.scale * k * e * c, s.scale * k * e * sn};
}

void check_spec(const HarmonicSpec& s) {
  if (s.kind == "re_poly" || s.kind == "im_poly") {
    if (s.param < 0 || s.param > 6 || s.param != std::floor(s.param))
      throw std::invalid_argument("harmonic_family: polynomial degree must be an integer in 0..6");
  } else if (s.kind != "exp_cos" && s.kind != "exp_sin") {
    throw std::invalid_argument("harmonic_family: unknown kind '" + s.kind + "'");
  }
  if (!std::isfinite(s.param) || !std::isfinite(s.scale) || s.scale == 0.0)
    throw std::invalid_argument("harmonic_family: bad parameters");
}

}  // namespace

HarmonicSample harmonic_family(const HarmonicSpec& spec, const Grid2D& g) {
  check_spec(spec);
  HarmonicSample out;
  out.kind = spec.kind;
  out.param = spec.param;
  out.analytic = true;
  out.w = out.wx = out.wy = ScalarField2D{g, std::vector<double>(g.size())};
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Eval e = eval_member(spec, g.x(i), g.y(j));
      const std::size_t k = g.index(i, j);
      out.w.v[k] = e.w;
      out.wx.v[k] = e.wx;
      out.wy.v[k] = e.wy;
    }
  return out;
}

std::vector<HarmonicSpec> default_family(const Rect& r) {
  const double pi = std::acos(-1.0);
  std::vector<HarmonicSpec> f;
  for (int n = 1; n <= 6; ++n) {
    f.push_back({"re_poly", static_cast<double>(n)});
    f.push_back({"im_poly", static_cast<double>(n)});
  }
  f.push_back({"exp_cos", 1.0});
  f.push_back({"exp_sin", 2.0});
  // Boundary-layer members living on the scale h near the top edge.
  f.push_back({"exp_cos", pi, 0.0, r.b, 1.0 / r.h});
  f.push_back({"exp_sin", pi / 2, 0.0, r.b, 1.0 / r.h});
  // Translated and rescaled polynomials.
  f.push_back({"re_poly", 3.0, r.h / 2, r.b / 2, 1.0 / r.b});
  f.push_back({"im_poly", 4.0, r.h / 2, r.b, 1.0 / r.h});
  return f;
}

namespace {

// 5-point stencil applied to interior unknowns with zero boundary values.
void apply_laplacian(const Grid2D& g, const std::vector<double>& u, std::vector<double>& out) {
  const int mx = g.nx() - 2, my = g.ny() - 2;
  const double cx = 1.0 / (g.dx() * g.dx()), cy = 1.0 / (g.dy() * g.dy());
  const double diag = 2 * cx + 2 * cy;
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i) {
      const std::size_t k = static_cast<std::size_t>(i) + static_cast<std::size_t>(mx) * j;
      double s = diag * u[k];
      if (i > 0) s -= cx * u[k - 1];
      if (i < mx - 1) s -= cx * u[k + 1];
      if (j > 0) s -= cy * u[k - mx];
      if (j < my - 1) s -= cy * u[k + mx];
      out[k] = s;
    }
}

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

}  // namespace

ScalarField2D solve_dirichlet_harmonic(const Fn2& boundary, const Grid2D& g, double tol,
                                       int max_iter) {
  ScalarField2D out{g, std::vector<double>(g.size(), 0.0)};
  const int nx = g.nx(), ny = g.ny();
  for (int i = 0; i < nx; ++i) {
    out.v[g.index(i, 0)] = boundary(g.x(i), g.y(0));
    out.v[g.index(i, ny - 1)] = boundary(g.x(i), g.y(ny - 1));
  }
  for (int j = 1; j < ny - 1; ++j) {
    out.v[g.index(0, j)] = boundary(g.x(0), g.y(j));
    out.v[g.index(nx - 1, j)] = boundary(g.x(nx - 1), g.y(j));
  }
  for (double v : out.v)
    if (!std::isfinite(v)) throw std::invalid_argument("solve_dirichlet_harmonic: non-finite boundary data");

  const int mx = nx - 2, my = ny - 2;
  const std::size_t n = static_cast<std::size_t>(mx) * my;
  const double cx = 1.0 / (g.dx() * g.dx()), cy = 1.0 / (g.dy() * g.dy());
  std::vector<double> b(n, 0.0);
  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i) {
      double s = 0;
      if (i == 0) s += cx * out.v[g.index(0, j + 1)];
      if (i == mx - 1) s += cx * out.v[g.index(nx - 1, j + 1)];
      if (j == 0) s += cy * out.v[g.index(i + 1, 0)];
      if (j == my - 1) s += cy * out.v[g.index(i + 1, ny - 1)];
      b[static_cast<std::size_t>(i) + static_cast<std::size_t>(mx) * j] = s;
    }

  std::vector<double> u(n, 0.0), r = b, p = b, q(n);
  const double bnorm = std::sqrt(kernels::dot(b, b));
  double rr = kernels::dot(r, r);
  int it = 0;
  if (bnorm > 0.0) {
    while (std::sqrt(rr) > tol * bnorm) {
      if (it++ >= max_iter) {
        std::ostringstream msg;
        msg << "solve_dirichlet_harmonic: no convergence after " << max_iter
            << " iterations (relative residual " << std::sqrt(rr) / bnorm << ")";
        throw std::runtime_error(msg.str());
      }
      apply_laplacian(g, p, q);
      const double alpha = rr / kernels::dot(p, q);
      kernels::axpy(alpha, p, u);
      kernels::axpy(-alpha, q, r);
      const double rr_new = kernels::dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    }
  }
  for (int j = 0; j < my; ++j)
    for (int i = 0; i < mx; ++i)
      out.v[g.index(i + 1, j + 1)] = u[static_cast<std::size_t>(i) + static_cast<std::size_t>(mx) * j];
  return out;
}

HarmonicSample from_grid(const ScalarField2D& w, std::string kind) {
  const Grid2D& g = w.grid;
  if (w.v.size() != g.size()) throw std::invalid_argument("from_grid: shape mismatch");
  HarmonicSample s;
  s.kind = std::move(kind);
  s.w = w;
  s.wx = s.wy = ScalarField2D{g, std::vector<double>(g.size())};
  const int nx = g.nx(), ny = g.ny();
  auto d = [](const double* f, std::ptrdiff_t stride, int i, int n, double step) {
    if (i == 0) return (-3 * f[0] + 4 * f[stride] - f[2 * stride]) / (2 * step);
    if (i == n - 1) return (3 * f[0] - 4 * f[-stride] + f[-2 * stride]) / (2 * step);
    return (f[stride] - f[-stride]) / (2 * step);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      s.wx.v[k] = d(&w.v[k], 1, i, nx, g.dx());
      s.wy.v[k] = d(&w.v[k], nx, j, ny, g.dy());
    }
  return s;
}

double discrete_laplacian_residual(const ScalarField2D& w) {
  const Grid2D& g = w.grid;
  const double cx = 1.0 / (g.dx() * g.dx()), cy = 1.0 / (g.dy() * g.dy());
  double s = 0;
  for (int j = 1; j < g.ny() - 1; ++j)
    for (int i = 1; i < g.nx() - 1; ++i) {
      const std::size_t k = g.index(i, j);
      const double lap = cx * (w.v[k - 1] - 2 * w.v[k] + w.v[k + 1]) +
                         cy * (w.v[k - g.nx()] - 2 * w.v[k] + w.v[k + g.nx()]);
      s += lap * lap;
    }
  return std::sqrt(s * g.dx() * g.dy());
}

void require_near_harmonic(const HarmonicSample& s) {
  if (s.analytic) return;
  const double h = s.w.grid.rect().h;
  const double res = discrete_laplacian_residual(s.w);
  const double cap = 1e-6 * l2_norm(s.w) / (h * h);
  if (!(res <= cap)) {
    std::ostringstream msg;
    msg << "input is not discretely harmonic: Laplacian residual " << res << " > " << cap;
    throw std::domain_error(msg.str());
  }
}

double integral(const ScalarField2D& f) {
  const Grid2D& g = f.grid;
  double s = 0;
  for (int j = 0; j < g.ny(); ++j) {
    double row = 0;
    for (int i = 0; i < g.nx(); ++i) row += trapezoid_weight(i, g.nx()) * f.v[g.index(i, j)];
    s += trapezoid_weight(j, g.ny()) * row;
  }
  return s * g.dx() * g.dy();
}

namespace {

double norm2_weighted(const ScalarField2D& f, const std::vector<double>* weight = nullptr) {
  const Grid2D& g = f.grid;
  double s = 0;
  for (int j = 0; j < g.ny(); ++j) {
    double row = 0;
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      const double v = weight ? (*weight)[k] * f.v[k] : f.v[k];
      row += trapezoid_weight(i, g.nx()) * v * v;
    }
    s += trapezoid_weight(j, g.ny()) * row;
  }
  return s * g.dx() * g.dy();
}

}  // namespace

double l2_norm(const ScalarField2D& f) { return std::sqrt(norm2_weighted(f)); }

double lemma31_ratio(const HarmonicSample& s) {
  const Rect& r = s.w.grid.rect();
  if (!(r.b > 3 * r.h)) throw std::invalid_argument("lemma31_ratio: requires b > 3h");
  require_near_harmonic(s);
  const double w = l2_norm(s.w), wx = l2_norm(s.wx), wy = l2_norm(s.wy);
  if (w == 0.0) throw std::domain_error("lemma31_ratio: w vanishes identically");
  const double denom = w * wx / r.h + w * w / (r.b * r.b) + wx * wx;
  return wy * wy / denom;
}

double step1_ratio(const HarmonicSample& s) {
  const Rect& r = s.w.grid.rect();
  if (std::abs(r.b - 1.0) > 1e-12) throw std::invalid_argument("step1_ratio: requires b = 1");
  require_near_harmonic(s);
  const double a = integral(s.wy) / (r.h * r.b);
  ScalarField2D dev = s.wy;
  for (double& v : dev.v) v -= a;
  const double num = l2_norm(dev);
  const double scale = l2_norm(s.wy);
  if (num <= 1e-13 * scale || num == 0.0) return 0.0;
  const double wx = l2_norm(s.wx);
  if (wx == 0.0)
    throw std::domain_error("step1_ratio: w_x vanishes while w_y is not constant (violation candidate)");
  return r.h * num / wx;
}

namespace {

Lemma32Result lemma32_pl(const std::vector<double>& f, double a, std::size_t stride) {
  const std::size_t n = (f.size() - 1) / stride;   // intervals
  const double dt = 2 * a / static_cast<double>(n);
  Lemma32Result out;
  double tail = 0, hardy = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const double f0 = f[m * stride], f1 = f[(m + 1) * stride];
    const double sq = dt * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0;   // exact for linear f
    if (m < n / 2) out.lhs += sq;
    else tail += sq;
    const double t0 = dt * static_cast<double>(m), t1 = dt * static_cast<double>(m + 1);
    const double slope = (f1 - f0) / dt;
    hardy += slope * slope * (t1 * t1 * t1 - t0 * t0 * t0) / 3.0;
  }
  out.rhs = 4 * tail + 4 * hardy;
  return out;
}

}  // namespace

Lemma32Result lemma32_check(const std::vector<double>& samples, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("lemma32_check: a must be positive");
  if (samples.size() < 9 || (samples.size() - 1) % 4 != 0)
    throw std::invalid_argument("lemma32_check: need 4m + 1 samples with m >= 2");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("lemma32_check: non-finite sample");
  const Lemma32Result fine = lemma32_pl(samples, a, 1);
  const Lemma32Result coarse = lemma32_pl(samples, a, 2);
  if (std::abs(fine.lhs - coarse.lhs) > 0.01 * fine.lhs ||
      std::abs(fine.rhs - coarse.rhs) > 0.01 * fine.rhs)
    throw std::invalid_argument("lemma32_check: sampling too coarse (halving changes a side by > 1%)");
  return fine;
}

Lemma32Result lemma32_check(const std::function<double(double)>& f, double a, int n) {
  if (n < 8 || n % 4 != 0) throw std::invalid_argument("lemma32_check: n must be a multiple of 4, >= 8");
  std::vector<double> s(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(i)] = f(2 * a * i / n);
  return lemma32_check(s, a);
}

double lemma33_ratio(const HarmonicSample& s) {
  require_near_harmonic(s);
  const Grid2D& g = s.w.grid;
  const Rect& r = g.rect();
  std::vector<double> delta(g.size());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x(i), y = g.y(j);
      delta[g.index(i, j)] = std::min({x, r.h - x, y, r.b - y});
    }
  const double grad2 = norm2_weighted(s.wx) + norm2_weighted(s.wy);
  if (grad2 == 0.0) throw std::domain_error("lemma33_ratio: gradient vanishes identically");
  const double dgrad2 = norm2_weighted(s.wx, &delta) + norm2_weighted(s.wy, &delta);
  return std::sqrt(dgrad2 / grad2);
}

double max_boundary_distance(const Rect& r) { return std::min(r.h, r.b) / 2; }

}  // namespace kornshell::rect
