#include "kornshell/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kornshell {

namespace {

void require_same_grid(const ShellGrid& a, const ShellGrid& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace

ShellGrid::ShellGrid(double h, int n_t, int n_theta, int n_z, double omega,
                     double z_lo, double z_hi)
    : h_(h), n_{n_t, n_theta, n_z}, omega_(omega), z_lo_(z_lo), z_hi_(z_hi) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("ShellGrid: thickness h must be positive");
  if (n_t < 3 || n_theta < 3 || n_z < 3)
    throw std::invalid_argument("ShellGrid: need at least 3 nodes per axis");
  if (!(omega > 0.0) || !(z_hi > z_lo))
    throw std::invalid_argument("ShellGrid: empty parameter domain");
}

ShellGrid ShellGrid::over(const SurfacePatch& patch, double h, int n_t, int n_theta,
                          int n_z) {
  return ShellGrid(h, n_t, n_theta, n_z, patch.omega(), patch.z_lo(), patch.z_hi());
}

double ShellGrid::spacing(Axis a) const {
  switch (a) {
    case Axis::t: return h_ / (n_[0] - 1);
    case Axis::theta: return omega_ / (n_[1] - 1);
    default: return (z_hi_ - z_lo_) / (n_[2] - 1);
  }
}

ScalarField::ScalarField(const ShellGrid& g, std::vector<double> values)
    : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size())
    throw std::invalid_argument("ScalarField: value count does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (double& x : v_) x *= c;
  return *this;
}

ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

VecField3::VecField3(ScalarField ut, ScalarField uth, ScalarField uz)
    : t(std::move(ut)), theta(std::move(uth)), z(std::move(uz)) {
  require_same_grid(t.grid(), theta.grid(), "VecField3");
  require_same_grid(t.grid(), z.grid(), "VecField3");
}

std::vector<double> VecField3::dofs() const {
  const std::size_t n = t.size();
  std::vector<double> x(3 * n);
  for (int c = 0; c < 3; ++c) {
    const auto v = (*this)[c].values();
    std::copy(v.begin(), v.end(), x.begin() + static_cast<std::ptrdiff_t>(c * n));
  }
  return x;
}

VecField3 VecField3::from_dofs(const ShellGrid& g, std::span<const double> x) {
  const std::size_t n = g.size();
  if (x.size() != 3 * n) throw std::invalid_argument("from_dofs: size mismatch");
  VecField3 u(g);
  for (int c = 0; c < 3; ++c) {
    auto v = u[c].values();
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(c * n),
              x.begin() + static_cast<std::ptrdiff_t>((c + 1) * n), v.begin());
  }
  return u;
}

VecField3 operator*(double c, VecField3 u) {
  u.t *= c;
  u.theta *= c;
  u.z *= c;
  return u;
}

FrameMatrixField::FrameMatrixField(const ShellGrid& g) {
  for (auto& m : m_) m = ScalarField(g);
}

FrameMatrixField& FrameMatrixField::operator-=(const FrameMatrixField& o) {
  for (int c = 0; c < 9; ++c) m_[c] -= o.m_[c];
  return *this;
}

FrameMatrixField operator-(FrameMatrixField a, const FrameMatrixField& b) {
  return a -= b;
}

ScalarField diff(const ScalarField& f, Axis axis) {
  const ShellGrid& g = f.grid();
  if (g.count(axis) < 3)
    throw std::invalid_argument("diff: axis has fewer than 3 nodes");
  ScalarField out(g);
  kernels::diff_axis(f.values(), out.values(), g.dims(), static_cast<int>(axis),
                     g.spacing(axis));
  return out;
}

ScalarField sample(const std::function<double(double, double, double)>& fn,
                   const ShellGrid& g) {
  ScalarField out(g);
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j)
      for (int i = 0; i < g.n_t(); ++i) out.at(i, j, k) = fn(g.t(i), g.theta(j), g.z(k));
  return out;
}

std::vector<double> quadrature_weights(const ShellGrid& g, const SurfacePatch& patch) {
  auto trap = [](int n, double d) {
    std::vector<double> w(static_cast<std::size_t>(n), d);
    w.front() = w.back() = 0.5 * d;
    return w;
  };
  const auto wt = trap(g.n_t(), g.dt());
  const auto wth = trap(g.n_theta(), g.dtheta());
  const auto wz = trap(g.n_z(), g.dz());
  std::vector<double> w(g.size());
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double th = g.theta(j), z = g.z(k);
      const double area = patch.a_theta(th, z) * patch.a_z(th, z) * wth[j] * wz[k];
      for (int i = 0; i < g.n_t(); ++i) w[g.index(i, j, k)] = wt[i] * area;
    }
  return w;
}

double inner_product(const ScalarField& f, const ScalarField& g,
                     std::span<const double> weights) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  if (weights.size() != f.size())
    throw std::invalid_argument("inner_product: weight count mismatch");
  return kernels::weighted_dot(f.values(), g.values(), weights);
}

double inner_product(const ScalarField& f, const ScalarField& g,
                     const SurfacePatch& patch) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  const auto w = quadrature_weights(f.grid(), patch);
  return inner_product(f, g, w);
}

double norm(const ScalarField& f, std::span<const double> w) {
  return std::sqrt(inner_product(f, f, w));
}

double norm(const VecField3& u, std::span<const double> w) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += inner_product(u[c], u[c], w);
  return std::sqrt(s);
}

double norm(const FrameMatrixField& m, std::span<const double> w) {
  double s = 0.0;
  for (int c = 0; c < 9; ++c) s += inner_product(m.channel(c), m.channel(c), w);
  return std::sqrt(s);
}

double norm(const ScalarField& f, const SurfacePatch& patch) {
  return norm(f, quadrature_weights(f.grid(), patch));
}

double norm(const VecField3& u, const SurfacePatch& patch) {
  return norm(u, quadrature_weights(u.grid(), patch));
}

double norm(const FrameMatrixField& m, const SurfacePatch& patch) {
  return norm(m, quadrature_weights(m.grid(), patch));
}

}  // namespace kornshell
