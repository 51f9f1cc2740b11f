#pragma once

// Tensor grids over the shell and node-valued fields.
//
// Storage is t-fastest: node (i_t, i_theta, i_z) lives at
//   i_t + n_t * (i_theta + n_theta * i_z).
// DOF vectors of a displacement are the three components concatenated in
// the order (u_t, u_theta, u_z).

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kornshell/kernels.hpp"
#include "kornshell/surface.hpp"

namespace kornshell {

enum class Axis : int { t = 0, theta = 1, z = 2 };

class ShellGrid {
 public:
  ShellGrid() = default;
  /// t in [-h/2, h/2], theta in [0, omega], z in [z_lo, z_hi]; >= 3 nodes per axis.
  ShellGrid(double h, int n_t, int n_theta, int n_z, double omega, double z_lo,
            double z_hi);
  /// Grid spanning the parameter domain of `patch`.
  static ShellGrid over(const SurfacePatch& patch, double h, int n_t, int n_theta,
                        int n_z);

  double h() const { return h_; }
  int n_t() const { return n_[0]; }
  int n_theta() const { return n_[1]; }
  int n_z() const { return n_[2]; }
  int count(Axis a) const { return n_[static_cast<int>(a)]; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
  }
  kernels::Dims dims() const {
    return {static_cast<std::size_t>(n_[0]), static_cast<std::size_t>(n_[1]),
            static_cast<std::size_t>(n_[2])};
  }

  double omega() const { return omega_; }
  double z_lo() const { return z_lo_; }
  double z_hi() const { return z_hi_; }
  double spacing(Axis a) const;
  double dt() const { return spacing(Axis::t); }
  double dtheta() const { return spacing(Axis::theta); }
  double dz() const { return spacing(Axis::z); }

  double t(int i) const { return -0.5 * h_ + h_ * i / (n_[0] - 1); }
  double theta(int j) const { return omega_ * j / (n_[1] - 1); }
  double z(int k) const { return z_lo_ + (z_hi_ - z_lo_) * k / (n_[2] - 1); }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n_[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(n_[1]) * k);
  }

  bool operator==(const ShellGrid&) const = default;

 private:
  double h_ = 0;
  std::array<int, 3> n_{};
  double omega_ = 0, z_lo_ = 0, z_hi_ = 0;
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const ShellGrid& g, double fill = 0.0)
      : grid_(g), v_(g.size(), fill) {}
  ScalarField(const ShellGrid& g, std::vector<double> values);

  const ShellGrid& grid() const { return grid_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  double& at(int i, int j, int k) { return v_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const { return v_[grid_.index(i, j, k)]; }
  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double c);

 private:
  ShellGrid grid_;
  std::vector<double> v_;
};

ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

/// Displacement (u_t, u_theta, u_z) in the local frame (n, e_theta, e_z).
struct VecField3 {
  ScalarField t, theta, z;

  VecField3() = default;
  explicit VecField3(const ShellGrid& g) : t(g), theta(g), z(g) {}
  VecField3(ScalarField ut, ScalarField uth, ScalarField uz);

  const ShellGrid& grid() const { return t.grid(); }
  ScalarField& operator[](int c) { return c == 0 ? t : (c == 1 ? theta : z); }
  const ScalarField& operator[](int c) const {
    return c == 0 ? t : (c == 1 ? theta : z);
  }

  /// Concatenated DOF vector (u_t, u_theta, u_z).
  std::vector<double> dofs() const;
  static VecField3 from_dofs(const ShellGrid& g, std::span<const double> x);
};

VecField3 operator*(double c, VecField3 u);

/// Nine scalar channels M_ij, i, j in {0, 1, 2} = (t, theta, z). Row is the
/// output component, column the differentiation direction.
class FrameMatrixField {
 public:
  FrameMatrixField() = default;
  explicit FrameMatrixField(const ShellGrid& g);

  const ShellGrid& grid() const { return m_[0].grid(); }
  ScalarField& operator()(int i, int j) { return m_[3 * i + j]; }
  const ScalarField& operator()(int i, int j) const { return m_[3 * i + j]; }
  ScalarField& channel(int c) { return m_[c]; }
  const ScalarField& channel(int c) const { return m_[c]; }

  FrameMatrixField& operator-=(const FrameMatrixField& o);

 private:
  std::array<ScalarField, 9> m_;
};

FrameMatrixField operator-(FrameMatrixField a, const FrameMatrixField& b);

/// Second-order finite difference along `axis` (central inside, one-sided
/// three-point at the ends). Throws std::invalid_argument if the axis has
/// fewer than 3 nodes.
ScalarField diff(const ScalarField& f, Axis axis);

/// Point-wise evaluation at the grid nodes.
ScalarField sample(const std::function<double(double t, double theta, double z)>& fn,
                   const ShellGrid& grid);

/// Trapezoidal weights times A_theta A_z at every node (no 1 + t kappa
/// Jacobian factors).
std::vector<double> quadrature_weights(const ShellGrid& grid, const SurfacePatch& patch);

/// (f, g) = integral of A_z A_theta f g dtheta dz dt, trapezoidal rule.
double inner_product(const ScalarField& f, const ScalarField& g,
                     const SurfacePatch& patch);

double norm(const ScalarField& f, const SurfacePatch& patch);
double norm(const VecField3& u, const SurfacePatch& patch);
double norm(const FrameMatrixField& m, const SurfacePatch& patch);

/// Same quantities with precomputed weights (see quadrature_weights).
double inner_product(const ScalarField& f, const ScalarField& g,
                     std::span<const double> weights);
double norm(const ScalarField& f, std::span<const double> weights);
double norm(const VecField3& u, std::span<const double> weights);
double norm(const FrameMatrixField& m, std::span<const double> weights);

}  // namespace kornshell
