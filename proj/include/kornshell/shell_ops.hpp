#pragma once

// Shell differential operators in the local frame (n, e_theta, e_z).
//
// With s_a = 1 + t kappa_a, the displacement gradient is
//
//   [ u_t,t   (u_t,th - A_th k_th u_th)/(A_th s_th)   (u_t,z - A_z k_z u_z)/(A_z s_z) ]
//   [ u_th,t  (A_z u_th,th + A_z A_th k_th u_t + A_th,z u_z)/(A_z A_th s_th)
//                                     (A_th u_th,z - A_z,th u_z)/(A_z A_th s_z) ]
//   [ u_z,t   (A_z u_z,th - A_th,z u_th)/(A_z A_th s_th)
//                                     (A_th u_z,z + A_z A_th k_z u_t + A_z,th u_th)/(A_z A_th s_z) ]
//
// The simplified gradient F uses s_a = 1.

#include <array>
#include <span>
#include <vector>

#include "kornshell/grid.hpp"
#include "kornshell/surface.hpp"

namespace kornshell {

enum class GradientKind { full, simplified };

/// Strain that enters the Korn quotients: e(grad u) or e(F).
enum class StrainSource { full, simplified };

using Mat3 = std::array<std::array<double, 3>, 3>;

/// The gradient as a linear map from DOF vectors (3N) to nine node channels
/// (9N), precomputed for one (patch, grid, kind). Immutable; apply and
/// apply_transpose may be called concurrently.
class GradientOperator {
 public:
  /// Throws std::domain_error if 1 + t kappa < 1/2 at some node.
  GradientOperator(const SurfacePatch& patch, const ShellGrid& grid,
                   GradientKind kind = GradientKind::full);

  const ShellGrid& grid() const { return grid_; }
  GradientKind kind() const { return kind_; }
  std::size_t dof_count() const { return 3 * grid_.size(); }

  /// y (channel-major, 9 x N) = G x.
  void apply(std::span<const double> x, std::span<double> y) const;
  /// x (3 x N) = G^T y.
  void apply_transpose(std::span<const double> y, std::span<double> x) const;

  FrameMatrixField operator()(const VecField3& u) const;

 private:
  // One additive contribution coef * (D_axis u_comp), or coef * u_comp when
  // axis < 0. An empty coef vector means the constant 1.
  struct Term {
    int comp;
    int axis;
    std::vector<double> coef;
  };
  ShellGrid grid_;
  GradientKind kind_;
  std::array<std::vector<Term>, 9> terms_;
};

/// Gradient of u per the formula above. Parallel, operator-based.
FrameMatrixField gradient(const VecField3& u, const SurfacePatch& patch);
/// F: the same with every 1 + t kappa replaced by 1.
FrameMatrixField simplified_gradient(const VecField3& u, const SurfacePatch& patch);

/// Serial node-by-node evaluation of the printed formula. Reference for tests.
FrameMatrixField gradient_reference(const VecField3& u, const SurfacePatch& patch,
                                    GradientKind kind = GradientKind::full);

/// Symmetric part 1/2 (M + M^T), entrywise.
FrameMatrixField strain(const FrameMatrixField& m);
/// Skew part 1/2 (M - M^T).
FrameMatrixField skew_part(const FrameMatrixField& m);

/// u . n, which is u_t in the local frame.
ScalarField normal_component(const VecField3& u);

/// Infinitesimal rigid motion v(X) = a + B X sampled at X = r + t n and
/// expressed in the local frame. Throws std::invalid_argument unless B is
/// skew; std::logic_error if the patch has no embedding.
VecField3 rigid_motion_field(const Vec3& a, const Mat3& B, const SurfacePatch& patch,
                             const ShellGrid& grid);

/// ||e(grad u)|| / ||grad u|| for a rigid field on successively refined
/// grids. Level l uses n_theta = n_z = (base - 1) 2^l + 1 and
/// n_t = 2^(l+1) + 1.
struct RefinementLevel {
  int n_t = 0, n_theta = 0, n_z = 0;
  double residual = 0;
};
struct RefinementStudy {
  std::vector<RefinementLevel> levels;
  std::vector<double> orders;   // log2 of successive residual ratios
  double min_order() const;
};
RefinementStudy rigid_refinement(const SurfacePatch& patch, const Vec3& a, const Mat3& B,
                                 double h, int base = 9, int levels = 3);

/// Squared weighted norms entering the two Korn quotients.
struct KornTerms {
  double grad2 = 0;    // ||grad u||^2
  double mass2 = 0;    // ||u||^2
  double strain2 = 0;  // ||e||^2
  double normal2 = 0;  // ||u . n||^2
};

KornTerms korn_terms(const VecField3& u, const SurfacePatch& patch,
                     StrainSource source = StrainSource::full);

/// ||grad u||^2 / (||u.n|| ||e|| / h + ||u||^2 + ||e||^2).
/// Throws std::invalid_argument for u == 0.
double interp_quotient(const VecField3& u, const SurfacePatch& patch,
                       StrainSource source = StrainSource::full);
double interp_quotient(const KornTerms& k, double h);

/// ||grad u||^2 / ((||u||^2 + ||e||^2) / h).
double second_quotient(const VecField3& u, const SurfacePatch& patch,
                       StrainSource source = StrainSource::full);
double second_quotient(const KornTerms& k, double h);

}  // namespace kornshell
