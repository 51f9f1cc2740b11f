#include "kornshell/shell_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kornshell {

namespace {

// Coefficients of one (theta, z) column of nodes.
struct Column {
  double a_th, a_z, k_th, k_z, dath_dz, daz_dth;
};

Column column_at(const SurfacePatch& p, double th, double z) {
  return {p.a_theta(th, z),     p.a_z(th, z),         p.kappa_theta(th, z),
          p.kappa_z(th, z),     p.da_theta_dz(th, z), p.da_z_dtheta(th, z)};
}

constexpr double kMinMetricFactor = 0.5;

}  // namespace

GradientOperator::GradientOperator(const SurfacePatch& patch, const ShellGrid& grid,
                                   GradientKind kind)
    : grid_(grid), kind_(kind) {
  const std::size_t n = grid.size();
  auto field = [n] { return std::vector<double>(n); };

  std::vector<double> inv_ath_sth = field(), inv_az_sz = field();
  std::vector<double> m_kth = field(), m_kz = field(), p_kth = field(), p_kz = field();
  std::vector<double> m_dath = field(), p_dath = field();
  std::vector<double> m_daz = field(), p_daz = field();

  for (int k = 0; k < grid.n_z(); ++k)
    for (int j = 0; j < grid.n_theta(); ++j) {
      const Column c = column_at(patch, grid.theta(j), grid.z(k));
      for (int i = 0; i < grid.n_t(); ++i) {
        const double t = grid.t(i);
        double s_th = 1.0 + t * c.k_th, s_z = 1.0 + t * c.k_z;
        if (s_th < kMinMetricFactor || s_z < kMinMetricFactor)
          throw std::domain_error(
              "shell too thick for patch '" + patch.name() + "': 1 + t*kappa = " +
              std::to_string(std::min(s_th, s_z)) + " < 1/2");
        if (kind == GradientKind::simplified) s_th = s_z = 1.0;
        const std::size_t q = grid.index(i, j, k);
        inv_ath_sth[q] = 1.0 / (c.a_th * s_th);
        inv_az_sz[q] = 1.0 / (c.a_z * s_z);
        p_kth[q] = c.k_th / s_th;
        m_kth[q] = -p_kth[q];
        p_kz[q] = c.k_z / s_z;
        m_kz[q] = -p_kz[q];
        p_dath[q] = c.dath_dz / (c.a_z * c.a_th * s_th);
        m_dath[q] = -p_dath[q];
        p_daz[q] = c.daz_dth / (c.a_z * c.a_th * s_z);
        m_daz[q] = -p_daz[q];
      }
    }

  // Entry (i, j) is terms_[3 i + j]; components and axes are 0 = t,
  // 1 = theta, 2 = z.
  terms_[0] = {{0, 0, {}}};
  terms_[1] = {{0, 1, inv_ath_sth}, {1, -1, m_kth}};
  terms_[2] = {{0, 2, inv_az_sz}, {2, -1, m_kz}};
  terms_[3] = {{1, 0, {}}};
  terms_[4] = {{1, 1, inv_ath_sth}, {0, -1, p_kth}, {2, -1, p_dath}};
  terms_[5] = {{1, 2, inv_az_sz}, {2, -1, m_daz}};
  terms_[6] = {{2, 0, {}}};
  terms_[7] = {{2, 1, inv_ath_sth}, {1, -1, m_dath}};
  terms_[8] = {{2, 2, inv_az_sz}, {0, -1, p_kz}, {1, -1, p_daz}};
}

void GradientOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = grid_.size();
  if (x.size() != 3 * n || y.size() != 9 * n)
    throw std::invalid_argument("GradientOperator::apply: size mismatch");
  const auto dims = grid_.dims();

  // D_axis u_comp for every (comp, axis), stored at 3 comp + axis.
  std::vector<double> d(9 * n);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      kernels::diff_axis(x.subspan(c * n, n), std::span(d).subspan((3 * c + a) * n, n),
                         dims, a, grid_.spacing(static_cast<Axis>(a)));

  const auto nn = static_cast<std::ptrdiff_t>(n);
  for (int e = 0; e < 9; ++e) {
    double* out = y.data() + e * n;
    const auto& terms = terms_[e];
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t q = 0; q < nn; ++q) {
      double acc = 0.0;
      for (const Term& tm : terms) {
        const double src = tm.axis < 0 ? x[tm.comp * n + q] : d[(3 * tm.comp + tm.axis) * n + q];
        acc += (tm.coef.empty() ? 1.0 : tm.coef[q]) * src;
      }
      out[q] = acc;
    }
  }
}

void GradientOperator::apply_transpose(std::span<const double> y,
                                       std::span<double> x) const {
  const std::size_t n = grid_.size();
  if (x.size() != 3 * n || y.size() != 9 * n)
    throw std::invalid_argument("GradientOperator::apply_transpose: size mismatch");
  const auto dims = grid_.dims();
  const auto nn = static_cast<std::ptrdiff_t>(n);

  // Gather the weighted channels feeding each (comp, axis) derivative and
  // each comp's point-wise terms.
  std::vector<double> by_deriv(9 * n, 0.0);
  std::fill(x.begin(), x.end(), 0.0);
  for (int e = 0; e < 9; ++e) {
    const double* in = y.data() + e * n;
    for (const Term& tm : terms_[e]) {
      double* dst = tm.axis < 0 ? x.data() + tm.comp * n
                                : by_deriv.data() + (3 * tm.comp + tm.axis) * n;
      const double* coef = tm.coef.empty() ? nullptr : tm.coef.data();
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
      for (std::ptrdiff_t q = 0; q < nn; ++q) dst[q] += (coef ? coef[q] : 1.0) * in[q];
    }
  }
  std::vector<double> tmp(n);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) {
      kernels::diff_axis_transpose(std::span<const double>(by_deriv).subspan((3 * c + a) * n, n),
                                   tmp, dims, a, grid_.spacing(static_cast<Axis>(a)));
      kernels::axpy(1.0, tmp, x.subspan(c * n, n));
    }
}

FrameMatrixField GradientOperator::operator()(const VecField3& u) const {
  if (!(u.grid() == grid_)) throw std::invalid_argument("gradient: grid mismatch");
  const std::size_t n = grid_.size();
  const auto x = u.dofs();
  std::vector<double> y(9 * n);
  apply(x, y);
  FrameMatrixField m(grid_);
  for (int e = 0; e < 9; ++e) {
    auto dst = m.channel(e).values();
    std::copy(y.begin() + static_cast<std::ptrdiff_t>(e * n),
              y.begin() + static_cast<std::ptrdiff_t>((e + 1) * n), dst.begin());
  }
  return m;
}

FrameMatrixField gradient(const VecField3& u, const SurfacePatch& patch) {
  return GradientOperator(patch, u.grid(), GradientKind::full)(u);
}

FrameMatrixField simplified_gradient(const VecField3& u, const SurfacePatch& patch) {
  return GradientOperator(patch, u.grid(), GradientKind::simplified)(u);
}

FrameMatrixField gradient_reference(const VecField3& u, const SurfacePatch& patch,
                                    GradientKind kind) {
  const ShellGrid& g = u.grid();
  const auto dims = g.dims();
  // du[c][a] = partial of component c along axis a.
  std::array<std::array<ScalarField, 3>, 3> du;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a) {
      du[c][a] = ScalarField(g);
      kernels::serial::diff_axis(u[c].values(), du[c][a].values(), dims, a,
                                 g.spacing(static_cast<Axis>(a)));
    }
  FrameMatrixField m(g);
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j) {
      const Column c = column_at(patch, g.theta(j), g.z(k));
      const double at = c.a_th, az = c.a_z;
      for (int i = 0; i < g.n_t(); ++i) {
        const double t = kind == GradientKind::full ? g.t(i) : 0.0;
        const double s_th = 1.0 + t * c.k_th, s_z = 1.0 + t * c.k_z;
        if (kind == GradientKind::full &&
            (s_th < kMinMetricFactor || s_z < kMinMetricFactor))
          throw std::domain_error("shell too thick for patch '" + patch.name() + "'");
        const std::size_t q = g.index(i, j, k);
        const double ut = u.t[q], uth = u.theta[q], uz = u.z[q];
        auto D = [&](int comp, int axis) { return du[comp][axis][q]; };
        m(0, 0)[q] = D(0, 0);
        m(0, 1)[q] = (D(0, 1) - at * c.k_th * uth) / (at * s_th);
        m(0, 2)[q] = (D(0, 2) - az * c.k_z * uz) / (az * s_z);
        m(1, 0)[q] = D(1, 0);
        m(1, 1)[q] = (az * D(1, 1) + az * at * c.k_th * ut + c.dath_dz * uz) /
                     (az * at * s_th);
        m(1, 2)[q] = (at * D(1, 2) - c.daz_dth * uz) / (az * at * s_z);
        m(2, 0)[q] = D(2, 0);
        m(2, 1)[q] = (az * D(2, 1) - c.dath_dz * uth) / (az * at * s_th);
        m(2, 2)[q] = (at * D(2, 2) + az * at * c.k_z * ut + c.daz_dth * uth) /
                     (az * at * s_z);
      }
    }
  return m;
}

FrameMatrixField strain(const FrameMatrixField& m) {
  FrameMatrixField e(m.grid());
  const std::size_t n = m.grid().size();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t q = 0; q < n; ++q) e(i, j)[q] = 0.5 * (m(i, j)[q] + m(j, i)[q]);
  return e;
}

FrameMatrixField skew_part(const FrameMatrixField& m) {
  FrameMatrixField w(m.grid());
  const std::size_t n = m.grid().size();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t q = 0; q < n; ++q) w(i, j)[q] = 0.5 * (m(i, j)[q] - m(j, i)[q]);
  return w;
}

ScalarField normal_component(const VecField3& u) { return u.t; }

VecField3 rigid_motion_field(const Vec3& a, const Mat3& B, const SurfacePatch& patch,
                             const ShellGrid& g) {
  double scale = 0.0, asym = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      scale = std::max(scale, std::abs(B[i][j]));
      asym = std::max(asym, std::abs(B[i][j] + B[j][i]));
    }
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("rigid_motion_field: B is not skew-symmetric");

  VecField3 u(g);
  auto dot = [](const Vec3& x, const Vec3& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  for (int k = 0; k < g.n_z(); ++k)
    for (int j = 0; j < g.n_theta(); ++j) {
      const double th = g.theta(j), z = g.z(k);
      const Vec3 r = patch.embedding(th, z);
      const Frame f = eval_frame(patch, th, z);
      for (int i = 0; i < g.n_t(); ++i) {
        const double t = g.t(i);
        const Vec3 X{r[0] + t * f.n[0], r[1] + t * f.n[1], r[2] + t * f.n[2]};
        Vec3 v = a;
        for (int p = 0; p < 3; ++p)
          for (int s = 0; s < 3; ++s) v[p] += B[p][s] * X[s];
        const std::size_t q = g.index(i, j, k);
        u.t[q] = dot(v, f.n);
        u.theta[q] = dot(v, f.e_theta);
        u.z[q] = dot(v, f.e_z);
      }
    }
  return u;
}

double RefinementStudy::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  for (double o : orders) m = std::min(m, o);
  return m;
}

RefinementStudy rigid_refinement(const SurfacePatch& patch, const Vec3& a, const Mat3& B,
                                 double h, int base, int levels) {
  if (base < 3 || levels < 2) throw std::invalid_argument("rigid_refinement: need base >= 3, levels >= 2");
  RefinementStudy st;
  for (int l = 0; l < levels; ++l) {
    const int n = (base - 1) * (1 << l) + 1;
    const ShellGrid g = ShellGrid::over(patch, h, (1 << (l + 1)) + 1, n, n);
    const VecField3 u = rigid_motion_field(a, B, patch, g);
    const auto w = quadrature_weights(g, patch);
    const FrameMatrixField grad = gradient(u, patch);
    const double gn = norm(grad, w);
    if (!(gn > 0.0)) throw std::invalid_argument("rigid_refinement: rigid field has zero gradient");
    st.levels.push_back({g.n_t(), g.n_theta(), g.n_z(), norm(strain(grad), w) / gn});
  }
  for (std::size_t l = 1; l < st.levels.size(); ++l)
    st.orders.push_back(std::log2(st.levels[l - 1].residual / st.levels[l].residual));
  return st;
}

KornTerms korn_terms(const VecField3& u, const SurfacePatch& patch,
                     StrainSource source) {
  const auto w = quadrature_weights(u.grid(), patch);
  const GradientKind kind =
      source == StrainSource::full ? GradientKind::full : GradientKind::simplified;
  const FrameMatrixField g = GradientOperator(patch, u.grid(), kind)(u);
  const FrameMatrixField e = strain(g);
  KornTerms k;
  const double gn = norm(g, w), un = norm(u, w), en = norm(e, w), nn = norm(u.t, w);
  k.grad2 = gn * gn;
  k.mass2 = un * un;
  k.strain2 = en * en;
  k.normal2 = nn * nn;
  return k;
}

double interp_quotient(const KornTerms& k, double h) {
  if (!(k.mass2 > 0.0)) throw std::invalid_argument("Korn quotient of the zero field");
  return k.grad2 /
         (std::sqrt(k.normal2) * std::sqrt(k.strain2) / h + k.mass2 + k.strain2);
}

double second_quotient(const KornTerms& k, double h) {
  if (!(k.mass2 > 0.0)) throw std::invalid_argument("Korn quotient of the zero field");
  return k.grad2 / ((k.mass2 + k.strain2) / h);
}

double interp_quotient(const VecField3& u, const SurfacePatch& patch,
                       StrainSource source) {
  return interp_quotient(korn_terms(u, patch, source), u.grid().h());
}

double second_quotient(const VecField3& u, const SurfacePatch& patch,
                       StrainSource source) {
  return second_quotient(korn_terms(u, patch, source), u.grid().h());
}

}  // namespace kornshell
