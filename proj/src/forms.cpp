#include "kornshell/forms.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace kornshell {

QuadraticForm::QuadraticForm(std::string label, std::size_t dim, ApplyFn apply)
    : label_(std::move(label)), dim_(dim), apply_(std::move(apply)) {}

void QuadraticForm::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw std::invalid_argument("QuadraticForm '" + label_ + "': size mismatch");
  apply_(x, y);
}

std::vector<double> QuadraticForm::apply(std::span<const double> x) const {
  std::vector<double> y(dim_);
  apply(x, y);
  return y;
}

double QuadraticForm::energy(std::span<const double> x) const {
  const auto y = apply(x);
  return kernels::dot(x, y);
}

QuadraticForm QuadraticForm::combine(
    std::string label, std::vector<std::pair<double, QuadraticForm>> terms) {
  if (terms.empty()) throw std::invalid_argument("combine: no terms");
  const std::size_t dim = terms.front().second.dim();
  for (const auto& [c, q] : terms)
    if (q.dim() != dim) throw std::invalid_argument("combine: dimension mismatch");
  auto fn = [terms = std::move(terms)](std::span<const double> x, std::span<double> y) {
    std::vector<double> tmp(x.size());
    std::fill(y.begin(), y.end(), 0.0);
    for (const auto& [c, q] : terms) {
      q.apply(x, tmp);
      kernels::axpy(c, tmp, y);
    }
  };
  return QuadraticForm(std::move(label), dim, std::move(fn));
}

ShellForms assemble_forms(const SurfacePatch& patch, const ShellGrid& grid,
                          StrainSource source) {
  ShellForms f;
  f.grid = grid;
  const GradientKind kind =
      source == StrainSource::full ? GradientKind::full : GradientKind::simplified;
  f.op = std::make_shared<const GradientOperator>(patch, grid, kind);
  f.weights = std::make_shared<const std::vector<double>>(quadrature_weights(grid, patch));
  const std::size_t n = grid.size(), dim = 3 * n;
  const auto op = f.op;
  const auto w = f.weights;

  f.M = QuadraticForm("M", dim, [w, n](std::span<const double> x, std::span<double> y) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t q = 0; q < nn; ++q)
      for (std::size_t c = 0; c < 3; ++c) y[c * n + q] = (*w)[q] * x[c * n + q];
  });

  f.Nt = QuadraticForm("N_t", dim, [w, n](std::span<const double> x, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t q = 0; q < n; ++q) y[q] = (*w)[q] * x[q];
  });

  f.G = QuadraticForm("G", dim, [op, w, n](std::span<const double> x, std::span<double> y) {
    std::vector<double> g(9 * n);
    op->apply(x, g);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t q = 0; q < nn; ++q)
      for (std::size_t e = 0; e < 9; ++e) g[e * n + q] *= (*w)[q];
    op->apply_transpose(g, y);
  });

  f.E = QuadraticForm("E", dim, [op, w, n](std::span<const double> x, std::span<double> y) {
    std::vector<double> g(9 * n);
    op->apply(x, g);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t q = 0; q < nn; ++q) {
      const double wq = (*w)[q];
      for (std::size_t i = 0; i < 3; ++i) {
        g[(4 * i) * n + q] *= wq;
        for (std::size_t j = i + 1; j < 3; ++j) {
          const double s = 0.5 * (g[(3 * i + j) * n + q] + g[(3 * j + i) * n + q]) * wq;
          g[(3 * i + j) * n + q] = s;
          g[(3 * j + i) * n + q] = s;
        }
      }
    }
    op->apply_transpose(g, y);
  });
  return f;
}

std::vector<double> mass_diagonal(const ShellForms& forms) {
  const std::size_t n = forms.grid.size();
  std::vector<double> d(3 * n);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t q = 0; q < n; ++q) d[c * n + q] = (*forms.weights)[q];
  return d;
}

LineBlocks probe_line_blocks(const QuadraticForm& form, const ShellGrid& g) {
  const std::size_t n = g.size();
  if (form.dim() != 3 * n) throw std::invalid_argument("probe_line_blocks: dim mismatch");
  const int nt = g.n_t(), nth = g.n_theta(), nz = g.n_z();
  const std::size_t B = 3 * static_cast<std::size_t>(nt);
  const std::size_t lines = static_cast<std::size_t>(nth) * nz;
  LineBlocks out{g, B, std::vector<double>(lines * B * B, 0.0)};

  constexpr int kColors = 5;
  std::vector<double> x(3 * n), y(3 * n);
  auto dof = [&](std::size_t local, int j, int k) {
    const std::size_t c = local / nt, i = local % nt;
    return c * n + g.index(static_cast<int>(i), j, k);
  };
  for (int cj = 0; cj < kColors; ++cj)
    for (int ck = 0; ck < kColors; ++ck)
      for (std::size_t a = 0; a < B; ++a) {
        std::fill(x.begin(), x.end(), 0.0);
        bool any = false;
        for (int k = ck; k < nz; k += kColors)
          for (int j = cj; j < nth; j += kColors) {
            x[dof(a, j, k)] = 1.0;
            any = true;
          }
        if (!any) continue;
        form.apply(x, y);
        for (int k = ck; k < nz; k += kColors)
          for (int j = cj; j < nth; j += kColors) {
            const std::size_t line = static_cast<std::size_t>(j) + static_cast<std::size_t>(nth) * k;
            double* blk = out.entries.data() + line * B * B;
            for (std::size_t b = 0; b < B; ++b) blk[b * B + a] = y[dof(b, j, k)];
          }
      }
  return out;
}

Preconditioner line_block_preconditioner(const LineBlocks& blocks) {
  const ShellGrid g = blocks.grid;
  const std::size_t B = blocks.block, n = g.size();
  const std::size_t lines = static_cast<std::size_t>(g.n_theta()) * g.n_z();
  auto inv = std::make_shared<std::vector<double>>(lines * B * B);
  for (std::size_t l = 0; l < lines; ++l) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        blk(blocks.entries.data() + l * B * B, static_cast<Eigen::Index>(B),
            static_cast<Eigen::Index>(B));
    const Eigen::MatrixXd sym = 0.5 * (blk + blk.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(sym);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("line_block_preconditioner: block not positive definite");
    const Eigen::MatrixXd bi =
        llt.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(B),
                                            static_cast<Eigen::Index>(B)));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        inv->data() + l * B * B, static_cast<Eigen::Index>(B),
        static_cast<Eigen::Index>(B)) = bi;
  }
  const int nt = g.n_t();
  return [inv, B, n, nt, lines](std::span<const double> r, std::span<double> z) {
    const auto nl = static_cast<std::ptrdiff_t>(lines);
#pragma omp parallel for schedule(static) num_threads(kernels::thread_count())
    for (std::ptrdiff_t l = 0; l < nl; ++l) {
      // Line l holds nodes l * nt .. l * nt + nt - 1 within each component.
      const std::size_t base = static_cast<std::size_t>(l) * nt;
      double rl[96];
      double* rb = B <= 96 ? rl : nullptr;
      std::vector<double> heap;
      if (!rb) {
        heap.resize(B);
        rb = heap.data();
      }
      for (std::size_t a = 0; a < B; ++a) rb[a] = r[(a / nt) * n + base + a % nt];
      const double* m = inv->data() + static_cast<std::size_t>(l) * B * B;
      for (std::size_t b = 0; b < B; ++b) {
        double s = 0.0;
        for (std::size_t a = 0; a < B; ++a) s += m[b * B + a] * rb[a];
        z[(b / nt) * n + base + b % nt] = s;
      }
    }
  };
}

Preconditioner diagonal_preconditioner(std::vector<double> diagonal) {
  auto d = std::make_shared<std::vector<double>>(std::move(diagonal));
  return [d](std::span<const double> r, std::span<double> z) {
    for (std::size_t i = 0; i < r.size(); ++i) z[i] = r[i] / (*d)[i];
  };
}

}  // namespace kornshell
