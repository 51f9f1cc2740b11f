#pragma once

// Quadratic functionals of the discrete displacement, applied matrix-free.
//
// For a DOF vector x of u on a (patch, grid):
//   <x, G x>  = ||grad u||^2        <x, M x>  = ||u||^2
//   <x, E x>  = ||e(u)||^2          <x, Nt x> = ||u_t||^2
// with the weighted trapezoidal norms of grid.hpp. G and E are applied as
// K^T W K and K^T W sym(K x) with K the gradient operator.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kornshell/grid.hpp"
#include "kornshell/shell_ops.hpp"
#include "kornshell/surface.hpp"

namespace kornshell {

class QuadraticForm {
 public:
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  QuadraticForm() = default;
  QuadraticForm(std::string label, std::size_t dim, ApplyFn apply);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }

  /// y = Q x. Both spans have length dim().
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  /// <x, Q x>
  double energy(std::span<const double> x) const;

  /// sum_k c_k Q_k; all terms must share dim().
  static QuadraticForm combine(std::string label,
                               std::vector<std::pair<double, QuadraticForm>> terms);

 private:
  std::string label_;
  std::size_t dim_ = 0;
  ApplyFn apply_;
};

/// The four forms of one (patch, grid) plus the data they share.
struct ShellForms {
  ShellGrid grid;
  std::shared_ptr<const GradientOperator> op;
  std::shared_ptr<const std::vector<double>> weights;
  QuadraticForm G, M, E, Nt;
};

ShellForms assemble_forms(const SurfacePatch& patch, const ShellGrid& grid,
                          StrainSource source = StrainSource::full);

/// Approximate inverse of an SPD form, z = P r.
using Preconditioner = std::function<void(std::span<const double>, std::span<double>)>;

/// Exact diagonal blocks of `form` restricted to each through-thickness line
/// (3 n_t DOFs at fixed theta, z), obtained by colored probing. The form must
/// couple nodes at most 4 apart per axis, which holds for every form built
/// from the gradient operator.
struct LineBlocks {
  ShellGrid grid;
  std::size_t block = 0;             // 3 n_t
  std::vector<double> entries;       // n_lines * block * block, row-major
};
LineBlocks probe_line_blocks(const QuadraticForm& form, const ShellGrid& grid);

/// Block-Jacobi preconditioner from Cholesky factors of the line blocks.
Preconditioner line_block_preconditioner(const LineBlocks& blocks);

/// Diagonal preconditioner z = r / d.
Preconditioner diagonal_preconditioner(std::vector<double> diagonal);

/// Diagonal of the mass form on the DOF layout.
std::vector<double> mass_diagonal(const ShellForms& forms);

}  // namespace kornshell
