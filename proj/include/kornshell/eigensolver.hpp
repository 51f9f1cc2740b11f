#pragma once

// Largest generalized eigenpair of a symmetric pencil (G, D) with D SPD,
// i.e. the maximum of the Rayleigh quotient <x,Gx>/<x,Dx>.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kornshell/forms.hpp"

namespace kornshell {

struct PcgResult {
  int iterations = 0;
  double relative_residual = 0;
  bool converged = false;
};

/// Preconditioned conjugate gradients for D y = b, starting from y (used as
/// the initial guess).
PcgResult pcg_solve(const QuadraticForm& D, std::span<const double> b,
                    std::span<double> y, const Preconditioner& precond,
                    double rel_tol, int max_iter);

struct EigOptions {
  double tol = 1e-6;          // relative residual ||Gx - lambda Dx||_{D^-1} / lambda
  int max_iter = 400;         // outer iterations
  double inner_tol = 1e-8;    // PCG relative tolerance
  int inner_max_iter = 5000;
  std::uint64_t seed = 42;
  int max_basis = 40;         // subspace size before a thick restart
  int keep_on_restart = 6;
  /// Approximate inverse of D for the inner solves; identity when absent.
  std::optional<Preconditioner> preconditioner;
  /// Optional starting vector; random (seeded) otherwise.
  std::vector<double> start;
};

struct EigResult {
  double lambda = 0;
  std::vector<double> x;      // D-normalized maximizer
  int iterations = 0;
  double residual = 0;        // ||G x - lambda D x||_{D^-1}
  int inner_iterations = 0;   // total PCG iterations
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, EigResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const EigResult& partial() const { return partial_; }

 private:
  EigResult partial_;
};

/// Generalized Davidson iteration: each step solves D w = G x - lambda D x by
/// PCG, D-orthogonalizes w against the basis, and takes the top Ritz pair of
/// the projected pencil. Deterministic for a fixed seed. Throws SolverError
/// on non-convergence (carrying the last iterate) or inner-solve breakdown.
EigResult max_rayleigh(const QuadraticForm& G, const QuadraticForm& D,
                       const EigOptions& opts = {});

}  // namespace kornshell
