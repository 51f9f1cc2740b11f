#pragma once

// Data-parallel inner loops shared by every module.
//
// Each kernel exists twice: a plain serial version kept as the reference the
// tests compare against, and an OpenMP version used by the library. Arrays are
// dense 3-D blocks with the first dimension fastest.

#include <array>
#include <cstddef>
#include <span>

namespace kornshell::kernels {

using Dims = std::array<std::size_t, 3>;

/// Reductions are summed in blocks of this many entries, then the block sums
/// are added in order. The result is therefore independent of thread count.
inline constexpr std::size_t kReduceBlock = 4096;

/// Number of OpenMP threads the parallel kernels use. Honors
/// KORNSHELL_THREADS (a cap) on first call.
int thread_count();
void set_thread_count(int n);

namespace serial {

/// Second-order derivative along `axis`: central differences inside, one-sided
/// three-point stencils at both ends. Requires dims[axis] >= 3.
void diff_axis(std::span<const double> in, std::span<double> out, Dims dims,
               int axis, double spacing);

/// Adjoint (matrix transpose) of diff_axis.
void diff_axis_transpose(std::span<const double> in, std::span<double> out,
                         Dims dims, int axis, double spacing);

/// sum_i a_i b_i w_i, left to right.
double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace serial

namespace omp {

void diff_axis(std::span<const double> in, std::span<double> out, Dims dims,
               int axis, double spacing);
void diff_axis_transpose(std::span<const double> in, std::span<double> out,
                         Dims dims, int axis, double spacing);

/// Blocked deterministic reduction (see kReduceBlock).
double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace omp

using omp::axpy;
using omp::diff_axis;
using omp::diff_axis_transpose;
using omp::dot;
using omp::weighted_dot;

}  // namespace kornshell::kernels
