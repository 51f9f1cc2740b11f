#include "kornshell/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace kornshell::kernels {

namespace {

int g_threads = 0;

void check_axis(const Dims& dims, int axis, std::size_t in, std::size_t out) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("diff: axis out of range");
  if (dims[axis] < 3)
    throw std::invalid_argument("diff: axis " + std::to_string(axis) +
                                " has fewer than 3 nodes");
  const std::size_t n = dims[0] * dims[1] * dims[2];
  if (in != n || out != n) throw std::invalid_argument("diff: size mismatch");
}

// Line geometry for a derivative along `axis`: the number of independent
// lines, the node count along the line, and the stride between line nodes.
struct Lines {
  std::size_t count, len, stride;
  std::size_t base(std::size_t line, const Dims& d, int axis) const {
    switch (axis) {
      case 0: return line * d[0];
      case 1: return (line % d[0]) + (line / d[0]) * d[0] * d[1];
      default: return line;
    }
  }
};

Lines lines_for(const Dims& d, int axis) {
  switch (axis) {
    case 0: return {d[1] * d[2], d[0], 1};
    case 1: return {d[0] * d[2], d[1], d[0]};
    default: return {d[0] * d[1], d[2], d[0] * d[1]};
  }
}

inline void diff_line(const double* in, double* out, std::size_t n, std::size_t s,
                      double inv2h) {
  out[0] = (-3.0 * in[0] + 4.0 * in[s] - in[2 * s]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i)
    out[i * s] = (in[(i + 1) * s] - in[(i - 1) * s]) * inv2h;
  out[(n - 1) * s] =
      (in[(n - 3) * s] - 4.0 * in[(n - 2) * s] + 3.0 * in[(n - 1) * s]) * inv2h;
}

// Column j of the 1-D difference matrix gathered against `in`.
inline void diff_line_transpose(const double* in, double* out, std::size_t n,
                                std::size_t s, double inv2h) {
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    if (j <= 2) acc += (j == 0 ? -3.0 : (j == 1 ? 4.0 : -1.0)) * in[0];
    if (j >= 2 && j - 1 <= n - 2) acc += in[(j - 1) * s];
    if (j + 1 >= 1 && j + 1 <= n - 2) acc -= in[(j + 1) * s];
    if (j + 3 >= n) {
      const std::size_t k = j + 3 - n;  // 0,1,2 for columns n-3, n-2, n-1
      acc += (k == 0 ? 1.0 : (k == 1 ? -4.0 : 3.0)) * in[(n - 1) * s];
    }
    out[j * s] = acc * inv2h;
  }
}

}  // namespace

int thread_count() {
  if (g_threads == 0) {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("KORNSHELL_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) n = std::min(n, cap);
    }
    g_threads = std::max(1, n);
  }
  return g_threads;
}

void set_thread_count(int n) { g_threads = std::max(1, n); }

namespace serial {

void diff_axis(std::span<const double> in, std::span<double> out, Dims dims,
               int axis, double spacing) {
  check_axis(dims, axis, in.size(), out.size());
  const Lines l = lines_for(dims, axis);
  const double inv2h = 0.5 / spacing;
  for (std::size_t line = 0; line < l.count; ++line) {
    const std::size_t b = l.base(line, dims, axis);
    diff_line(in.data() + b, out.data() + b, l.len, l.stride, inv2h);
  }
}

void diff_axis_transpose(std::span<const double> in, std::span<double> out,
                         Dims dims, int axis, double spacing) {
  check_axis(dims, axis, in.size(), out.size());
  const Lines l = lines_for(dims, axis);
  const double inv2h = 0.5 / spacing;
  for (std::size_t line = 0; line < l.count; ++line) {
    const std::size_t b = l.base(line, dims, axis);
    diff_line_transpose(in.data() + b, out.data() + b, l.len, l.stride, inv2h);
  }
}

double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * w[i];
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace serial

namespace omp {

void diff_axis(std::span<const double> in, std::span<double> out, Dims dims,
               int axis, double spacing) {
  check_axis(dims, axis, in.size(), out.size());
  const Lines l = lines_for(dims, axis);
  const double inv2h = 0.5 / spacing;
  const auto count = static_cast<std::ptrdiff_t>(l.count);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t line = 0; line < count; ++line) {
    const std::size_t b = l.base(static_cast<std::size_t>(line), dims, axis);
    diff_line(in.data() + b, out.data() + b, l.len, l.stride, inv2h);
  }
}

void diff_axis_transpose(std::span<const double> in, std::span<double> out,
                         Dims dims, int axis, double spacing) {
  check_axis(dims, axis, in.size(), out.size());
  const Lines l = lines_for(dims, axis);
  const double inv2h = 0.5 / spacing;
  const auto count = static_cast<std::ptrdiff_t>(l.count);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t line = 0; line < count; ++line) {
    const std::size_t b = l.base(static_cast<std::size_t>(line), dims, axis);
    diff_line_transpose(in.data() + b, out.data() + b, l.len, l.stride, inv2h);
  }
}

namespace {

template <class Term>
double blocked_sum(std::size_t n, Term term) {
  const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(n, lo + kReduceBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
  if (a.size() != b.size() || a.size() != w.size())
    throw std::invalid_argument("weighted_dot: size mismatch");
  return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i] * w[i]; });
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  return blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace omp

}  // namespace kornshell::kernels
