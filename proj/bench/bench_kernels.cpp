// Serial reference vs OpenMP kernels on a production-size shell grid
// (8 x 48 x 48 nodes, three components).

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "kornshell/kernels.hpp"
#include "kornshell/shell_ops.hpp"

using namespace kornshell;

namespace {

const kernels::Dims kDims{8, 48, 48};
constexpr std::size_t kSize = 8 * 48 * 48;

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <auto Fn>
void BM_diff(benchmark::State& st) {
  const auto in = random_values(kSize, 1);
  std::vector<double> out(kSize);
  const int axis = static_cast<int>(st.range(0));
  for (auto _ : st) {
    Fn(in, out, kDims, axis, 0.01);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * kSize);
}

template <auto Fn>
void BM_dot(benchmark::State& st) {
  const auto a = random_values(9 * kSize, 2), b = random_values(9 * kSize, 3);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(a, b));
  st.SetItemsProcessed(st.iterations() * 9 * kSize);
}

template <bool Reference>
void BM_gradient(benchmark::State& st) {
  const auto cyl = make_cylinder(1, std::acos(-1.0), 1);
  const auto g = ShellGrid::over(cyl, 0.05, 8, 48, 48);
  const VecField3 u = VecField3::from_dofs(g, random_values(3 * g.size(), 4));
  const GradientOperator op(cyl, g);
  for (auto _ : st) {
    if constexpr (Reference) {
      auto m = gradient_reference(u, cyl);
      benchmark::DoNotOptimize(m.channel(0)[0]);
    } else {
      auto m = op(u);
      benchmark::DoNotOptimize(m.channel(0)[0]);
    }
  }
}

}  // namespace

BENCHMARK(BM_diff<kernels::serial::diff_axis>)->Name("diff_axis/serial")->DenseRange(0, 2);
BENCHMARK(BM_diff<kernels::omp::diff_axis>)->Name("diff_axis/omp")->DenseRange(0, 2);
BENCHMARK(BM_dot<kernels::serial::dot>)->Name("dot/serial");
BENCHMARK(BM_dot<kernels::omp::dot>)->Name("dot/omp");
BENCHMARK(BM_gradient<true>)->Name("gradient/reference")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gradient<false>)->Name("gradient/operator")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
