// Serial reference loops against the OpenMP paths.

#include <benchmark/benchmark.h>

#include <cmath>

#include "volterra/asymptotic_solver.hpp"
#include "volterra/fixed_point.hpp"
#include "volterra/simulate.hpp"

using namespace volterra;

namespace {

SystemSpec slow_decay() {
  SystemSpec s;
  s.period = 2;
  s.h = PeriodicSequence({-0.5, 1.0});
  s.p = PeriodicSequence({-0.5, 1.0});
  s.a = Kernel::separable_exponential(1.0, 0.05, 0.1);
  s.b = Kernel::separable_exponential(1.0, 0.05, 0.1);
  s.f = Nonlinearity(NonlinearityKind::Cos, 1.0, 1.0);
  s.g = Nonlinearity(NonlinearityKind::Cos, 1.0, 2.0);
  return s;
}

Execution mode(const benchmark::State& st) { return st.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_EStarApply(benchmark::State& st) {
  const long horizon = st.range(0);
  const AsymptoticOperator op(slow_decay(), 1, 1, horizon, TruncationPolicy{1e-10, 100000}, History::zero(), mode(st));
  std::vector<double> z(static_cast<std::size_t>(2 * (horizon + 1)), 0.25);
  for (auto _ : st) benchmark::DoNotOptimize(op.apply_packed(z));
}

void BM_Residuals(benchmark::State& st) {
  const SystemSpec s = slow_decay();
  const auto xs = [](long m) { return std::sin(0.1 * double(m)); };
  const auto ys = [](long m) { return std::cos(0.1 * double(m)); };
  for (auto _ : st) benchmark::DoNotOptimize(residuals(s, xs, ys, 0, st.range(0), {}, mode(st)));
}

void BM_Jacobian(benchmark::State& st) {
  const long horizon = st.range(0);
  const AsymptoticOperator op(slow_decay(), 1, 1, horizon, TruncationPolicy{1e-10, 100000});
  const VectorMap map = [&](const std::vector<double>& z) { return op.apply_packed(z); };
  std::vector<double> z(static_cast<std::size_t>(2 * (horizon + 1)), 0.25);
  for (auto _ : st) benchmark::DoNotOptimize(fixed_point_jacobian(map, z, mode(st)));
}

}  // namespace

BENCHMARK(BM_EStarApply)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Residuals)->ArgsProduct({{200, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jacobian)->ArgsProduct({{20, 40}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
