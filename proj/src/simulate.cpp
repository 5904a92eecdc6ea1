#include "volterra/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace volterra {

Trajectory simulate(const SystemSpec& spec, const History& history, long steps,
                    const TruncationPolicy& policy) {
  if (steps < 0) throw std::invalid_argument("simulate needs steps >= 0");
  Trajectory traj;
  traj.history = history;
  traj.tail_tolerance_used = policy.tail_tol;
  traj.x.reserve(static_cast<std::size_t>(steps + 1));
  traj.y.reserve(static_cast<std::size_t>(steps + 1));
  const StatePair start = history.at(0);
  traj.x.push_back(start.x);
  traj.y.push_back(start.y);

  const double w1 = spec.f.bound();
  const double w2 = spec.g.bound();
  for (long n = 0; n < steps; ++n) {
    const auto f_of_y = [&](long m) {
      return spec.f(m <= 0 ? history.at(m).y : traj.y[static_cast<std::size_t>(m)]);
    };
    const auto g_of_x = [&](long m) {
      return spec.g(m <= 0 ? history.at(m).x : traj.x[static_cast<std::size_t>(m)]);
    };
    const InnerSum sx = inner_sum(spec.a, n, f_of_y, w1, policy);
    const InnerSum sy = inner_sum(spec.b, n, g_of_x, w2, policy);
    const auto idx = static_cast<std::size_t>(n);
    const double xn = traj.x[idx];
    const double yn = traj.y[idx];
    traj.x.push_back((1.0 + spec.h[n]) * xn + sx.value);
    traj.y.push_back((1.0 + spec.p[n]) * yn + sy.value);
  }
  return traj;
}

Defect residual(const SystemSpec& spec, const SequenceView& xs, const SequenceView& ys, long n,
                const TruncationPolicy& policy) {
  const auto f_of_y = [&](long m) { return spec.f(ys(m)); };
  const auto g_of_x = [&](long m) { return spec.g(xs(m)); };
  const InnerSum sx = inner_sum(spec.a, n, f_of_y, spec.f.bound(), policy);
  const InnerSum sy = inner_sum(spec.b, n, g_of_x, spec.g.bound(), policy);
  const double xn = xs(n);
  const double yn = ys(n);
  return {std::abs(xs(n + 1) - xn - spec.h[n] * xn - sx.value),
          std::abs(ys(n + 1) - yn - spec.p[n] * yn - sy.value)};
}

std::vector<Defect> residuals(const SystemSpec& spec, const SequenceView& xs, const SequenceView& ys,
                              long begin, long end, const TruncationPolicy& policy, Execution exec) {
  std::vector<Defect> out(static_cast<std::size_t>(std::max(0L, end - begin)));
  for_each_index(exec, begin, end, [&](long n) {
    out[static_cast<std::size_t>(n - begin)] = residual(spec, xs, ys, n, policy);
  });
  return out;
}

}  // namespace volterra
