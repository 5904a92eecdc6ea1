#pragma once

#include <functional>
#include <vector>

#include "volterra/execution.hpp"
#include "volterra/kernels.hpp"
#include "volterra/sequences.hpp"
#include "volterra/system.hpp"

namespace volterra {

// Full-line read access to one component of a candidate solution.
using SequenceView = std::function<double(long)>;

struct Defect {
  double x = 0.0;
  double y = 0.0;

  double max() const noexcept { return x > y ? x : y; }
};

// Forward iteration of
//   x_{n+1} = (1 + h_n) x_n + sum_{i<=n} a_{n,i} f(y_i)
//   y_{n+1} = (1 + p_n) y_n + sum_{i<=n} b_{n,i} g(x_i)
// for n = 0..steps-1, starting from the history. Each delay sum carries a tail
// certified below policy.tail_tol.
Trajectory simulate(const SystemSpec& spec, const History& history, long steps,
                    const TruncationPolicy& policy);

// |x_{n+1} - x_n - h_n x_n - sum a f(y)| and the y analogue. Views must be
// total on m <= n + 1.
Defect residual(const SystemSpec& spec, const SequenceView& xs, const SequenceView& ys, long n,
                const TruncationPolicy& policy);

// residual() for n in [begin, end).
std::vector<Defect> residuals(const SystemSpec& spec, const SequenceView& xs, const SequenceView& ys,
                              long begin, long end, const TruncationPolicy& policy,
                              Execution exec = Execution::Serial);

}  // namespace volterra
