#pragma once

#include <functional>
#include <vector>

#include "volterra/decomposition.hpp"
#include "volterra/execution.hpp"
#include "volterra/kernels.hpp"
#include "volterra/sequences.hpp"
#include "volterra/system.hpp"

namespace volterra {

// Independent certification. Nothing here uses lag folding or the truncation
// planner: delay sums run directly over a fixed depth and the dropped part is
// bounded from the kernel value at the cut.

struct DirectSum {
  double value = 0.0;
  double remainder = 0.0;  // bound on sum_{m < i - depth} |a_{i,m}| * bound
};

// sum_{m = i - depth}^{i} a_{i,m} * values(m), depth raised to the kernel's
// support for finite lag kernels.
DirectSum direct_delay_sum(const Kernel& k, long i, const std::function<double(long)>& values,
                           long depth, double bound);

struct VerifyOptions {
  long depth = 200;
  long drift_periods = 10;
  TruncationPolicy drift_policy{1e-14, 100000};
  Execution exec = Execution::Serial;
};

struct DefectSample {
  long n = 0;
  double x = 0.0;
  double y = 0.0;
};

// Residuals of the system at n in [begin, end) for full-line views.
std::vector<DefectSample> direct_residuals(const SystemSpec& spec, const std::function<double(long)>& xs,
                                           const std::function<double(long)>& ys, long begin, long end,
                                           long depth, Execution exec = Execution::Serial);

struct PeriodicVerification {
  double max_defect_x = 0.0;
  double max_defect_y = 0.0;
  double max_defect = 0.0;
  double max_remainder = 0.0;
  double max_drift = 0.0;  // 0 when drift_periods == 0
  long n_checks = 0;
  long drift_steps = 0;
};

// Residual of the periodic extension at n = 0..n_checks-1 plus the drift of a
// forward simulation seeded with the periodic solution as history.
PeriodicVerification verify_periodic(const SystemSpec& spec, const PeriodicPair& sol, long n_checks,
                                     const VerifyOptions& opts = {});

struct DecompositionVerification {
  bool u_periodic = false;
  double u_product_gap = 0.0;  // max |u - c prod(1 + h)| over n in 0..10T
  bool envelope_ok = false;
  long first_envelope_violation = -1;
  bool residual_ok = false;
  double max_residual = 0.0;
  bool decay_ok = false;
  bool pass = false;
};

DecompositionVerification verify_decomposition(const SystemSpec& spec, const Decomposition& dec,
                                               double residual_tol = 1e-8,
                                               const VerifyOptions& opts = {});


struct SelfMapSample {
  long samples = 0;
  double radius = 0.0;      // sampled states satisfy ||z|| <= radius
  double bound = 0.0;       // claimed bound on ||map(z)||
  double max_image = 0.0;   // largest ||map(z)|| seen
  bool pass = false;        // max_image <= bound + slack
};

// States uniform in the ball of radius W (periodic regime radius), images
// under the period map compared with max{W1 K1, W2 K2}.
SelfMapSample sample_self_map_periodic(const SystemSpec& spec, long samples, unsigned long long seed,
                                       double slack = 1e-9);

// Windows uniform in the ball of radius W*, images under the tail map
// compared with W* + 10 eps.
SelfMapSample sample_self_map_asymptotic(const SystemSpec& spec, double c1, double c2, long horizon,
                                         const TruncationPolicy& policy, long samples, unsigned long long seed);

}  // namespace volterra
