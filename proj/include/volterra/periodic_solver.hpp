#pragma once

#include <optional>
#include <vector>

#include "volterra/fixed_point.hpp"
#include "volterra/kernels.hpp"
#include "volterra/sequences.hpp"
#include "volterra/system.hpp"

namespace volterra {

struct SolverOptions {
  double tol = 1e-12;
  double residual_tol = 1e-8;
  long max_iter = 500;
  double damping = 0.5;
  Strategy strategy = Strategy::PicardThenNewton;
  std::optional<PeriodicPair> initial_guess;  // zero when empty
  Execution exec = Execution::Serial;

  FixedPointOptions fixed_point() const { return {tol, max_iter, damping, strategy, exec}; }
};

// [1 - prod_{l=0}^{T-1}(1 + seq_l)]^{-1}. Throws PeriodProductIsOne when the
// product is within kUnitProductTol of 1.
double alpha(const PeriodicSequence& seq);

// The period map E restricted to T-periodic pairs:
//   E1(x,y)_n = alpha_h sum_{i=n}^{n+T-1} prod_{l=i+1}^{n+T-1}(1+h_l) sum_{m<=i} a_{i,m} f(y_m)
// and E2 symmetrically. Because the input is periodic, each delay sum is
// evaluated exactly through the lag-folded kernel weights.
class PeriodicOperator {
 public:
  // Throws PeriodProductIsOne or NotDiagonalPeriodic.
  explicit PeriodicOperator(const SystemSpec& spec);

  PeriodicPair apply(const PeriodicPair& z) const;

  // Packed form [x_0..x_{T-1}, y_0..y_{T-1}] used by the solver.
  std::vector<double> apply_packed(const std::vector<double>& z) const;

  double alpha_h() const noexcept { return alpha_h_; }
  double alpha_p() const noexcept { return alpha_p_; }
  long period() const noexcept { return period_; }

 private:
  void apply_component(const std::vector<std::vector<double>>& coeff, const FoldedWeights& folded,
                       const Nonlinearity& fn, const double* source, double* out) const;

  long period_;
  Nonlinearity f_;
  Nonlinearity g_;
  double alpha_h_;
  double alpha_p_;
  FoldedWeights fold_a_;
  FoldedWeights fold_b_;
  // coeff[n][j] = alpha * prod_{l=n+j+1}^{n+T-1}(1 + c_l)
  std::vector<std::vector<double>> coeff_x_;
  std::vector<std::vector<double>> coeff_y_;
};

PeriodicPair apply_E(const SystemSpec& spec, const PeriodicPair& z);

std::vector<double> pack(const PeriodicPair& z);
PeriodicPair unpack(const std::vector<double>& packed);

struct PeriodicSolveReport {
  PeriodicPair solution{PeriodicSequence::zeros(1), PeriodicSequence::zeros(1)};
  double alpha_h = 0.0;
  double alpha_p = 0.0;
  long iterations = 0;
  Method method_used = Method::DampedPicard;
  double final_update_norm = 0.0;
  double residual_max = 0.0;  // direct residual over n = 0..5T
  double drift_max = 0.0;     // forward simulation over 10 periods
  double solution_norm = 0.0;
  bool converged = false;
};

// Finds z = E(z) on one period and certifies the periodic extension with the
// independent verifier. Throws PeriodProductIsOne / NotDiagonalPeriodic when
// the operator is undefined; non-convergence is reported, not thrown.
PeriodicSolveReport solve_periodic(const SystemSpec& spec, const SolverOptions& opts);

}  // namespace volterra
