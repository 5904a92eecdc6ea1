#pragma once

#include <string>
#include <vector>

#include "volterra/decomposition.hpp"
#include "volterra/execution.hpp"
#include "volterra/fixed_point.hpp"
#include "volterra/kernels.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/sequences.hpp"
#include "volterra/system.hpp"

namespace volterra {

// phi_n = prod_{j=0}^{n-1} 1/(1 + h_j), psi likewise with p. Periodic when the
// full-period product is 1; slot 0 holds phi_T.
struct PhiPsi {
  PeriodicSequence phi = PeriodicSequence::zeros(1);
  PeriodicSequence psi = PeriodicSequence::zeros(1);
  double m1 = 0.0;
  double M1 = 0.0;
  double m2 = 0.0;
  double M2 = 0.0;
};

// Throws ZeroFactor when some 1 + h_n or 1 + p_n vanishes, PeriodProductNotOne
// when a full-period product differs from 1.
PhiPsi phi_psi(const SystemSpec& spec);

// Values on n = 0..horizon.
struct Window {
  std::vector<double> x;
  std::vector<double> y;

  long horizon() const noexcept { return static_cast<long>(x.size()) - 1; }
};

struct EStarResult {
  Window value;      // E*(z)
  Window deviation;  // E*(z) - c/phi, summed directly
  double truncation_error = 0.0;
  long outer_cut = 0;  // last outer index i kept
};

// The tail map on a finite window:
//   E1*(x,y)_n = c1/phi_n - sum_{i>=n} sum_{m<=i} (phi_{i+1}/phi_n) a_{i,m} f(y_m)
// with the outer sum cut where M1/m1 W1 double_tail(a, cut+1) <= eps, values
// beyond the window closed by u2 = c2/psi (u1 for the x side) and values
// below zero read from the history.
class AsymptoticOperator {
 public:
  AsymptoticOperator(const SystemSpec& spec, double c1, double c2, long horizon, const TruncationPolicy& policy,
                     History history = History::zero(), Execution exec = Execution::Serial);

  EStarResult apply(const Window& z) const;
  std::vector<double> apply_packed(const std::vector<double>& z) const;

  double u1(long n) const { return c1_ / pp_.phi[n]; }
  double u2(long n) const { return c2_ / pp_.psi[n]; }
  Window closure() const;  // u on the window

  // Envelopes on |v|: M/m W double_tail(n).
  double v1_bound(long n) const { return scale1_ == 0.0 ? 0.0 : scale1_ * a_.double_tail(n); }
  double v2_bound(long n) const { return scale2_ == 0.0 ? 0.0 : scale2_ * b_.double_tail(n); }

  const PhiPsi& phi_psi() const noexcept { return pp_; }
  long horizon() const noexcept { return horizon_; }
  long outer_cut() const noexcept { return cut_; }
  double w_star() const noexcept { return w_star_; }

 private:
  SystemSpec spec_;
  Kernel a_;
  Kernel b_;
  double c1_;
  double c2_;
  long horizon_;
  TruncationPolicy policy_;
  History history_;
  Execution exec_;
  PhiPsi pp_;
  double scale1_;
  double scale2_;
  double w_star_;
  long cut_;
  double fixed_error_;  // outer cut + window closure
};

EStarResult apply_E_star(const SystemSpec& spec, double c1, double c2, const Window& z, long horizon,
                         const TruncationPolicy& policy, Execution exec = Execution::Serial);

// Smallest n >= 4T with both envelopes <= 1e-12.
long default_horizon(const SystemSpec& spec);

struct AsymptoticSolveReport {
  Decomposition decomposition;
  long iterations = 0;
  Method method_used = Method::DampedPicard;
  double final_update_norm = 0.0;
  double residual_max = 0.0;
  bool envelope_ok = false;
  bool decay_ok = false;
  long outer_cut = 0;
  double w_star = 0.0;
  double solution_norm = 0.0;
  std::vector<std::string> warnings;
  bool converged = false;
};

// Window fixed point of E* and its split x = u + v. Requires horizon >= 4T.
AsymptoticSolveReport solve_asymptotic(const SystemSpec& spec, double c1, double c2, long horizon,
                                       const SolverOptions& opts, const TruncationPolicy& policy,
                                       const History& history = History::zero());

}  // namespace volterra
