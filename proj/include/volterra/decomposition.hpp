#pragma once

#include <vector>

#include "volterra/sequences.hpp"

namespace volterra {

// x_n = u1_n + v1_n, y_n = u2_n + v2_n on n = 0..horizon with u periodic and
// |v_k[n]| <= vk_bound[n], the bound decaying with the kernel double tail.
struct Decomposition {
  double c1 = 1.0;
  double c2 = 1.0;
  PeriodicSequence u1 = PeriodicSequence::zeros(1);
  PeriodicSequence u2 = PeriodicSequence::zeros(1);
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<double> v1_bound;
  std::vector<double> v2_bound;
  long horizon = 0;
  History history = History::zero();  // values used for n < 0
  double tail_tol = 0.0;
  double truncation_error = 0.0;
  bool converged = false;

  double x(long n) const { return u1[n] + v1.at(static_cast<std::size_t>(n)); }
  double y(long n) const { return u2[n] + v2.at(static_cast<std::size_t>(n)); }

  // Full-line views: history below zero, u + v on the window.
  double x_full(long n) const { return n < 0 ? history.at(n).x : x(n); }
  double y_full(long n) const { return n < 0 ? history.at(n).y : y(n); }
};

}  // namespace volterra
