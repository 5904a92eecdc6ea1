#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "volterra/errors.hpp"

namespace volterra {

// a_{n,i} = coef * exp(row_rate * i - col_rate * n) for i <= n.
struct SeparableExponential {
  double coef = 1.0;
  double row_rate = 1.0;  // rho > 0
  double col_rate = 1.0;  // sigma

  friend bool operator==(const SeparableExponential&, const SeparableExponential&) = default;
};

// a_{n,i} = weights[n mod P][n - i] for 0 <= n - i <= L, zero otherwise.
// P = weights.size(); every row has L + 1 entries.
struct FiniteLag {
  std::vector<std::vector<double>> weights;

  long period() const noexcept { return static_cast<long>(weights.size()); }
  long max_lag() const noexcept { return static_cast<long>(weights.front().size()) - 1; }
  const std::vector<double>& row(long n) const noexcept {
    const long p = period();
    const long r = n % p;
    return weights[static_cast<std::size_t>(r < 0 ? r + p : r)];
  }

  friend bool operator==(const FiniteLag&, const FiniteLag&) = default;
};

struct TruncationPolicy {
  double tail_tol = 1e-12;  // epsilon: certified bound on each dropped tail
  long max_terms = 100000;
};

// Lag-folded weights: for a diagonal-periodic kernel and T-periodic input,
//   sum_{m <= i} a_{i,m} u_m = sum_{r=0}^{T-1} table[i mod T][r] * u_{i-r}.
struct FoldedWeights {
  long period = 1;
  std::vector<std::vector<double>> table;

  double operator()(long residue, long lag) const noexcept {
    return table[static_cast<std::size_t>(residue)][static_cast<std::size_t>(lag)];
  }
};

// Truncation plan for one row: sum m = i - depth .. i, everything older is
// bounded in absolute kernel mass by `abs_tail`.
struct TruncationPlan {
  long depth = 0;
  double abs_tail = 0.0;
};

struct InnerSum {
  double value = 0.0;
  double tail_bound = 0.0;  // bound * abs_tail; certified |exact - value|
  long depth = 0;
};

class Kernel {
 public:
  using Variant = std::variant<SeparableExponential, FiniteLag>;

  // Both factories validate and throw std::invalid_argument.
  static Kernel separable_exponential(double coef, double row_rate, double col_rate);
  static Kernel finite_lag(std::vector<std::vector<double>> weights);

  const Variant& variant() const noexcept { return kernel_; }
  const SeparableExponential* separable() const noexcept {
    return std::get_if<SeparableExponential>(&kernel_);
  }
  const FiniteLag* lagged() const noexcept { return std::get_if<FiniteLag>(&kernel_); }

  // a_{n,i}; throws std::invalid_argument for i > n.
  double eval(long n, long i) const;
  double operator()(long n, long i) const { return eval(n, i); }

  // sum_{m <= i} |a_{i,m}|, closed form.
  double abs_row_sum(long i) const;

  // sum_{i >= n} abs_row_sum(i); +infinity when the series diverges.
  double double_tail(long n) const;

  // sum_{m < i - depth} |a_{i,m}|.
  double abs_tail_beyond(long i, long depth) const;

  bool is_diagonal_periodic(long period) const;

  // Throws NotDiagonalPeriodic unless is_diagonal_periodic(period).
  FoldedWeights folded_weights(long period) const;

  // Smallest depth with bound * abs_tail_beyond(i, depth) <= tail_tol.
  // Throws TailNotCertified when that needs more than max_terms terms.
  TruncationPlan plan(long i, double bound, const TruncationPolicy& policy) const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  explicit Kernel(Variant k) : kernel_(std::move(k)) {}
  Variant kernel_;
};

// sum_{m <= i} a_{i,m} * values(m) truncated to a certified window, given
// |values(m)| <= bound. Terms are added oldest (smallest weight) first.
template <class Values>
InnerSum inner_sum(const Kernel& k, long i, Values&& values, double bound,
                   const TruncationPolicy& policy) {
  const TruncationPlan plan = k.plan(i, bound, policy);
  InnerSum out;
  out.depth = plan.depth;
  out.tail_bound = bound * plan.abs_tail;
  for (long m = i - plan.depth; m <= i; ++m) {
    const double w = k.eval(i, m);
    if (w != 0.0) out.value += w * values(m);
  }
  return out;
}

}  // namespace volterra
