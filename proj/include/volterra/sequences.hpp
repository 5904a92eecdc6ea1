#pragma once

#include <span>
#include <vector>

namespace volterra {

// A real sequence with x_{n+T} = x_n for every integer n. Internal slot k
// holds the value at all n with n mod T = k (mathematical modulus).
class PeriodicSequence {
 public:
  explicit PeriodicSequence(std::vector<double> values);

  static PeriodicSequence constant(double value, long period = 1);
  static PeriodicSequence zeros(long period);

  long period() const noexcept { return static_cast<long>(values_.size()); }
  std::span<const double> values() const noexcept { return values_; }

  double operator[](long n) const noexcept { return values_[slot(n)]; }
  double get(long n) const noexcept { return (*this)[n]; }

  long slot(long n) const noexcept {
    const long t = period();
    const long r = n % t;
    return r < 0 ? r + t : r;
  }

  // max_k |values[k]|, the P_T norm of one component.
  double max_abs() const noexcept;

  friend bool operator==(const PeriodicSequence&, const PeriodicSequence&) = default;

 private:
  std::vector<double> values_;
};

// prod_{l=a}^{b} (1 + seq_l); exactly 1 when a > b. Whole periods inside
// [a, b] are taken from the full-period product, so any window of length T
// returns the same value as [0, T-1] bit for bit.
double product_one_plus(const PeriodicSequence& seq, long a, long b);

// prod_{l=0}^{T-1} (1 + seq_l).
double period_product(const PeriodicSequence& seq);

// One period of a candidate T-periodic solution (x, y).
struct PeriodicPair {
  PeriodicSequence x;
  PeriodicSequence y;

  double norm() const noexcept { return x.max_abs() > y.max_abs() ? x.max_abs() : y.max_abs(); }

  friend bool operator==(const PeriodicPair&, const PeriodicPair&) = default;
};

struct StatePair {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const StatePair&, const StatePair&) = default;
};

// Initial data (eta_n, zeta_n) on the nonpositive integers: an explicit window
// for n = -H..0 followed by a Zero or Constant tail for n < -H.
class History {
 public:
  enum class Tail { Zero, Constant };

  // window[0] is the value at n = -H, window.back() the value at n = 0.
  History(std::vector<StatePair> window, Tail tail, StatePair tail_value = {});

  static History zero() { return History({StatePair{}}, Tail::Zero); }

  StatePair at(long n) const;

  long depth() const noexcept { return static_cast<long>(window_.size()) - 1; }
  std::span<const StatePair> window() const noexcept { return window_; }
  Tail tail() const noexcept { return tail_; }
  StatePair tail_value() const noexcept { return tail_value_; }

  // sup over all n <= 0 of |eta_n| and |zeta_n|.
  StatePair sup_abs() const noexcept;

  friend bool operator==(const History&, const History&) = default;

 private:
  std::vector<StatePair> window_;
  Tail tail_;
  StatePair tail_value_;
};

struct Trajectory {
  std::vector<double> x;  // x[j] is the value at n = j
  std::vector<double> y;
  History history = History::zero();
  double tail_tolerance_used = 0.0;

  long steps() const noexcept { return static_cast<long>(x.size()) - 1; }

  // Full-line view: history for n <= 0, computed values for 0 < n <= steps.
  StatePair at(long n) const;
};

}  // namespace volterra
