#include "volterra/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace volterra {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

bool finite_pair(StatePair p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

PeriodicSequence::PeriodicSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("periodic sequence needs period >= 1");
  if (!all_finite(values_)) throw std::invalid_argument("periodic sequence has non-finite value");
}

PeriodicSequence PeriodicSequence::constant(double value, long period) {
  if (period < 1) throw std::invalid_argument("periodic sequence needs period >= 1");
  return PeriodicSequence(std::vector<double>(static_cast<std::size_t>(period), value));
}

PeriodicSequence PeriodicSequence::zeros(long period) { return constant(0.0, period); }

double PeriodicSequence::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double period_product(const PeriodicSequence& seq) {
  double prod = 1.0;
  for (double v : seq.values()) prod *= 1.0 + v;
  return prod;
}

double product_one_plus(const PeriodicSequence& seq, long a, long b) {
  if (a > b) return 1.0;
  const long t = seq.period();
  const long len = b - a + 1;
  const long whole = len / t;
  const long rest = len % t;

  double partial = 1.0;
  for (long l = a; l < a + rest; ++l) partial *= 1.0 + seq[l];
  if (whole == 0) return partial;

  const double full = period_product(seq);
  double powered = 1.0;
  if (whole == 1) {
    powered = full;
  } else {
    // Binary powering keeps the rounding growth logarithmic in the count.
    double base = full;
    for (long e = whole; e > 0; e >>= 1) {
      if (e & 1) powered *= base;
      base *= base;
    }
  }
  return rest == 0 ? powered : powered * partial;
}

History::History(std::vector<StatePair> window, Tail tail, StatePair tail_value)
    : window_(std::move(window)), tail_(tail), tail_value_(tail == Tail::Zero ? StatePair{} : tail_value) {
  if (window_.empty()) throw std::invalid_argument("history window must hold at least n = 0");
  for (std::size_t k = 0; k < window_.size(); ++k) {
    if (!finite_pair(window_[k]))
      throw std::invalid_argument("history window entry " + std::to_string(k) + " is not finite");
  }
  if (!finite_pair(tail_value_)) throw std::invalid_argument("history tail value is not finite");
}

StatePair History::at(long n) const {
  if (n > 0) throw std::out_of_range("history is defined only for n <= 0, got " + std::to_string(n));
  const long offset = n + depth();
  if (offset >= 0) return window_[static_cast<std::size_t>(offset)];
  return tail_value_;
}

StatePair History::sup_abs() const noexcept {
  StatePair s{std::abs(tail_value_.x), std::abs(tail_value_.y)};
  for (const auto& p : window_) {
    s.x = std::max(s.x, std::abs(p.x));
    s.y = std::max(s.y, std::abs(p.y));
  }
  return s;
}

StatePair Trajectory::at(long n) const {
  if (n <= 0) return history.at(n);
  if (n > steps()) throw std::out_of_range("trajectory ends at n = " + std::to_string(steps()));
  return {x[static_cast<std::size_t>(n)], y[static_cast<std::size_t>(n)]};
}

}  // namespace volterra
