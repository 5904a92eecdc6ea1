#include "volterra/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace volterra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// 1 - exp(-x) without cancellation for small x.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

double abs_sum(const std::vector<double>& row) {
  double s = 0.0;
  for (double w : row) s += std::abs(w);
  return s;
}

bool all_zero(const FiniteLag& k) {
  return std::all_of(k.weights.begin(), k.weights.end(),
                     [](const auto& row) { return abs_sum(row) == 0.0; });
}

}  // namespace

Kernel Kernel::separable_exponential(double coef, double row_rate, double col_rate) {
  if (!std::isfinite(coef) || !std::isfinite(row_rate) || !std::isfinite(col_rate))
    throw std::invalid_argument("separable exponential kernel needs finite parameters");
  if (!(row_rate > 0.0))
    throw std::invalid_argument("separable exponential kernel needs row_rate > 0");
  return Kernel(SeparableExponential{coef, row_rate, col_rate});
}

Kernel Kernel::finite_lag(std::vector<std::vector<double>> weights) {
  if (weights.empty()) throw std::invalid_argument("finite lag kernel needs at least one row");
  std::size_t width = 0;
  for (const auto& row : weights) width = std::max(width, row.size());
  if (width == 0) throw std::invalid_argument("finite lag kernel needs at least one lag");
  for (auto& row : weights) {
    for (double w : row)
      if (!std::isfinite(w)) throw std::invalid_argument("finite lag kernel has non-finite weight");
    row.resize(width, 0.0);
  }
  return Kernel(FiniteLag{std::move(weights)});
}

double Kernel::eval(long n, long i) const {
  if (i > n)
    throw std::invalid_argument("kernel evaluated at i = " + std::to_string(i) + " > n = " +
                                std::to_string(n));
  return std::visit(Overloaded{
                        [&](const SeparableExponential& k) {
                          return k.coef * std::exp(k.row_rate * static_cast<double>(i) -
                                                   k.col_rate * static_cast<double>(n));
                        },
                        [&](const FiniteLag& k) {
                          const long lag = n - i;
                          return lag <= k.max_lag() ? k.row(n)[static_cast<std::size_t>(lag)] : 0.0;
                        },
                    },
                    kernel_);
}

double Kernel::abs_row_sum(long i) const {
  return std::visit(Overloaded{
                        [&](const SeparableExponential& k) {
                          return std::abs(k.coef) *
                                 std::exp((k.row_rate - k.col_rate) * static_cast<double>(i)) /
                                 one_minus_exp_neg(k.row_rate);
                        },
                        [&](const FiniteLag& k) { return abs_sum(k.row(i)); },
                    },
                    kernel_);
}

double Kernel::double_tail(long n) const {
  return std::visit(Overloaded{
                        [&](const SeparableExponential& k) {
                          if (k.coef == 0.0) return 0.0;
                          if (k.col_rate <= k.row_rate) return kInf;
                          const double gap = k.col_rate - k.row_rate;
                          return std::abs(k.coef) * std::exp(-gap * static_cast<double>(n)) /
                                 (one_minus_exp_neg(k.row_rate) * one_minus_exp_neg(gap));
                        },
                        [&](const FiniteLag& k) { return all_zero(k) ? 0.0 : kInf; },
                    },
                    kernel_);
}

double Kernel::abs_tail_beyond(long i, long depth) const {
  return std::visit(Overloaded{
                        [&](const SeparableExponential& k) {
                          return abs_row_sum(i) *
                                 std::exp(-k.row_rate * static_cast<double>(depth + 1));
                        },
                        [&](const FiniteLag& k) {
                          const auto& row = k.row(i);
                          double s = 0.0;
                          for (long r = depth + 1; r <= k.max_lag(); ++r)
                            s += std::abs(row[static_cast<std::size_t>(r)]);
                          return s;
                        },
                    },
                    kernel_);
}

bool Kernel::is_diagonal_periodic(long period) const {
  if (period < 1) return false;
  return std::visit(Overloaded{
                        [&](const SeparableExponential& k) {
                          return k.coef == 0.0 || k.row_rate == k.col_rate;
                        },
                        [&](const FiniteLag& k) {
                          for (long r = 0; r < k.period(); ++r)
                            if (k.row(r) != k.row(r + period)) return false;
                          return true;
                        },
                    },
                    kernel_);
}

FoldedWeights Kernel::folded_weights(long period) const {
  if (!is_diagonal_periodic(period))
    throw NotDiagonalPeriodic("kernel does not satisfy a(n+T, i+T) = a(n, i) for T = " +
                              std::to_string(period));
  FoldedWeights out;
  out.period = period;
  out.table.assign(static_cast<std::size_t>(period),
                   std::vector<double>(static_cast<std::size_t>(period), 0.0));
  std::visit(Overloaded{
                 [&](const SeparableExponential& k) {
                   // Each lag class r, r + T, r + 2T, ... is a geometric series.
                   const double denom = one_minus_exp_neg(k.row_rate * static_cast<double>(period));
                   for (long r = 0; r < period; ++r) {
                     const double w = k.coef * std::exp(-k.row_rate * static_cast<double>(r)) / denom;
                     for (auto& row : out.table) row[static_cast<std::size_t>(r)] = w;
                   }
                 },
                 [&](const FiniteLag& k) {
                   for (long res = 0; res < period; ++res) {
                     const auto& row = k.row(res);
                     auto& dst = out.table[static_cast<std::size_t>(res)];
                     for (long lag = 0; lag <= k.max_lag(); ++lag)
                       dst[static_cast<std::size_t>(lag % period)] += row[static_cast<std::size_t>(lag)];
                   }
                 },
             },
             kernel_);
  return out;
}

TruncationPlan Kernel::plan(long i, double bound, const TruncationPolicy& policy) const {
  if (!(policy.tail_tol > 0.0) || policy.max_terms < 1)
    throw std::invalid_argument("truncation policy needs tail_tol > 0 and max_terms >= 1");
  bound = std::abs(bound);

  const auto fail = [&] {
    return TailNotCertified("row " + std::to_string(i) + " needs more than " +
                            std::to_string(policy.max_terms) + " terms for tail <= " +
                            std::to_string(policy.tail_tol));
  };

  TruncationPlan plan;
  if (const auto* lag = lagged()) {
    // Finite support: stop at the last lag that still carries weight.
    const auto& row = lag->row(i);
    long depth = lag->max_lag();
    while (depth > 0 && row[static_cast<std::size_t>(depth)] == 0.0) --depth;
    if (depth + 1 > policy.max_terms) {
      plan.depth = policy.max_terms - 1;
      plan.abs_tail = abs_tail_beyond(i, plan.depth);
      if (bound * plan.abs_tail > policy.tail_tol) throw fail();
      return plan;
    }
    plan.depth = depth;
    plan.abs_tail = 0.0;
    return plan;
  }

  const auto& k = std::get<SeparableExponential>(kernel_);
  const double row = abs_row_sum(i);
  if (bound * row <= policy.tail_tol) {
    plan.depth = 0;
    plan.abs_tail = abs_tail_beyond(i, 0);
    return plan;
  }
  // row * exp(-rho (M + 1)) * bound <= eps, then fix rounding at the edge.
  const double guess = std::ceil(std::log(bound * row / policy.tail_tol) / k.row_rate) - 1.0;
  if (!(guess < static_cast<double>(policy.max_terms))) throw fail();
  long depth = std::max(0L, static_cast<long>(guess));
  while (depth > 0 && bound * abs_tail_beyond(i, depth - 1) <= policy.tail_tol) --depth;
  while (bound * abs_tail_beyond(i, depth) > policy.tail_tol) ++depth;
  if (depth + 1 > policy.max_terms) throw fail();
  plan.depth = depth;
  plan.abs_tail = abs_tail_beyond(i, depth);
  return plan;
}

}  // namespace volterra
