#include "volterra/asymptotic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "volterra/verify.hpp"

namespace volterra {

namespace {

PeriodicSequence reciprocal_products(const PeriodicSequence& c, const char* name) {
  const long t = c.period();
  for (long k = 0; k < t; ++k)
    if (1.0 + c[k] == 0.0)
      throw ZeroFactor(std::string("1 + ") + name + " vanishes at residue " + std::to_string(k));
  const double prod = period_product(c);
  if (std::abs(prod - 1.0) > kUnitProductTol)
    throw PeriodProductNotOne(std::string("full-period product of (1 + ") + name + ") is " + std::to_string(prod));
  // phi_1..phi_T by running product; phi_T lands in slot 0.
  std::vector<double> values(static_cast<std::size_t>(t));
  double phi = 1.0;
  for (long n = 1; n <= t; ++n) {
    phi /= 1.0 + c[n - 1];
    values[static_cast<std::size_t>(n % t)] = phi;
  }
  return PeriodicSequence(std::move(values));
}

std::pair<double, double> abs_range(const PeriodicSequence& s) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : s.values()) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return {lo, hi};
}

}  // namespace

PhiPsi phi_psi(const SystemSpec& spec) {
  PhiPsi out;
  out.phi = reciprocal_products(spec.h, "h");
  out.psi = reciprocal_products(spec.p, "p");
  std::tie(out.m1, out.M1) = abs_range(out.phi);
  std::tie(out.m2, out.M2) = abs_range(out.psi);
  return out;
}

AsymptoticOperator::AsymptoticOperator(const SystemSpec& spec, double c1, double c2, long horizon,
                                       const TruncationPolicy& policy, History history, Execution exec)
    : spec_(spec),
      a_(spec.a),
      b_(spec.b),
      c1_(c1),
      c2_(c2),
      horizon_(horizon),
      policy_(policy),
      history_(std::move(history)),
      exec_(exec),
      pp_(volterra::phi_psi(spec)) {
  if (horizon_ < 0) throw std::invalid_argument("horizon must be >= 0");
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw std::invalid_argument("c1 and c2 must be finite");
  const double ta = a_.double_tail(0);
  const double tb = b_.double_tail(0);
  if (!std::isfinite(ta) || !std::isfinite(tb))
    throw std::invalid_argument("kernel double tail diverges; the tail map needs summable kernels");
  scale1_ = pp_.M1 / pp_.m1 * spec.f.bound();
  scale2_ = pp_.M2 / pp_.m2 * spec.g.bound();
  w_star_ = std::max(scale1_ * ta + std::abs(c1) / pp_.m1, scale2_ * tb + std::abs(c2) / pp_.m2);

  cut_ = horizon_;
  while (v1_bound(cut_ + 1) > policy_.tail_tol || v2_bound(cut_ + 1) > policy_.tail_tol) {
    if (cut_ - horizon_ >= policy_.max_terms)
      throw TailNotCertified("outer sum of the tail map needs more than max_terms indices");
    ++cut_;
  }

  // Beyond the window the state is replaced by u; |v| there is below the
  // envelope at horizon + 1, so each nonlinearity moves by at most Lip * env.
  double closure = 0.0;
  if (cut_ > horizon_) {
    closure = std::max(pp_.M1 / pp_.m1 * spec.f.lipschitz() * v2_bound(horizon_ + 1) * a_.double_tail(horizon_ + 1),
                       pp_.M2 / pp_.m2 * spec.g.lipschitz() * v1_bound(horizon_ + 1) * b_.double_tail(horizon_ + 1));
  }
  fixed_error_ = std::max(v1_bound(cut_ + 1), v2_bound(cut_ + 1)) + closure;
}

Window AsymptoticOperator::closure() const {
  Window w;
  for (long n = 0; n <= horizon_; ++n) {
    w.x.push_back(u1(n));
    w.y.push_back(u2(n));
  }
  return w;
}

EStarResult AsymptoticOperator::apply(const Window& z) const {
  if (z.horizon() != horizon_ || z.y.size() != z.x.size())
    throw std::invalid_argument("window length does not match the operator horizon");
  const auto x_at = [&](long m) {
    if (m < 0) return history_.at(m).x;
    return m <= horizon_ ? z.x[static_cast<std::size_t>(m)] : u1(m);
  };
  const auto y_at = [&](long m) {
    if (m < 0) return history_.at(m).y;
    return m <= horizon_ ? z.y[static_cast<std::size_t>(m)] : u2(m);
  };

  // Delay sums for every outer index; independent per i.
  const auto count = static_cast<std::size_t>(cut_ + 1);
  std::vector<double> s1(count), s2(count), tail1(count), tail2(count);
  const double w1 = spec_.f.bound();
  const double w2 = spec_.g.bound();
  for_each_index(exec_, 0, cut_ + 1, [&](long i) {
    const auto k = static_cast<std::size_t>(i);
    const InnerSum sx = inner_sum(a_, i, [&](long m) { return spec_.f(y_at(m)); }, w1, policy_);
    const InnerSum sy = inner_sum(b_, i, [&](long m) { return spec_.g(x_at(m)); }, w2, policy_);
    s1[k] = sx.value;
    s2[k] = sy.value;
    tail1[k] = sx.tail_bound;
    tail2[k] = sy.tail_bound;
  });

  EStarResult out;
  out.outer_cut = cut_;
  const auto h = static_cast<std::size_t>(horizon_ + 1);
  out.value.x.resize(h);
  out.value.y.resize(h);
  out.deviation.x.resize(h);
  out.deviation.y.resize(h);

  // Backward accumulation G_n = sum_{i=n}^{cut} phi_{i+1} S_i, smallest terms first.
  double g1 = 0.0, g2 = 0.0, e1 = 0.0, e2 = 0.0;
  double inner_error = 0.0;
  for (long i = cut_; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    g1 += pp_.phi[i + 1] * s1[k];
    g2 += pp_.psi[i + 1] * s2[k];
    e1 += std::abs(pp_.phi[i + 1]) * tail1[k];
    e2 += std::abs(pp_.psi[i + 1]) * tail2[k];
    if (i <= horizon_) {
      const double phi_n = pp_.phi[i];
      const double psi_n = pp_.psi[i];
      out.deviation.x[k] = -g1 / phi_n;
      out.deviation.y[k] = -g2 / psi_n;
      out.value.x[k] = c1_ / phi_n + out.deviation.x[k];
      out.value.y[k] = c2_ / psi_n + out.deviation.y[k];
      inner_error = std::max({inner_error, e1 / std::abs(phi_n), e2 / std::abs(psi_n)});
    }
  }
  out.truncation_error = inner_error + fixed_error_;
  return out;
}

std::vector<double> AsymptoticOperator::apply_packed(const std::vector<double>& z) const {
  const auto h = static_cast<std::ptrdiff_t>(horizon_ + 1);
  Window w{std::vector<double>(z.begin(), z.begin() + h), std::vector<double>(z.begin() + h, z.end())};
  EStarResult r = apply(w);
  std::vector<double> out = std::move(r.value.x);
  out.insert(out.end(), r.value.y.begin(), r.value.y.end());
  return out;
}

EStarResult apply_E_star(const SystemSpec& spec, double c1, double c2, const Window& z, long horizon,
                         const TruncationPolicy& policy, Execution exec) {
  return AsymptoticOperator(spec, c1, c2, horizon, policy, History::zero(), exec).apply(z);
}

long default_horizon(const SystemSpec& spec) {
  const PhiPsi pp = phi_psi(spec);
  const double s1 = pp.M1 / pp.m1 * spec.f.bound();
  const double s2 = pp.M2 / pp.m2 * spec.g.bound();
  const auto env = [&](long n) {
    const double e1 = s1 == 0.0 ? 0.0 : s1 * spec.a.double_tail(n);
    const double e2 = s2 == 0.0 ? 0.0 : s2 * spec.b.double_tail(n);
    return std::max(e1, e2);
  };
  if (!std::isfinite(env(0))) throw std::invalid_argument("kernel double tail diverges");
  long n = 4 * spec.period;
  while (env(n) > 1e-12) ++n;
  return n;
}

AsymptoticSolveReport solve_asymptotic(const SystemSpec& spec, double c1, double c2, long horizon,
                                       const SolverOptions& opts, const TruncationPolicy& policy,
                                       const History& history) {
  if (horizon < 4 * spec.period)
    throw std::invalid_argument("horizon must be at least 4T = " + std::to_string(4 * spec.period));
  const AsymptoticOperator op(spec, c1, c2, horizon, policy, history, opts.exec);

  AsymptoticSolveReport report;
  if (!(c1 > 0.0) || !(c2 > 0.0)) report.warnings.push_back("c1 and c2 are expected to be positive constants");
  report.outer_cut = op.outer_cut();
  report.w_star = op.w_star();

  const Window start = op.closure();
  std::vector<double> z0 = start.x;
  z0.insert(z0.end(), start.y.begin(), start.y.end());
  FixedPointOptions fpo = opts.fixed_point();
  const FixedPointResult fp =
      solve_fixed_point([&op](const std::vector<double>& z) { return op.apply_packed(z); }, std::move(z0), fpo);
  report.iterations = fp.iterations;
  report.method_used = fp.method;
  report.final_update_norm = fp.final_update_norm;
  report.solution_norm = max_norm(fp.z);

  // Split at the fixed point: v comes straight from the tail sums.
  const auto h = static_cast<std::ptrdiff_t>(horizon + 1);
  const EStarResult at = op.apply({std::vector<double>(fp.z.begin(), fp.z.begin() + h),
                                   std::vector<double>(fp.z.begin() + h, fp.z.end())});
  Decomposition& dec = report.decomposition;
  dec.c1 = c1;
  dec.c2 = c2;
  const long t = spec.period;
  std::vector<double> u1(static_cast<std::size_t>(t)), u2(static_cast<std::size_t>(t));
  for (long k = 0; k < t; ++k) {
    u1[static_cast<std::size_t>(k)] = op.u1(k);
    u2[static_cast<std::size_t>(k)] = op.u2(k);
  }
  dec.u1 = PeriodicSequence(std::move(u1));
  dec.u2 = PeriodicSequence(std::move(u2));
  dec.v1 = at.deviation.x;
  dec.v2 = at.deviation.y;
  for (long n = 0; n <= horizon; ++n) {
    dec.v1_bound.push_back(op.v1_bound(n));
    dec.v2_bound.push_back(op.v2_bound(n));
  }
  dec.horizon = horizon;
  dec.history = history;
  dec.tail_tol = policy.tail_tol;
  dec.truncation_error = at.truncation_error;

  VerifyOptions vopts;
  vopts.exec = opts.exec;
  const DecompositionVerification check = verify_decomposition(spec, dec, opts.residual_tol, vopts);
  report.residual_max = check.max_residual;
  report.envelope_ok = check.envelope_ok;
  report.decay_ok = check.decay_ok;
  report.converged = fp.converged && check.residual_ok && check.envelope_ok;
  dec.converged = report.converged;
  return report;
}

}  // namespace volterra
