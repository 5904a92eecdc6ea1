#include "volterra/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "volterra/asymptotic_solver.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/simulate.hpp"

namespace volterra {

namespace {

// Envelope M/m * W * double_tail(n) recomputed from the raw coefficients.
struct Envelope {
  double scale = 0.0;
  const Kernel* kernel = nullptr;

  double operator()(long n) const {
    if (scale == 0.0) return 0.0;
    return scale * kernel->double_tail(n);
  }
};

Envelope envelope_for(const PeriodicSequence& coeff, const Kernel& kernel, double w) {
  double phi = 1.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (long n = 0; n < coeff.period(); ++n) {
    phi /= 1.0 + coeff[n];
    lo = std::min(lo, std::abs(phi));
    hi = std::max(hi, std::abs(phi));
  }
  return {hi / lo * w, &kernel};
}

double running_product_gap(const PeriodicSequence& coeff, const PeriodicSequence& u, double c, long count) {
  double prod = 1.0;
  double gap = 0.0;
  for (long n = 0; n < count; ++n) {
    const double expected = c * prod;
    gap = std::max(gap, std::abs(u[n] - expected) / std::max(1.0, std::abs(expected)));
    prod *= 1.0 + coeff[n];
  }
  return gap;
}

bool decays_like_envelope(const std::vector<double>& v, const Envelope& env, long horizon) {
  const long start = std::max(0L, horizon - 10);
  const double head = std::abs(v[static_cast<std::size_t>(start)]);
  const double tail = std::abs(v[static_cast<std::size_t>(horizon)]);
  if (head == 0.0) return tail == 0.0;
  const double env_head = env(start);
  if (env_head == 0.0 || !std::isfinite(env_head)) return false;
  return tail <= 10.0 * (env(horizon) / env_head) * head;
}

}  // namespace

DirectSum direct_delay_sum(const Kernel& k, long i, const std::function<double(long)>& values,
                           long depth, double bound) {
  if (const auto* lag = k.lagged()) depth = std::max(depth, lag->max_lag());
  DirectSum out;
  for (long m = i - depth; m <= i; ++m) {
    const double w = k.eval(i, m);
    if (w != 0.0) out.value += w * values(m);
  }
  if (const auto* sep = k.separable()) {
    // sum_{j >= 1} |a_{i, i-depth-j}| = |a_{i, i-depth-1}| / (1 - e^{-rho})
    out.remainder = std::abs(bound) * std::abs(k.eval(i, i - depth - 1)) / -std::expm1(-sep->row_rate);
  }
  return out;
}

std::vector<DefectSample> direct_residuals(const SystemSpec& spec, const std::function<double(long)>& xs,
                                           const std::function<double(long)>& ys, long begin, long end,
                                           long depth, Execution exec) {
  std::vector<DefectSample> out(static_cast<std::size_t>(std::max(0L, end - begin)));
  for_each_index(exec, begin, end, [&](long n) {
    const DirectSum sx = direct_delay_sum(spec.a, n, [&](long m) { return spec.f(ys(m)); }, depth,
                                          spec.f.bound());
    const DirectSum sy = direct_delay_sum(spec.b, n, [&](long m) { return spec.g(xs(m)); }, depth,
                                          spec.g.bound());
    const double xn = xs(n);
    const double yn = ys(n);
    out[static_cast<std::size_t>(n - begin)] = {
        n, std::abs(xs(n + 1) - (1.0 + spec.h[n]) * xn - sx.value) + sx.remainder,
        std::abs(ys(n + 1) - (1.0 + spec.p[n]) * yn - sy.value) + sy.remainder};
  });
  return out;
}

PeriodicVerification verify_periodic(const SystemSpec& spec, const PeriodicPair& sol, long n_checks,
                                     const VerifyOptions& opts) {
  PeriodicVerification out;
  out.n_checks = n_checks;
  const auto xs = [&](long m) { return sol.x[m]; };
  const auto ys = [&](long m) { return sol.y[m]; };
  for (const auto& d : direct_residuals(spec, xs, ys, 0, n_checks, opts.depth, opts.exec)) {
    out.max_defect_x = std::max(out.max_defect_x, d.x);
    out.max_defect_y = std::max(out.max_defect_y, d.y);
  }
  out.max_defect = std::max(out.max_defect_x, out.max_defect_y);
  for (long n = 0; n < n_checks; ++n) {
    const double rx = direct_delay_sum(spec.a, n, [](long) { return 1.0; }, opts.depth, spec.f.bound()).remainder;
    const double ry = direct_delay_sum(spec.b, n, [](long) { return 1.0; }, opts.depth, spec.g.bound()).remainder;
    out.max_remainder = std::max({out.max_remainder, rx, ry});
  }

  if (opts.drift_periods > 0) {
    const long t = sol.x.period();
    const long back = std::max(4 * t, opts.depth);
    std::vector<StatePair> window;
    window.reserve(static_cast<std::size_t>(back + 1));
    for (long n = -back; n <= 0; ++n) window.push_back({sol.x[n], sol.y[n]});
    const History hist(std::move(window), History::Tail::Zero);
    out.drift_steps = opts.drift_periods * t;
    const Trajectory traj = simulate(spec, hist, out.drift_steps, opts.drift_policy);
    for (long n = 0; n <= out.drift_steps; ++n) {
      const auto k = static_cast<std::size_t>(n);
      out.max_drift = std::max({out.max_drift, std::abs(traj.x[k] - sol.x[n]), std::abs(traj.y[k] - sol.y[n])});
    }
  }
  return out;
}

DecompositionVerification verify_decomposition(const SystemSpec& spec, const Decomposition& dec,
                                               double residual_tol, const VerifyOptions& opts) {
  DecompositionVerification out;
  const long t = spec.period;

  out.u_product_gap = std::max(running_product_gap(spec.h, dec.u1, dec.c1, 10 * t + 1),
                               running_product_gap(spec.p, dec.u2, dec.c2, 10 * t + 1));
  out.u_periodic = dec.u1.period() == t && dec.u2.period() == t && out.u_product_gap <= 1e-12;

  const Envelope env1 = envelope_for(spec.h, spec.a, spec.f.bound());
  const Envelope env2 = envelope_for(spec.p, spec.b, spec.g.bound());
  const double slack = 10.0 * dec.tail_tol;
  out.envelope_ok = true;
  for (long n = 0; n <= dec.horizon; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (std::abs(dec.v1[k]) > env1(n) + slack || std::abs(dec.v2[k]) > env2(n) + slack) {
      out.envelope_ok = false;
      out.first_envelope_violation = n;
      break;
    }
  }

  const auto xs = [&](long m) { return dec.x_full(m); };
  const auto ys = [&](long m) { return dec.y_full(m); };
  for (const auto& d : direct_residuals(spec, xs, ys, 0, dec.horizon, opts.depth, opts.exec))
    out.max_residual = std::max({out.max_residual, d.x, d.y});
  out.residual_ok = out.max_residual <= residual_tol;

  out.decay_ok = decays_like_envelope(dec.v1, env1, dec.horizon) && decays_like_envelope(dec.v2, env2, dec.horizon);
  out.pass = out.u_periodic && out.envelope_ok && out.residual_ok && out.decay_ok;
  return out;
}

SelfMapSample sample_self_map_periodic(const SystemSpec& spec, long samples, unsigned long long seed, double slack) {
  const PeriodicOperator op(spec);
  const CheckReport check = check_periodic_hypotheses(spec);
  SelfMapSample out;
  out.samples = samples;
  out.bound = check.quantity("W_bounded");
  out.radius = check.quantity("W");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(2 * spec.period));
  for (long s = 0; s < samples; ++s) {
    for (double& v : z) v = out.radius * unit(rng);
    out.max_image = std::max(out.max_image, max_norm(op.apply_packed(z)));
  }
  out.pass = out.max_image <= out.bound + slack;
  return out;
}

SelfMapSample sample_self_map_asymptotic(const SystemSpec& spec, double c1, double c2, long horizon,
                                         const TruncationPolicy& policy, long samples, unsigned long long seed) {
  const AsymptoticOperator op(spec, c1, c2, horizon, policy);
  SelfMapSample out;
  out.samples = samples;
  out.radius = op.w_star();
  out.bound = op.w_star() + 10.0 * policy.tail_tol;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(2 * (horizon + 1)));
  for (long s = 0; s < samples; ++s) {
    for (double& v : z) v = out.radius * unit(rng);
    out.max_image = std::max(out.max_image, max_norm(op.apply_packed(z)));
  }
  out.pass = out.max_image <= out.bound;
  return out;
}

}  // namespace volterra
