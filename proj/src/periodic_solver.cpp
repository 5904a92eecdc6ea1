#include "volterra/periodic_solver.hpp"

#include <cmath>
#include <string>

#include "volterra/verify.hpp"

namespace volterra {

namespace {

std::vector<std::vector<double>> coefficient_table(const PeriodicSequence& c, double alpha) {
  const long t = c.period();
  std::vector<std::vector<double>> table(static_cast<std::size_t>(t), std::vector<double>(static_cast<std::size_t>(t)));
  for (long n = 0; n < t; ++n)
    for (long j = 0; j < t; ++j)
      table[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] =
          alpha * product_one_plus(c, n + j + 1, n + t - 1);
  return table;
}

}  // namespace

double alpha(const PeriodicSequence& seq) {
  const double prod = period_product(seq);
  if (std::abs(prod - 1.0) <= kUnitProductTol)
    throw PeriodProductIsOne("full-period product of (1 + c) is " + std::to_string(prod));
  return 1.0 / (1.0 - prod);
}

PeriodicOperator::PeriodicOperator(const SystemSpec& spec)
    : period_(spec.period),
      f_(spec.f),
      g_(spec.g),
      alpha_h_(alpha(spec.h)),
      alpha_p_(alpha(spec.p)),
      fold_a_(spec.a.folded_weights(spec.period)),
      fold_b_(spec.b.folded_weights(spec.period)),
      coeff_x_(coefficient_table(spec.h, alpha_h_)),
      coeff_y_(coefficient_table(spec.p, alpha_p_)) {}

void PeriodicOperator::apply_component(const std::vector<std::vector<double>>& coeff,
                                       const FoldedWeights& folded, const Nonlinearity& fn,
                                       const double* source, double* out) const {
  const long t = period_;
  const auto at = [t](long n) { return static_cast<std::size_t>(((n % t) + t) % t); };
  // delay[k] = sum_{m <= i} k_{i,m} fn(source_m) for any i = k mod T
  std::vector<double> delay(static_cast<std::size_t>(t), 0.0);
  for (long k = 0; k < t; ++k) {
    double s = 0.0;
    for (long r = t - 1; r >= 0; --r) s += folded(k, r) * fn(source[at(k - r)]);
    delay[static_cast<std::size_t>(k)] = s;
  }
  for (long n = 0; n < t; ++n) {
    double s = 0.0;
    const auto& row = coeff[static_cast<std::size_t>(n)];
    for (long j = 0; j < t; ++j) s += row[static_cast<std::size_t>(j)] * delay[at(n + j)];
    out[n] = s;
  }
}

std::vector<double> PeriodicOperator::apply_packed(const std::vector<double>& z) const {
  const auto t = static_cast<std::size_t>(period_);
  std::vector<double> out(2 * t);
  apply_component(coeff_x_, fold_a_, f_, z.data() + t, out.data());
  apply_component(coeff_y_, fold_b_, g_, z.data(), out.data() + t);
  return out;
}

PeriodicPair PeriodicOperator::apply(const PeriodicPair& z) const {
  if (z.x.period() != period_ || z.y.period() != period_)
    throw std::invalid_argument("state period does not match the system period");
  return unpack(apply_packed(pack(z)));
}

PeriodicPair apply_E(const SystemSpec& spec, const PeriodicPair& z) { return PeriodicOperator(spec).apply(z); }

std::vector<double> pack(const PeriodicPair& z) {
  std::vector<double> out(z.x.values().begin(), z.x.values().end());
  out.insert(out.end(), z.y.values().begin(), z.y.values().end());
  return out;
}

PeriodicPair unpack(const std::vector<double>& packed) {
  const auto half = static_cast<std::ptrdiff_t>(packed.size() / 2);
  return {PeriodicSequence(std::vector<double>(packed.begin(), packed.begin() + half)),
          PeriodicSequence(std::vector<double>(packed.begin() + half, packed.end()))};
}

PeriodicSolveReport solve_periodic(const SystemSpec& spec, const SolverOptions& opts) {
  const PeriodicOperator op(spec);
  PeriodicSolveReport report;
  report.alpha_h = op.alpha_h();
  report.alpha_p = op.alpha_p();

  std::vector<double> z0(static_cast<std::size_t>(2 * spec.period), 0.0);
  if (opts.initial_guess) {
    if (opts.initial_guess->x.period() != spec.period || opts.initial_guess->y.period() != spec.period)
      throw std::invalid_argument("initial guess period does not match the system period");
    z0 = pack(*opts.initial_guess);
  }

  const FixedPointResult fp =
      solve_fixed_point([&op](const std::vector<double>& z) { return op.apply_packed(z); }, std::move(z0),
                        opts.fixed_point());
  report.solution = unpack(fp.z);
  report.iterations = fp.iterations;
  report.method_used = fp.method;
  report.final_update_norm = fp.final_update_norm;
  report.solution_norm = report.solution.norm();

  VerifyOptions vopts;
  vopts.exec = opts.exec;
  const PeriodicVerification check = verify_periodic(spec, report.solution, 5 * spec.period + 1, vopts);
  report.residual_max = check.max_defect;
  report.drift_max = check.max_drift;
  report.converged = fp.converged && report.residual_max <= opts.residual_tol;
  return report;
}

}  // namespace volterra
