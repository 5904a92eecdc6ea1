#include "volterra/fixed_point.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace volterra {

namespace {

constexpr long kStallLimit = 10;

bool finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

std::vector<double> defect(const VectorMap& map, const std::vector<double>& z) {
  std::vector<double> f = map(z);
  for (std::size_t k = 0; k < z.size(); ++k) f[k] = z[k] - f[k];
  return f;
}

}  // namespace

const char* to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::PicardThenNewton: return "picard_then_newton";
    case Strategy::PicardOnly: return "picard_only";
    case Strategy::NewtonOnly: return "newton_only";
  }
  return "?";
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Picard: return "picard";
    case Method::DampedPicard: return "damped_picard";
    case Method::Newton: return "newton";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  for (Strategy s : {Strategy::PicardThenNewton, Strategy::PicardOnly, Strategy::NewtonOnly})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown solver strategy '" + name + "'");
}

double max_norm(const std::vector<double>& v) noexcept {
  double m = 0.0;
  for (double d : v) m = std::max(m, std::abs(d));
  return m;
}

double max_norm_diff(const std::vector<double>& a, const std::vector<double>& b) noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::vector<std::vector<double>> fixed_point_jacobian(const VectorMap& map, const std::vector<double>& z,
                                                      Execution exec) {
  const long dim = static_cast<long>(z.size());
  std::vector<std::vector<double>> cols(z.size());
  for_each_index(exec, 0, dim, [&](long j) {
    const auto jj = static_cast<std::size_t>(j);
    const double step = 1e-6 * std::max(1.0, std::abs(z[jj]));
    std::vector<double> plus = z;
    std::vector<double> minus = z;
    plus[jj] += step;
    minus[jj] -= step;
    const std::vector<double> fp = map(plus);
    const std::vector<double> fm = map(minus);
    std::vector<double> col(z.size());
    const double width = plus[jj] - minus[jj];
    for (std::size_t k = 0; k < z.size(); ++k) col[k] = -(fp[k] - fm[k]) / width;
    col[jj] += 1.0;
    cols[jj] = std::move(col);
  });
  return cols;
}

FixedPointResult solve_fixed_point(const VectorMap& map, std::vector<double> z0,
                                   const FixedPointOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tol must be positive");
  if (opts.max_iter < 1) throw std::invalid_argument("solver max_iter must be >= 1");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0))
    throw std::invalid_argument("solver damping must lie in (0, 1]");

  FixedPointResult result;
  result.method = opts.damping == 1.0 ? Method::Picard : Method::DampedPicard;
  std::vector<double> z = std::move(z0);
  const double theta = opts.damping;

  if (opts.strategy != Strategy::NewtonOnly) {
    double prev_step = std::numeric_limits<double>::infinity();
    long stalled = 0;
    for (long it = 0; it < opts.max_iter; ++it) {
      const std::vector<double> ez = map(z);
      std::vector<double> next(z.size());
      for (std::size_t k = 0; k < z.size(); ++k) next[k] = (1.0 - theta) * z[k] + theta * ez[k];
      ++result.iterations;
      if (!finite(next)) break;
      const double step = max_norm_diff(next, z);
      z = std::move(next);
      if (step <= opts.tol) break;
      stalled = step >= prev_step ? stalled + 1 : 0;
      prev_step = step;
      if (stalled >= kStallLimit) break;
    }
    result.final_update_norm = max_norm(defect(map, z));
    result.converged = result.final_update_norm <= opts.tol;
    if (result.converged || opts.strategy == Strategy::PicardOnly) {
      result.z = std::move(z);
      return result;
    }
  }

  result.method = Method::Newton;
  const auto n = static_cast<Eigen::Index>(z.size());
  std::vector<double> f = defect(map, z);
  double f_norm = max_norm(f);
  for (long it = 0; it < opts.max_iter && f_norm > opts.tol && std::isfinite(f_norm); ++it) {
    ++result.iterations;
    const auto cols = fixed_point_jacobian(map, z, opts.exec);
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      rhs(j) = -f[static_cast<std::size_t>(j)];
      for (Eigen::Index k = 0; k < n; ++k) jac(k, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    const Eigen::VectorXd delta = jac.fullPivLu().solve(rhs);

    double lambda = 1.0;
    std::vector<double> trial(z.size());
    std::vector<double> f_trial;
    double trial_norm = std::numeric_limits<double>::infinity();
    for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
      for (std::size_t k = 0; k < z.size(); ++k)
        trial[k] = z[k] + lambda * delta(static_cast<Eigen::Index>(k));
      f_trial = defect(map, trial);
      trial_norm = max_norm(f_trial);
      if (trial_norm < f_norm) break;
    }
    if (!(trial_norm < f_norm)) break;  // no descent; Jacobian or roundoff floor reached
    z = trial;
    f = std::move(f_trial);
    f_norm = trial_norm;
  }
  result.final_update_norm = f_norm;
  result.converged = f_norm <= opts.tol;
  result.z = std::move(z);
  return result;
}

}  // namespace volterra
