#include "volterra/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace volterra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void add(CheckReport& report, std::string id, bool pass, std::string detail) {
  report.items.push_back({std::move(id), pass, std::move(detail)});
}

void finish(CheckReport& report) {
  report.pass = std::all_of(report.items.begin(), report.items.end(),
                            [](const CheckItem& it) { return it.pass; });
}

bool has_zero_factor(const PeriodicSequence& seq, long& where) {
  for (long k = 0; k < seq.period(); ++k) {
    if (1.0 + seq[k] == 0.0) {
      where = k;
      return true;
    }
  }
  return false;
}

// Reciprocal running products phi_1..phi_T of (1 + c_j); returns min/max |.|.
std::pair<double, double> reciprocal_product_range(const PeriodicSequence& seq) {
  double phi = 1.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (long n = 1; n <= seq.period(); ++n) {
    phi /= 1.0 + seq[n - 1];
    lo = std::min(lo, std::abs(phi));
    hi = std::max(hi, std::abs(phi));
  }
  return {lo, hi};
}

}  // namespace

Nonlinearity::Nonlinearity(NonlinearityKind kind, double amplitude, double frequency)
    : kind_(kind), amplitude_(amplitude), frequency_(frequency) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency))
    throw std::invalid_argument("nonlinearity needs finite amplitude and frequency");
}

double Nonlinearity::operator()(double x) const noexcept {
  const double u = frequency_ * x;
  switch (kind_) {
    case NonlinearityKind::Sin: return amplitude_ * std::sin(u);
    case NonlinearityKind::Cos: return amplitude_ * std::cos(u);
    case NonlinearityKind::Tanh: return amplitude_ * std::tanh(u);
    case NonlinearityKind::RationalBounded: return amplitude_ * u / (1.0 + u * u);
  }
  return 0.0;
}

double Nonlinearity::bound() const noexcept {
  return kind_ == NonlinearityKind::RationalBounded ? std::abs(amplitude_) / 2.0 : std::abs(amplitude_);
}

double Nonlinearity::lipschitz() const noexcept { return std::abs(amplitude_ * frequency_); }

// u/(1+u^2) turns over at |u| = 1, so only tanh is non-decreasing on the line.
bool Nonlinearity::monotone() const noexcept {
  return kind_ == NonlinearityKind::Tanh && amplitude_ * frequency_ > 0.0;
}

const char* to_string(NonlinearityKind kind) noexcept {
  switch (kind) {
    case NonlinearityKind::Sin: return "sin";
    case NonlinearityKind::Cos: return "cos";
    case NonlinearityKind::Tanh: return "tanh";
    case NonlinearityKind::RationalBounded: return "rational_bounded";
  }
  return "?";
}

void SystemSpec::validate() const {
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  if (h.period() != period)
    throw std::invalid_argument("h has " + std::to_string(h.period()) + " values, period is " +
                                std::to_string(period));
  if (p.period() != period)
    throw std::invalid_argument("p has " + std::to_string(p.period()) + " values, period is " +
                                std::to_string(period));
}

const CheckItem* CheckReport::item(const std::string& id) const {
  for (const auto& it : items)
    if (it.id == id) return &it;
  return nullptr;
}

double CheckReport::quantity(const std::string& name) const {
  auto it = quantities.find(name);
  return it == quantities.end() ? kNaN : it->second;
}

double periodic_gain(const PeriodicSequence& coeff, const Kernel& kernel) {
  const long t = coeff.period();
  const double alpha = 1.0 / (1.0 - period_product(coeff));
  double gain = 0.0;
  for (long n = 0; n < t; ++n) {
    double s = 0.0;
    for (long i = n; i <= n + t - 1; ++i)
      s += std::abs(product_one_plus(coeff, i + 1, n + t - 1)) * kernel.abs_row_sum(i);
    gain = std::max(gain, std::abs(alpha) * s);
  }
  return gain;
}

CheckReport check_periodic_hypotheses(const SystemSpec& spec) {
  CheckReport report;
  report.mode = CheckMode::Periodic;
  const long t = spec.period;

  const bool diag_a = spec.a.is_diagonal_periodic(t);
  const bool diag_b = spec.b.is_diagonal_periodic(t);
  add(report, "diagonal_periodic_a", diag_a, diag_a ? "a(n+T,i+T) = a(n,i)" : "kernel a is not diagonal-periodic");
  add(report, "diagonal_periodic_b", diag_b, diag_b ? "b(n+T,i+T) = b(n,i)" : "kernel b is not diagonal-periodic");

  long where = 0;
  const bool zero_h = has_zero_factor(spec.h, where);
  add(report, "nonzero_factor_h", !zero_h, zero_h ? "1 + h vanishes at residue " + std::to_string(where) : "1 + h_n != 0");
  const bool zero_p = has_zero_factor(spec.p, where);
  add(report, "nonzero_factor_p", !zero_p, zero_p ? "1 + p vanishes at residue " + std::to_string(where) : "1 + p_n != 0");

  const double prod_h = period_product(spec.h);
  const double prod_p = period_product(spec.p);
  report.quantities["product_h"] = prod_h;
  report.quantities["product_p"] = prod_p;
  const bool ne_h = std::abs(prod_h - 1.0) > kUnitProductTol;
  const bool ne_p = std::abs(prod_p - 1.0) > kUnitProductTol;
  add(report, "product_h_not_one", ne_h, "prod(1 + h) = " + fmt(prod_h));
  add(report, "product_p_not_one", ne_p, "prod(1 + p) = " + fmt(prod_p));

  if (ne_h && ne_p) {
    const double alpha_h = 1.0 / (1.0 - prod_h);
    const double alpha_p = 1.0 / (1.0 - prod_p);
    report.quantities["alpha_h"] = alpha_h;
    report.quantities["alpha_p"] = alpha_p;
    report.quantities["abs_alpha_h"] = std::abs(alpha_h);
    report.quantities["abs_alpha_p"] = std::abs(alpha_p);

    const double k1 = periodic_gain(spec.h, spec.a);
    const double k2 = periodic_gain(spec.p, spec.b);
    const double w1 = spec.f.bound();
    const double w2 = spec.g.bound();
    report.quantities["K1"] = k1;
    report.quantities["K2"] = k2;
    report.quantities["W1"] = w1;
    report.quantities["W2"] = w2;
    add(report, "gain_bounds", std::isfinite(k1) && std::isfinite(k2),
        "K1 = " + fmt(k1) + ", K2 = " + fmt(k2));

    const double w_bounded = std::max(w1 * k1, w2 * k2);
    report.quantities["W_bounded"] = w_bounded;
    double w = w_bounded;
    if (spec.g.monotone()) {
      report.route = "monotone_g";
      w = std::max(w1 * k1, k2 * spec.g(w1 * k1));
    } else if (spec.f.monotone()) {
      report.route = "monotone_f";
      w = std::max(w2 * k2, k1 * spec.f(w2 * k2));
    } else {
      report.route = "bounded";
    }
    report.quantities["W"] = w;
    add(report, "self_map_radius", std::isfinite(w), report.route + ": W = " + fmt(w));
  }
  finish(report);
  return report;
}

CheckReport check_asymptotic_hypotheses(const SystemSpec& spec, double c1, double c2) {
  CheckReport report;
  report.mode = CheckMode::Asymptotic;
  if (!(c1 > 0.0) || !(c2 > 0.0))
    report.warnings.push_back("c1 and c2 are expected to be positive constants");

  const double prod_h = period_product(spec.h);
  const double prod_p = period_product(spec.p);
  report.quantities["product_h"] = prod_h;
  report.quantities["product_p"] = prod_p;
  const bool eq_h = std::abs(prod_h - 1.0) <= kUnitProductTol;
  const bool eq_p = std::abs(prod_p - 1.0) <= kUnitProductTol;
  add(report, "product_h_one", eq_h, "prod(1 + h) = " + fmt(prod_h));
  add(report, "product_p_one", eq_p, "prod(1 + p) = " + fmt(prod_p));

  long where = 0;
  const bool zero_h = has_zero_factor(spec.h, where);
  add(report, "nonzero_factor_h", !zero_h, zero_h ? "1 + h vanishes at residue " + std::to_string(where) : "1 + h_n != 0");
  const bool zero_p = has_zero_factor(spec.p, where);
  add(report, "nonzero_factor_p", !zero_p, zero_p ? "1 + p vanishes at residue " + std::to_string(where) : "1 + p_n != 0");

  const double a = spec.a.double_tail(0);
  const double b = spec.b.double_tail(0);
  report.quantities["a"] = a;
  report.quantities["b"] = b;
  add(report, "summable_a", std::isfinite(a), "a = " + fmt(a));
  add(report, "summable_b", std::isfinite(b), "b = " + fmt(b));

  if (!zero_h && !zero_p) {
    const auto [m1, big_m1] = reciprocal_product_range(spec.h);
    const auto [m2, big_m2] = reciprocal_product_range(spec.p);
    report.quantities["m1"] = m1;
    report.quantities["M1"] = big_m1;
    report.quantities["m2"] = m2;
    report.quantities["M2"] = big_m2;
    if (std::isfinite(a) && std::isfinite(b)) {
      const double w1 = spec.f.bound();
      const double w2 = spec.g.bound();
      report.quantities["W1"] = w1;
      report.quantities["W2"] = w2;
      const double w_star = std::max(big_m1 / m1 * w1 * a + std::abs(c1) / m1,
                                     big_m2 / m2 * w2 * b + std::abs(c2) / m2);
      report.quantities["W_star"] = w_star;
      add(report, "self_map_radius", std::isfinite(w_star), "W* = " + fmt(w_star));
    }
  }
  finish(report);
  return report;
}

}  // namespace volterra
