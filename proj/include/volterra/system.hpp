#pragma once

#include <map>
#include <string>
#include <vector>

#include "volterra/kernels.hpp"
#include "volterra/sequences.hpp"

namespace volterra {

// Cutoff on |prod(1 + c_l) - 1| separating the periodic regime (product != 1)
// from the asymptotic regime (product = 1).
inline constexpr double kUnitProductTol = 1e-9;

enum class NonlinearityKind { Sin, Cos, Tanh, RationalBounded };

// Closed family of bounded nonlinearities with known sup bound and Lipschitz
// constant:
//   Sin   A sin(kx)      Cos  A cos(kx)
//   Tanh  A tanh(kx)     RationalBounded  A kx / (1 + (kx)^2)
class Nonlinearity {
 public:
  Nonlinearity(NonlinearityKind kind, double amplitude, double frequency);

  double operator()(double x) const noexcept;

  NonlinearityKind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return amplitude_; }
  double frequency() const noexcept { return frequency_; }

  double bound() const noexcept;      // sup |value|
  double lipschitz() const noexcept;  // sup |derivative|
  // Non-decreasing with |g(x)| <= g(|x|).
  bool monotone() const noexcept;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;

 private:
  NonlinearityKind kind_;
  double amplitude_;
  double frequency_;
};

const char* to_string(NonlinearityKind kind) noexcept;

struct SystemSpec {
  long period = 1;
  PeriodicSequence h = PeriodicSequence::zeros(1);
  PeriodicSequence p = PeriodicSequence::zeros(1);
  Kernel a = Kernel::finite_lag({{0.0}});
  Kernel b = Kernel::finite_lag({{0.0}});
  Nonlinearity f{NonlinearityKind::Sin, 0.0, 1.0};
  Nonlinearity g{NonlinearityKind::Sin, 0.0, 1.0};

  // Throws std::invalid_argument when h and p do not share `period`.
  void validate() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

enum class CheckMode { Periodic, Asymptotic };

struct CheckItem {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  CheckMode mode = CheckMode::Periodic;
  bool pass = false;
  std::vector<CheckItem> items;
  std::map<std::string, double> quantities;
  std::vector<std::string> warnings;
  std::string route;  // periodic mode radius: "bounded", "monotone_g" or "monotone_f"

  const CheckItem* item(const std::string& id) const;
  double quantity(const std::string& name) const;  // NaN when absent
};

// |alpha| * sum_{i=n}^{n+T-1} |prod_{l=i+1}^{n+T-1}(1 + c_l)| * sum_{m<=i}|k_{i,m}|,
// maximised over one period of n. This is K_1 (coeff = h, kernel = a) or K_2.
double periodic_gain(const PeriodicSequence& coeff, const Kernel& kernel);

CheckReport check_periodic_hypotheses(const SystemSpec& spec);
CheckReport check_asymptotic_hypotheses(const SystemSpec& spec, double c1, double c2);

}  // namespace volterra
