#pragma once

#include <functional>
#include <string>
#include <vector>

#include "volterra/execution.hpp"

namespace volterra {

enum class Strategy { PicardThenNewton, PicardOnly, NewtonOnly };
enum class Method { Picard, DampedPicard, Newton };

const char* to_string(Strategy s) noexcept;
const char* to_string(Method m) noexcept;
Strategy strategy_from_string(const std::string& name);  // throws std::invalid_argument

struct FixedPointOptions {
  double tol = 1e-12;
  long max_iter = 500;
  double damping = 0.5;  // theta in (0, 1]
  Strategy strategy = Strategy::PicardThenNewton;
  Execution exec = Execution::Serial;  // Jacobian columns
};

struct FixedPointResult {
  std::vector<double> z;
  long iterations = 0;
  Method method = Method::DampedPicard;
  double final_update_norm = 0.0;  // ||map(z) - z||_inf at the returned z
  bool converged = false;
};

using VectorMap = std::function<std::vector<double>(const std::vector<double>&)>;

double max_norm(const std::vector<double>& v) noexcept;
double max_norm_diff(const std::vector<double>& a, const std::vector<double>& b) noexcept;

// Seeks z = map(z). Damped Picard z <- (1 - theta) z + theta map(z) until the
// step drops below tol or the step norm fails to decrease for ten consecutive
// iterations; then Newton on F(z) = z - map(z) with a central-difference
// Jacobian (step 1e-6 max(1, |z_j|)) and a backtracking line search.
FixedPointResult solve_fixed_point(const VectorMap& map, std::vector<double> z0,
                                   const FixedPointOptions& opts);

// dF/dz for F(z) = z - map(z) by central differences, column-major.
std::vector<std::vector<double>> fixed_point_jacobian(const VectorMap& map, const std::vector<double>& z,
                                                      Execution exec);

}  // namespace volterra
