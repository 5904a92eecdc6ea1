#pragma once

#include <random>

#include "volterra/system.hpp"

namespace fixtures {

using namespace volterra;

inline SystemSpec example1() {
  SystemSpec s;
  s.period = 2;
  s.h = PeriodicSequence({2.0, 0.0});
  s.p = PeriodicSequence({0.0, 2.0});
  s.a = Kernel::separable_exponential(1.0, 1.0, 1.0);
  s.b = Kernel::separable_exponential(1.0, 1.0, 1.0);
  s.f = Nonlinearity(NonlinearityKind::Sin, 1.0, 1.0);
  s.g = Nonlinearity(NonlinearityKind::Sin, 1.0, 2.0);
  return s;
}

inline SystemSpec example2() {
  SystemSpec s;
  s.period = 2;
  s.h = PeriodicSequence({-0.5, 1.0});
  s.p = PeriodicSequence({-0.5, 1.0});
  s.a = Kernel::separable_exponential(1.0, 1.0, 2.0);
  s.b = Kernel::separable_exponential(1.0, 2.0, 3.0);
  s.f = Nonlinearity(NonlinearityKind::Cos, 1.0, 1.0);
  s.g = Nonlinearity(NonlinearityKind::Cos, 1.0, 2.0);
  return s;
}

inline SystemSpec silenced(SystemSpec s) {
  s.f = Nonlinearity(s.f.kind(), 0.0, s.f.frequency());
  s.g = Nonlinearity(s.g.kind(), 0.0, s.g.frequency());
  return s;
}

inline NonlinearityKind random_kind(std::mt19937_64& rng) {
  static constexpr NonlinearityKind kinds[] = {NonlinearityKind::Sin, NonlinearityKind::Cos, NonlinearityKind::Tanh,
                                               NonlinearityKind::RationalBounded};
  return kinds[std::uniform_int_distribution<int>(0, 3)(rng)];
}

// Diagonal-periodic kernels (rho == sigma or finite lag), products away from 1.
inline SystemSpec random_periodic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> shift(-0.9, 2.0);
  SystemSpec s;
  s.period = std::uniform_int_distribution<long>(1, 4)(rng);
  const auto seq = [&] {
    for (;;) {
      std::vector<double> v(static_cast<std::size_t>(s.period));
      for (auto& x : v) x = shift(rng);
      PeriodicSequence out(v);
      if (std::abs(period_product(out) - 1.0) > 0.05) return out;
    }
  };
  s.h = seq();
  s.p = seq();
  const auto kernel = [&] {
    if (std::bernoulli_distribution(0.7)(rng)) {
      const double rate = u(rng);
      return Kernel::separable_exponential(coef(rng), rate, rate);
    }
    const long lag = std::uniform_int_distribution<long>(0, 5)(rng);
    std::vector<std::vector<double>> w(static_cast<std::size_t>(s.period), std::vector<double>(lag + 1));
    for (auto& row : w)
      for (auto& x : row) x = coef(rng);
    return Kernel::finite_lag(w);
  };
  s.a = kernel();
  s.b = kernel();
  s.f = Nonlinearity(random_kind(rng), coef(rng), coef(rng));
  s.g = Nonlinearity(random_kind(rng), coef(rng), coef(rng));
  return s;
}

// Unit period products, summable separable kernels.
inline SystemSpec random_summable(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.3, 2.0);
  std::uniform_real_distribution<double> gap(0.5, 2.0);
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  std::uniform_real_distribution<double> factor(0.4, 2.5);
  SystemSpec s;
  s.period = std::uniform_int_distribution<long>(1, 4)(rng);
  const auto seq = [&] {
    // factors whose product is 1: last one closes the period
    std::vector<double> v(static_cast<std::size_t>(s.period));
    double prod = 1.0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      const double q = factor(rng);
      v[k] = q - 1.0;
      prod *= q;
    }
    v.back() = 1.0 / prod - 1.0;
    return PeriodicSequence(v);
  };
  s.h = seq();
  s.p = seq();
  const auto kernel = [&] {
    const double r = rate(rng);
    return Kernel::separable_exponential(coef(rng), r, r + gap(rng));
  };
  s.a = kernel();
  s.b = kernel();
  s.f = Nonlinearity(random_kind(rng), coef(rng), coef(rng));
  s.g = Nonlinearity(random_kind(rng), coef(rng), coef(rng));
  return s;
}

}  // namespace fixtures
