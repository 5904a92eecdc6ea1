#include <doctest.h>

#include <cmath>
#include <random>

#include "volterra/errors.hpp"
#include "volterra/sequences.hpp"

using namespace volterra;

namespace {

// |a - b| in units of the spacing at the larger magnitude.
double ulps(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / (std::nextafter(scale, INFINITY) - scale);
}

}  // namespace

TEST_CASE("get wraps with mathematical modulus") {
  const PeriodicSequence s({2.0, 0.0});
  CHECK(s.get(5) == 0.0);
  CHECK(s.get(-1) == 0.0);
  CHECK(s.get(-2) == 2.0);
  CHECK(s.get(-7) == 0.0);
  const PeriodicSequence c = PeriodicSequence::constant(3.25);
  for (long n = -10; n <= 10; ++n) CHECK(c[n] == 3.25);
}

TEST_CASE("get is exactly periodic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (long t = 1; t <= 6; ++t) {
    std::vector<double> v(static_cast<std::size_t>(t));
    for (auto& x : v) x = u(rng);
    const PeriodicSequence s(v);
    for (long n = -20; n <= 20; ++n)
      for (long k = -4; k <= 4; ++k) CHECK(s.get(n + k * t) == s.get(n));
  }
}

TEST_CASE("sequence validation") {
  CHECK_THROWS_AS(PeriodicSequence(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicSequence({1.0, NAN}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicSequence({INFINITY}), std::invalid_argument);
}

TEST_CASE("product_one_plus examples") {
  const PeriodicSequence h1({2.0, 0.0});
  CHECK(product_one_plus(h1, 0, 1) == 3.0);
  CHECK(product_one_plus(h1, 5, 4) == 1.0);
  CHECK(product_one_plus(h1, 100, -3) == 1.0);
  const PeriodicSequence h2({-0.5, 1.0});
  CHECK(product_one_plus(h2, 0, 1) == 1.0);
  CHECK(period_product(h1) == 3.0);
  // long ranges: 3^k times partial
  CHECK(product_one_plus(h1, 0, 9) == 243.0);
  CHECK(product_one_plus(h1, 1, 10) == 243.0);
  CHECK(product_one_plus(h1, -4, 0) == 27.0);
}

TEST_CASE("product_one_plus against a running product") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.8, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const long t = 1 + trial % 5;
    std::vector<double> v(static_cast<std::size_t>(t));
    for (auto& x : v) x = u(rng);
    const PeriodicSequence s(v);
    for (long a = -6; a <= 6; ++a)
      for (long b = a - 1; b <= a + 12; ++b) {
        double p = 1.0;
        for (long l = a; l <= b; ++l) p *= 1.0 + s[l];
        CHECK(product_one_plus(s, a, b) == doctest::Approx(p).epsilon(1e-13));
      }
  }
}

TEST_CASE("product splits and shifts within 4 ulps") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.8, 1.5);
  double worst_split = 0.0, worst_shift = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const long t = 1 + trial % 6;
    std::vector<double> v(static_cast<std::size_t>(t));
    for (auto& x : v) x = u(rng);
    const PeriodicSequence s(v);
    std::uniform_int_distribution<long> idx(-10, 10);
    long a = idx(rng), b = idx(rng), c = idx(rng);
    if (a > b) std::swap(a, b);
    if (b >= c) c = b + 1 + (c < 0 ? -c : c) % 3;
    const double lhs = product_one_plus(s, a, b) * product_one_plus(s, b + 1, c);
    worst_split = std::max(worst_split, ulps(lhs, product_one_plus(s, a, c)));
    const long n = idx(rng);
    worst_shift = std::max(worst_shift, ulps(product_one_plus(s, n, n + t - 1), product_one_plus(s, 0, t - 1)));
  }
  CHECK(worst_split <= 4.0);
  CHECK(worst_shift <= 4.0);
}

TEST_CASE("history lookup") {
  const History zero({{1.0, 2.0}}, History::Tail::Zero);
  CHECK(zero.at(-3) == StatePair{0.0, 0.0});
  CHECK(zero.at(0) == StatePair{1.0, 2.0});
  const History cst({{1.0, 2.0}}, History::Tail::Constant, {5.0, 5.0});
  CHECK(cst.at(-3) == StatePair{5.0, 5.0});
  CHECK(cst.at(0) == StatePair{1.0, 2.0});
  CHECK_THROWS_AS(cst.at(1), std::out_of_range);

  const History w({{7.0, 8.0}, {3.0, 4.0}, {1.0, 2.0}}, History::Tail::Zero);
  CHECK(w.depth() == 2);
  CHECK(w.at(-2) == StatePair{7.0, 8.0});
  CHECK(w.at(-1) == StatePair{3.0, 4.0});
  CHECK(w.sup_abs().x == 7.0);
  CHECK(w.sup_abs().y == 8.0);
}

TEST_CASE("history validation") {
  CHECK_THROWS(History({}, History::Tail::Zero));
  CHECK_THROWS(History({{NAN, 0.0}}, History::Tail::Zero));
  CHECK_THROWS(History({{0.0, 0.0}}, History::Tail::Constant, {0.0, INFINITY}));
}
