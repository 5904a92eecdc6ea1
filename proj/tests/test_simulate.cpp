#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "fixtures.hpp"
#include "volterra/simulate.hpp"

using namespace volterra;

TEST_CASE("linear part only") {
  const SystemSpec s = fixtures::silenced(fixtures::example1());
  const Trajectory tr = simulate(s, History({{1.0, 1.0}}, History::Tail::Zero), 4, {});
  CHECK(tr.x == std::vector<double>{1, 3, 3, 9, 9});
  CHECK(tr.y == std::vector<double>{1, 1, 3, 3, 9});
}

TEST_CASE("zero steps") {
  const Trajectory tr = simulate(fixtures::example2(), History({{0.5, -0.5}}, History::Tail::Zero), 0, {});
  CHECK(tr.steps() == 0);
  CHECK(tr.x == std::vector<double>{0.5});
  CHECK(tr.y == std::vector<double>{-0.5});
  CHECK_THROWS(simulate(fixtures::example2(), History::zero(), -1, {}));
}

TEST_CASE("steps agree with a direct evaluation of the recurrence") {
  const SystemSpec s = fixtures::example1();
  const History hist({{0.3, -0.1}, {0.2, 0.4}}, History::Tail::Constant, {0.1, 0.2});
  const Trajectory tr = simulate(s, hist, 12, TruncationPolicy{1e-13, 100000});
  CHECK(tr.tail_tolerance_used == 1e-13);
  const auto xv = [&](long m) { return m <= 0 ? hist.at(m).x : tr.x[static_cast<std::size_t>(m)]; };
  const auto yv = [&](long m) { return m <= 0 ? hist.at(m).y : tr.y[static_cast<std::size_t>(m)]; };
  for (long n = 0; n < 12; ++n) {
    double sa = 0.0, sb = 0.0;
    for (long m = n - 60; m <= n; ++m) {
      sa += oracle::kernel_value(s.a, n, m) * s.f(yv(m));
      sb += oracle::kernel_value(s.b, n, m) * s.g(xv(m));
    }
    CHECK(tr.x[static_cast<std::size_t>(n + 1)] == doctest::Approx((1 + s.h[n]) * xv(n) + sa).epsilon(1e-11));
    CHECK(tr.y[static_cast<std::size_t>(n + 1)] == doctest::Approx((1 + s.p[n]) * yv(n) + sb).epsilon(1e-11));
  }
}

TEST_CASE("deterministic to the bit") {
  const History hist({{0.3, -0.1}}, History::Tail::Constant, {1.0, -1.0});
  const Trajectory a = simulate(fixtures::example2(), hist, 40, {});
  const Trajectory b = simulate(fixtures::example2(), hist, 40, {});
  REQUIRE(a.x.size() == b.x.size());
  CHECK(std::memcmp(a.x.data(), b.x.data(), a.x.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.y.data(), b.y.data(), a.y.size() * sizeof(double)) == 0);
}

TEST_CASE("second example stays within W*") {
  const SystemSpec s = fixtures::example2();
  const double eps = 1e-10;
  const Trajectory tr = simulate(s, History::zero(), 40, TruncationPolicy{eps, 100000});
  const CheckReport r = check_asymptotic_hypotheses(s, 1, 1);
  for (std::size_t k = 0; k < tr.x.size(); ++k) {
    CHECK(std::abs(tr.x[k]) <= r.quantity("W_star") + 40 * eps);
    CHECK(std::abs(tr.y[k]) <= r.quantity("W_star") + 40 * eps);
  }
}

TEST_CASE("residual of simulated trajectories") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const SystemSpec s = trial % 2 ? fixtures::random_summable(rng) : fixtures::random_periodic(rng);
    const double eps = 1e-11;
    const History hist({{0.2, -0.3}, {0.5, 0.1}}, History::Tail::Constant, {0.1, 0.1});
    const Trajectory tr = simulate(s, hist, 15, TruncationPolicy{eps, 100000});
    const auto xs = [&](long m) { return tr.at(m).x; };
    const auto ys = [&](long m) { return tr.at(m).y; };
    const auto res = residuals(s, xs, ys, 0, 15, TruncationPolicy{eps, 100000});
    double scale = 1.0;
    for (std::size_t k = 0; k < tr.x.size(); ++k) scale = std::max({scale, std::abs(tr.x[k]), std::abs(tr.y[k])});
    for (const Defect& d : res) CHECK(d.max() <= 10 * eps + 1e-14 * scale);
  }
}

TEST_CASE("zero data gives zero defect") {
  const SystemSpec s = fixtures::silenced(fixtures::example2());
  const auto zero = [](long) { return 0.0; };
  for (long n = 0; n < 5; ++n) {
    const Defect d = residual(s, zero, zero, n, {});
    CHECK(d.x == 0.0);
    CHECK(d.y == 0.0);
  }
}
