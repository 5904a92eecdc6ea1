#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "fixtures.hpp"
#include "volterra/asymptotic_solver.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/simulate.hpp"
#include "volterra/verify.hpp"

using namespace volterra;

namespace {

PeriodicPair orbit() {
  SolverOptions o;
  o.initial_guess = PeriodicPair{PeriodicSequence::constant(1.0, 2), PeriodicSequence::constant(1.0, 2)};
  return solve_periodic(fixtures::example1(), o).solution;
}

}  // namespace

TEST_CASE("direct delay sums") {
  const Kernel k = Kernel::separable_exponential(1.5, 0.8, 1.1);
  const auto vals = [](long m) { return std::sin(double(m)); };
  const DirectSum d = direct_delay_sum(k, 3, vals, 30, 1.0);
  double ref = 0.0, dropped = 0.0;
  for (long m = 3 - 30; m <= 3; ++m) ref += oracle::kernel_value(k, 3, m) * vals(m);
  for (long m = 3 - 31; m >= 3 - 400; --m) dropped += std::abs(oracle::kernel_value(k, 3, m));
  CHECK(d.value == doctest::Approx(ref).epsilon(1e-14));
  CHECK(d.remainder >= dropped * (1 - 1e-12));
  CHECK(d.remainder <= dropped * (1 + 1e-9));

  const Kernel lag = Kernel::finite_lag({{1.0, 2.0, 3.0, 4.0}});
  const DirectSum l = direct_delay_sum(lag, 0, [](long m) { return double(m); }, 1, 10.0);
  CHECK(l.value == 0.0 - 2.0 - 6.0 - 12.0);
  CHECK(l.remainder == 0.0);
}

TEST_CASE("periodic orbit of the first example") {
  const PeriodicPair sol = orbit();
  const PeriodicVerification v = verify_periodic(fixtures::example1(), sol, 21);
  CHECK(v.n_checks == 21);
  CHECK(v.max_defect <= 1e-8);
  CHECK(v.drift_steps == 20);
  CHECK(v.max_drift <= 1e-6);
}

TEST_CASE("zero solution of the silenced system") {
  const PeriodicPair zero{PeriodicSequence::zeros(2), PeriodicSequence::zeros(2)};
  const PeriodicVerification v = verify_periodic(fixtures::silenced(fixtures::example1()), zero, 11);
  CHECK(v.max_defect == 0.0);
  CHECK(v.max_drift == 0.0);
}

TEST_CASE("perturbed orbit is caught") {
  const PeriodicPair sol = orbit();
  std::vector<double> x = oracle::values(sol.x);
  x[0] += 1e-3;
  const PeriodicPair bad{PeriodicSequence(x), sol.y};
  const PeriodicVerification v = verify_periodic(fixtures::example1(), bad, 11);
  CHECK(v.max_defect >= 1e-4);
}

TEST_CASE("direct and planned residuals agree") {
  const SystemSpec s = fixtures::example1();
  const PeriodicPair sol = orbit();
  const auto xs = [&](long m) { return sol.x[m]; };
  const auto ys = [&](long m) { return sol.y[m]; };
  const auto direct = direct_residuals(s, xs, ys, 0, 11, 200);
  const auto planned = residuals(s, xs, ys, 0, 11, TruncationPolicy{1e-13, 100000});
  for (std::size_t k = 0; k < direct.size(); ++k) {
    CHECK(std::abs(direct[k].x - planned[k].x) <= 1e-9);
    CHECK(std::abs(direct[k].y - planned[k].y) <= 1e-9);
  }
}

TEST_CASE("decomposition of the second example") {
  const SystemSpec s = fixtures::example2();
  const AsymptoticSolveReport r = solve_asymptotic(s, 1, 1, 60, {}, TruncationPolicy{1e-10, 100000});
  const DecompositionVerification v = verify_decomposition(s, r.decomposition);
  CHECK(v.u_periodic);
  CHECK(v.u_product_gap <= 1e-12);
  CHECK(v.envelope_ok);
  CHECK(v.residual_ok);
  CHECK(v.max_residual <= 1e-8);
  CHECK(v.decay_ok);
  CHECK(v.pass);

  Decomposition tampered = r.decomposition;
  std::fill(tampered.v1.begin(), tampered.v1.end(), 1e-2);
  const DecompositionVerification t = verify_decomposition(s, tampered);
  CHECK_FALSE(t.envelope_ok);
  CHECK(t.first_envelope_violation == 7);
  CHECK_FALSE(t.pass);
}

TEST_CASE("zero decomposition") {
  const SystemSpec s = fixtures::silenced(fixtures::example2());
  const AsymptoticSolveReport r = solve_asymptotic(s, 0, 0, 20, {}, TruncationPolicy{1e-10, 100000});
  const DecompositionVerification v = verify_decomposition(s, r.decomposition);
  CHECK(v.pass);
  CHECK(v.max_residual == 0.0);
}

TEST_CASE("self-map samplers") {
  const SelfMapSample p = sample_self_map_periodic(fixtures::example1(), 100, 3);
  CHECK(p.samples == 100);
  CHECK(p.pass);
  CHECK(p.max_image <= p.bound + 1e-9);
  CHECK(p.radius == doctest::Approx(3.16395341373865285));

  const SelfMapSample a = sample_self_map_asymptotic(fixtures::example2(), 1, 1, 20, TruncationPolicy{1e-10, 100000},
                                                     100, 3);
  CHECK(a.pass);
  CHECK(a.radius == doctest::Approx(6.00530060215423749));

  // same seed, same answer
  CHECK(sample_self_map_periodic(fixtures::example1(), 50, 9).max_image ==
        sample_self_map_periodic(fixtures::example1(), 50, 9).max_image);
}
