#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "volterra/config.hpp"
#include "volterra/errors.hpp"

using namespace volterra;
using nlohmann::json;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(VOLTERRA_SCENARIO_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base() {
  return json::parse(R"({
    "period": 2, "h": [2, 0], "p": [0, 2],
    "kernel_a": {"type": "separable_exponential", "coef": 1, "row_rate": 1, "col_rate": 1},
    "kernel_b": {"type": "finite_lag", "weights": [[1, 0.5], [0.25]]},
    "f": {"kind": "sin", "amplitude": 1, "frequency": 1},
    "g": {"kind": "rational_bounded", "amplitude": 2, "frequency": 3}
  })");
}

// Path named by the ConfigError thrown for doc, or "" if none.
std::string error_path(const json& doc) {
  try {
    parse_scenario(doc.dump());
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped scenarios transcribe the examples") {
  CHECK(parse_system(slurp("example1.json")) == fixtures::example1());
  CHECK(parse_system(slurp("example2.json")) == fixtures::example2());
  const Scenario s2 = parse_scenario(slurp("example2.json"));
  CHECK(s2.horizon == 60);
  CHECK(s2.truncation.tail_tol == 1e-10);
  CHECK(s2.c1 == 1.0);
}

TEST_CASE("defaults") {
  const Scenario s = parse_scenario(base().dump());
  CHECK(s.c1 == 1.0);
  CHECK(s.c2 == 1.0);
  CHECK_FALSE(s.horizon.has_value());
  CHECK(s.history == History::zero());
  CHECK(s.solver.tol == 1e-12);
  CHECK(s.solver.residual_tol == 1e-8);
  CHECK_FALSE(s.solver.initial_guess.has_value());
  CHECK(s.system.b.lagged()->weights[1] == std::vector<double>{0.25, 0.0});
}

TEST_CASE("errors carry field paths") {
  json d = base();
  d["h"] = {1, 2, 3};
  CHECK(error_path(d) == "h");

  d = base();
  d["period"] = 0;
  CHECK(error_path(d) == "period");

  d = base();
  d["period"] = 1.5;
  CHECK(error_path(d) == "period");

  d = base();
  d.erase("kernel_b");
  CHECK(error_path(d) == "kernel_b");

  d = base();
  d["kernel_a"]["row_rate"] = -1;
  CHECK(error_path(d).rfind("kernel_a", 0) == 0);

  d = base();
  d["kernel_a"]["row_rate"] = "fast";
  CHECK(error_path(d) == "kernel_a.row_rate");

  d = base();
  d["kernel_a"]["type"] = "gaussian";
  CHECK(error_path(d) == "kernel_a.type");

  d = base();
  d["g"]["kind"] = "exp";
  CHECK(error_path(d) == "g.kind");

  d = base();
  d["f"].erase("amplitude");
  CHECK(error_path(d) == "f.amplitude");

  d = base();
  d["solver"] = {{"strategy", "bisection"}};
  CHECK(error_path(d) == "solver.strategy");

  d = base();
  d["history"] = {{"window", {{1.0, "x"}}}};
  CHECK(error_path(d).rfind("history.window", 0) == 0);

  d = base();
  d["horizon"] = -3;
  CHECK(error_path(d) == "horizon");

  d = base();
  d["solver"] = {{"initial_guess", {{"x", {1.0}}, {"y", {1.0, 2.0}}}}};
  CHECK(error_path(d) == "solver.initial_guess.x");

  CHECK_THROWS_AS(parse_system("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_system("[1, 2]"), ConfigError);
}

TEST_CASE("history and solver blocks") {
  json d = base();
  d["history"] = {{"window", {{3, 4}, {1, 2}}}, {"tail", {{"constant", {5, 6}}}}};
  d["solver"] = {{"tol", 1e-9},       {"residual_tol", 1e-7}, {"max_iter", 50},
                 {"damping", 0.25},   {"strategy", "newton_only"},
                 {"initial_guess", {{"x", {1, 2}}, {"y", {3, 4}}}}};
  d["truncation"] = {{"tail_tol", 1e-9}, {"max_terms", 500}};
  d["c1"] = 2.5;
  const Scenario s = parse_scenario(d.dump());
  CHECK(s.history.at(-1) == StatePair{3, 4});
  CHECK(s.history.at(0) == StatePair{1, 2});
  CHECK(s.history.at(-9) == StatePair{5, 6});
  CHECK(s.solver.max_iter == 50);
  CHECK(s.solver.damping == 0.25);
  CHECK(s.solver.strategy == Strategy::NewtonOnly);
  CHECK(s.solver.initial_guess->y[1] == 4.0);
  CHECK(s.truncation.max_terms == 500);
  CHECK(s.c1 == 2.5);
}

TEST_CASE("config echo round trips") {
  for (const char* name : {"example1.json", "example2.json"}) {
    const Scenario s = parse_scenario(slurp(name));
    const Scenario back = scenario_from_json(json::parse(to_json(s).dump()));
    CHECK(back.system == s.system);
    CHECK(back.history == s.history);
    CHECK(back.c1 == s.c1);
    CHECK(back.c2 == s.c2);
    CHECK(back.horizon == s.horizon);
    CHECK(back.truncation.tail_tol == s.truncation.tail_tol);
  }
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const SystemSpec s = k % 2 ? fixtures::random_periodic(rng) : fixtures::random_summable(rng);
    CHECK(system_from_json(json::parse(to_json(s).dump())) == s);
  }
}
