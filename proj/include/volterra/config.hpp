#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "volterra/kernels.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/sequences.hpp"
#include "volterra/system.hpp"

namespace volterra {

// Everything a scenario document carries besides the system itself.
struct Scenario {
  SystemSpec system;
  History history = History::zero();
  SolverOptions solver;
  TruncationPolicy truncation;
  double c1 = 1.0;
  double c2 = 1.0;
  std::optional<long> horizon;
};

// Both parsers throw ConfigError naming the offending field.
SystemSpec parse_system(std::string_view json_text);
Scenario parse_scenario(std::string_view json_text);

SystemSpec system_from_json(const nlohmann::json& doc);
Scenario scenario_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const Kernel& k);
nlohmann::json to_json(const Nonlinearity& f);
nlohmann::json to_json(const History& h);
nlohmann::json to_json(const SystemSpec& spec);
nlohmann::json to_json(const Scenario& scenario);

}  // namespace volterra
