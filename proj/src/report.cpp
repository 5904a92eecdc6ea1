#include "volterra/report.hpp"

#include <cmath>
#include <cstdio>

namespace volterra {

using nlohmann::json;

json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json to_json(const CheckReport& r) {
  json items = json::array();
  for (const auto& it : r.items) items.push_back({{"id", it.id}, {"pass", it.pass}, {"detail", it.detail}});
  json quantities = json::object();
  for (const auto& [k, v] : r.quantities) quantities[k] = json_number(v);
  json out = {{"mode", r.mode == CheckMode::Periodic ? "periodic" : "asymptotic"},
              {"pass", r.pass},
              {"items", items},
              {"quantities", quantities},
              {"warnings", r.warnings}};
  if (!r.route.empty()) out["route"] = r.route;
  return out;
}

json to_json(const PeriodicSolveReport& r) {
  const auto values = [](const PeriodicSequence& s) { return std::vector<double>(s.values().begin(), s.values().end()); };
  return {{"converged", r.converged},
          {"solution", {{"x", values(r.solution.x)}, {"y", values(r.solution.y)}}},
          {"alpha_h", json_number(r.alpha_h)},
          {"alpha_p", json_number(r.alpha_p)},
          {"iterations", r.iterations},
          {"method_used", to_string(r.method_used)},
          {"final_update_norm", json_number(r.final_update_norm)},
          {"residual_max", json_number(r.residual_max)},
          {"drift_max", json_number(r.drift_max)},
          {"solution_norm", json_number(r.solution_norm)}};
}

json to_json(const AsymptoticSolveReport& r) {
  const auto& d = r.decomposition;
  const auto values = [](const PeriodicSequence& s) { return std::vector<double>(s.values().begin(), s.values().end()); };
  return {{"converged", r.converged},
          {"c1", d.c1},
          {"c2", d.c2},
          {"horizon", d.horizon},
          {"u1", values(d.u1)},
          {"u2", values(d.u2)},
          {"iterations", r.iterations},
          {"method_used", to_string(r.method_used)},
          {"final_update_norm", json_number(r.final_update_norm)},
          {"residual_max", json_number(r.residual_max)},
          {"envelope_ok", r.envelope_ok},
          {"decay_ok", r.decay_ok},
          {"outer_cut", r.outer_cut},
          {"truncation_error", json_number(d.truncation_error)},
          {"W_star", json_number(r.w_star)},
          {"solution_norm", json_number(r.solution_norm)},
          {"warnings", r.warnings}};
}

json to_json(const PeriodicVerification& r) {
  return {{"max_defect", json_number(r.max_defect)},
          {"max_defect_x", json_number(r.max_defect_x)},
          {"max_defect_y", json_number(r.max_defect_y)},
          {"max_remainder", json_number(r.max_remainder)},
          {"max_drift", json_number(r.max_drift)},
          {"n_checks", r.n_checks},
          {"drift_steps", r.drift_steps}};
}

json to_json(const DecompositionVerification& r) {
  return {{"pass", r.pass},
          {"u_periodic", r.u_periodic},
          {"u_product_gap", json_number(r.u_product_gap)},
          {"envelope_ok", r.envelope_ok},
          {"first_envelope_violation", r.first_envelope_violation},
          {"residual_ok", r.residual_ok},
          {"max_residual", json_number(r.max_residual)},
          {"decay_ok", r.decay_ok}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << kCsvHeader << '\n';
  const auto cell = [&os](const std::optional<double>& v) {
    os << ',';
    if (v) os << format_double(*v);
  };
  for (const auto& r : rows) {
    os << r.n;
    cell(r.x);
    cell(r.y);
    cell(r.u1);
    cell(r.v1);
    cell(r.u2);
    cell(r.v2);
    cell(r.res_x);
    cell(r.res_y);
    cell(r.bound_v1);
    cell(r.bound_v2);
    os << '\n';
  }
}

}  // namespace volterra
