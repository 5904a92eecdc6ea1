#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "volterra/asymptotic_solver.hpp"
#include "volterra/config.hpp"
#include "volterra/errors.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/report.hpp"
#include "volterra/simulate.hpp"
#include "volterra/verify.hpp"

namespace volterra::cli {

namespace {

using nlohmann::json;

struct Args {
  std::string config;
  std::string mode = "periodic";
  std::optional<long> steps;
  std::optional<long> horizon;
  std::optional<double> c1, c2, tol, tail_tol;
  std::string out_path;
  std::string csv_path;
  long samples = 100;
  unsigned long long seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load(const Args& args) {
  Scenario sc = parse_scenario(read_file(args.config));
  if (args.c1) sc.c1 = *args.c1;
  if (args.c2) sc.c2 = *args.c2;
  if (args.tol) {
    if (!(*args.tol > 0.0)) throw ConfigError("--tol", "must be positive");
    sc.solver.tol = *args.tol;
  }
  if (args.tail_tol) {
    if (!(*args.tail_tol > 0.0)) throw ConfigError("--tail-tol", "must be positive");
    sc.truncation.tail_tol = *args.tail_tol;
  }
  if (args.horizon) sc.horizon = *args.horizon;
  return sc;
}

void emit(const json& report, const Args& args, std::ostream& out) {
  if (args.out_path.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream f(args.out_path);
  if (!f) throw ConfigError("--out", "cannot write '" + args.out_path + "'");
  f << report.dump(2) << '\n';
}

void emit_csv(const std::vector<CsvRow>& rows, const Args& args) {
  if (args.csv_path.empty()) return;
  std::ofstream f(args.csv_path);
  if (!f) throw ConfigError("--csv", "cannot write '" + args.csv_path + "'");
  write_csv(f, rows);
}

CheckReport check_for(const Scenario& sc, const std::string& mode) {
  return mode == "periodic" ? check_periodic_hypotheses(sc.system)
                            : check_asymptotic_hypotheses(sc.system, sc.c1, sc.c2);
}

json base_report(const std::string& command, const Scenario& sc) {
  return {{"command", command}, {"config", to_json(sc)}};
}

int cmd_check(const Args& args, std::ostream& out) {
  const Scenario sc = load(args);
  const CheckReport check = check_for(sc, args.mode);
  json report = base_report("check", sc);
  report["check"] = to_json(check);
  emit(report, args, out);
  return check.pass ? kOk : kNotSatisfied;
}

int cmd_simulate(const Args& args, std::ostream& out) {
  const Scenario sc = load(args);
  const long steps = args.steps.value_or(20);
  if (steps < 0) throw ConfigError("--steps", "must be >= 0");
  const Trajectory traj = simulate(sc.system, sc.history, steps, sc.truncation);
  const auto xs = [&](long m) { return traj.at(m).x; };
  const auto ys = [&](long m) { return traj.at(m).y; };
  const std::vector<Defect> res = residuals(sc.system, xs, ys, 0, steps, sc.truncation);

  std::vector<CsvRow> rows;
  double max_res = 0.0;
  double max_abs = 0.0;
  for (long n = 0; n <= steps; ++n) {
    CsvRow r;
    r.n = n;
    r.x = traj.x[static_cast<std::size_t>(n)];
    r.y = traj.y[static_cast<std::size_t>(n)];
    max_abs = std::max({max_abs, std::abs(*r.x), std::abs(*r.y)});
    if (n < steps) {
      r.res_x = res[static_cast<std::size_t>(n)].x;
      r.res_y = res[static_cast<std::size_t>(n)].y;
      max_res = std::max(max_res, res[static_cast<std::size_t>(n)].max());
    }
    rows.push_back(r);
  }
  json report = base_report("simulate", sc);
  report["simulate"] = {{"steps", steps},
                        {"tail_tolerance_used", traj.tail_tolerance_used},
                        {"max_abs_state", json_number(max_abs)},
                        {"max_residual", json_number(max_res)},
                        {"x_final", json_number(traj.x.back())},
                        {"y_final", json_number(traj.y.back())}};
  emit(report, args, out);
  emit_csv(rows, args);
  return kOk;
}

std::vector<CsvRow> periodic_rows(const SystemSpec& spec, const PeriodicPair& sol, long count) {
  const auto xs = [&](long m) { return sol.x[m]; };
  const auto ys = [&](long m) { return sol.y[m]; };
  const auto res = direct_residuals(spec, xs, ys, 0, count, VerifyOptions{}.depth);
  std::vector<CsvRow> rows;
  for (long n = 0; n < count; ++n) {
    CsvRow r;
    r.n = n;
    r.x = sol.x[n];
    r.y = sol.y[n];
    r.res_x = res[static_cast<std::size_t>(n)].x;
    r.res_y = res[static_cast<std::size_t>(n)].y;
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> decomposition_rows(const SystemSpec& spec, const Decomposition& dec) {
  const auto xs = [&](long m) { return dec.x_full(m); };
  const auto ys = [&](long m) { return dec.y_full(m); };
  const auto res = direct_residuals(spec, xs, ys, 0, dec.horizon, VerifyOptions{}.depth);
  std::vector<CsvRow> rows;
  for (long n = 0; n <= dec.horizon; ++n) {
    const auto k = static_cast<std::size_t>(n);
    CsvRow r;
    r.n = n;
    r.x = dec.x(n);
    r.y = dec.y(n);
    r.u1 = dec.u1[n];
    r.v1 = dec.v1[k];
    r.u2 = dec.u2[n];
    r.v2 = dec.v2[k];
    if (n < dec.horizon) {
      r.res_x = res[k].x;
      r.res_y = res[k].y;
    }
    r.bound_v1 = dec.v1_bound[k];
    r.bound_v2 = dec.v2_bound[k];
    rows.push_back(r);
  }
  return rows;
}

long resolve_horizon(const Scenario& sc) { return sc.horizon ? *sc.horizon : default_horizon(sc.system); }

int cmd_solve_periodic(const Args& args, std::ostream& out) {
  const Scenario sc = load(args);
  const CheckReport check = check_periodic_hypotheses(sc.system);
  json report = base_report("solve-periodic", sc);
  report["check"] = to_json(check);
  if (!check.pass) {
    emit(report, args, out);
    return kNotSatisfied;
  }
  const PeriodicSolveReport solve = solve_periodic(sc.system, sc.solver);
  report["solve"] = to_json(solve);
  emit(report, args, out);
  emit_csv(periodic_rows(sc.system, solve.solution, sc.system.period), args);
  return solve.converged ? kOk : kNotSatisfied;
}

int cmd_solve_asymptotic(const Args& args, std::ostream& out) {
  const Scenario sc = load(args);
  const CheckReport check = check_asymptotic_hypotheses(sc.system, sc.c1, sc.c2);
  json report = base_report("solve-asymptotic", sc);
  report["check"] = to_json(check);
  if (!check.pass) {
    emit(report, args, out);
    return kNotSatisfied;
  }
  const long horizon = resolve_horizon(sc);
  if (horizon < 4 * sc.system.period)
    throw ConfigError("--horizon", "must be at least 4T = " + std::to_string(4 * sc.system.period));
  const AsymptoticSolveReport solve =
      solve_asymptotic(sc.system, sc.c1, sc.c2, horizon, sc.solver, sc.truncation, sc.history);
  report["solve"] = to_json(solve);
  emit(report, args, out);
  emit_csv(decomposition_rows(sc.system, solve.decomposition), args);
  return solve.converged ? kOk : kNotSatisfied;
}

int cmd_verify(const Args& args, std::ostream& out) {
  const Scenario sc = load(args);
  const CheckReport check = check_for(sc, args.mode);
  json report = base_report("verify", sc);
  report["check"] = to_json(check);
  if (!check.pass) {
    emit(report, args, out);
    return kNotSatisfied;
  }
  bool ok = true;
  if (args.mode == "periodic") {
    const PeriodicSolveReport solve = solve_periodic(sc.system, sc.solver);
    const PeriodicVerification v = verify_periodic(sc.system, solve.solution, 5 * sc.system.period + 1);
    const SelfMapSample sm = sample_self_map_periodic(sc.system, args.samples, args.seed);
    report["solve"] = to_json(solve);
    report["verification"] = to_json(v);
    report["self_map"] = {{"samples", sm.samples}, {"radius", json_number(sm.radius)}, {"bound", json_number(sm.bound)},
                          {"max_image", json_number(sm.max_image)}, {"pass", sm.pass}};
    ok = solve.converged && v.max_defect <= sc.solver.residual_tol && sm.pass;
    emit_csv(periodic_rows(sc.system, solve.solution, sc.system.period), args);
  } else {
    const long horizon = resolve_horizon(sc);
    if (horizon < 4 * sc.system.period)
      throw ConfigError("--horizon", "must be at least 4T = " + std::to_string(4 * sc.system.period));
    const AsymptoticSolveReport solve =
        solve_asymptotic(sc.system, sc.c1, sc.c2, horizon, sc.solver, sc.truncation, sc.history);
    const DecompositionVerification v =
        verify_decomposition(sc.system, solve.decomposition, sc.solver.residual_tol);
    const SelfMapSample sm =
        sample_self_map_asymptotic(sc.system, sc.c1, sc.c2, horizon, sc.truncation, args.samples, args.seed);
    report["solve"] = to_json(solve);
    report["verification"] = to_json(v);
    report["self_map"] = {{"samples", sm.samples}, {"radius", json_number(sm.radius)}, {"bound", json_number(sm.bound)},
                          {"max_image", json_number(sm.max_image)}, {"pass", sm.pass}};
    ok = solve.converged && v.pass && sm.pass;
    emit_csv(decomposition_rows(sc.system, solve.decomposition), args);
  }
  report["pass"] = ok;
  emit(report, args, out);
  return ok ? kOk : kNotSatisfied;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic and asymptotically periodic solutions of Volterra difference systems with infinite delay",
               "volterra"};
  app.require_subcommand(1);
  Args args;

  const auto common = [&args](CLI::App* sub) {
    sub->add_option("--config", args.config, "scenario JSON document")->required();
    sub->add_option("--out", args.out_path, "write the JSON report here instead of stdout");
    sub->add_option("--tol", args.tol, "fixed-point tolerance");
    sub->add_option("--tail-tol", args.tail_tol, "certified tail bound per truncated sum");
    sub->add_option("--c1", args.c1, "constant c1 of the asymptotic regime");
    sub->add_option("--c2", args.c2, "constant c2 of the asymptotic regime");
    sub->add_option("--seed", args.seed, "seed for randomized self-map sampling");
  };
  const auto mode = [&args](CLI::App* sub) {
    sub->add_option("--mode", args.mode, "periodic | asymptotic")
        ->check(CLI::IsMember({"periodic", "asymptotic"}));
  };

  CLI::App* check = app.add_subcommand("check", "evaluate the existence hypotheses");
  common(check);
  mode(check);

  CLI::App* sim = app.add_subcommand("simulate", "iterate the initial-value problem forward");
  common(sim);
  sim->add_option("--steps", args.steps, "number of steps (default 20)");
  sim->add_option("--csv", args.csv_path, "write the trajectory table here");

  CLI::App* per = app.add_subcommand("solve-periodic", "find a T-periodic solution");
  common(per);
  per->add_option("--csv", args.csv_path, "write the solution table here");

  CLI::App* asy = app.add_subcommand("solve-asymptotic", "find an asymptotically T-periodic solution");
  common(asy);
  asy->add_option("--horizon", args.horizon, "window length (default: envelope below 1e-12)");
  asy->add_option("--csv", args.csv_path, "write the decomposition table here");

  CLI::App* ver = app.add_subcommand("verify", "solve, then certify independently");
  common(ver);
  mode(ver);
  ver->add_option("--horizon", args.horizon, "window length for asymptotic mode");
  ver->add_option("--samples", args.samples, "random states for the self-map check")->check(CLI::PositiveNumber);
  ver->add_option("--csv", args.csv_path, "write the solution table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(args, out);
    if (sim->parsed()) return cmd_simulate(args, out);
    if (per->parsed()) return cmd_solve_periodic(args, out);
    if (asy->parsed()) return cmd_solve_asymptotic(args, out);
    if (ver->parsed()) return cmd_verify(args, out);
  } catch (const ConfigError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const VolterraError& e) {
    err << "not satisfied: " << e.what() << '\n';
    return kNotSatisfied;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace volterra::cli
