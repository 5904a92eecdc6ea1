#include "volterra/config.hpp"

#include <cmath>

#include "volterra/errors.hpp"

namespace volterra {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string index(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
  return d;
}

long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], index(path, i)));
  return out;
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, join(path, key));
}

long integer_or(const json& obj, const std::string& key, const std::string& path, long fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : integer(*it, join(path, key));
}

PeriodicSequence sequence(const json& v, const std::string& path, long period) {
  std::vector<double> values = numbers(v, path);
  if (static_cast<long>(values.size()) != period)
    throw ConfigError(path, "has " + std::to_string(values.size()) + " values but period is " + std::to_string(period));
  return PeriodicSequence(std::move(values));
}

Kernel kernel(const json& v, const std::string& path) {
  const std::string type = text(require(v, "type", path), join(path, "type"));
  try {
    if (type == "separable_exponential") {
      return Kernel::separable_exponential(number(require(v, "coef", path), join(path, "coef")),
                                           number(require(v, "row_rate", path), join(path, "row_rate")),
                                           number(require(v, "col_rate", path), join(path, "col_rate")));
    }
    if (type == "finite_lag") {
      const std::string wpath = join(path, "weights");
      const json& w = require(v, "weights", path);
      if (!w.is_array() || w.empty()) throw ConfigError(wpath, "expected a non-empty array of rows");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < w.size(); ++i) rows.push_back(numbers(w[i], index(wpath, i)));
      return Kernel::finite_lag(std::move(rows));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(join(path, "type"), "unknown kernel type '" + type + "'");
}

Nonlinearity nonlinearity(const json& v, const std::string& path) {
  const std::string kind = text(require(v, "kind", path), join(path, "kind"));
  NonlinearityKind k;
  if (kind == "sin") k = NonlinearityKind::Sin;
  else if (kind == "cos") k = NonlinearityKind::Cos;
  else if (kind == "tanh") k = NonlinearityKind::Tanh;
  else if (kind == "rational_bounded") k = NonlinearityKind::RationalBounded;
  else throw ConfigError(join(path, "kind"), "unknown nonlinearity kind '" + kind + "'");
  return Nonlinearity(k, number(require(v, "amplitude", path), join(path, "amplitude")),
                      number(require(v, "frequency", path), join(path, "frequency")));
}

StatePair pair(const json& v, const std::string& path) {
  const std::vector<double> xy = numbers(v, path);
  if (xy.size() != 2) throw ConfigError(path, "expected a pair [x, y]");
  return {xy[0], xy[1]};
}

History history(const json& v, const std::string& path) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  std::vector<StatePair> window{StatePair{}};
  if (auto it = v.find("window"); it != v.end()) {
    const std::string wpath = join(path, "window");
    if (!it->is_array() || it->empty()) throw ConfigError(wpath, "expected a non-empty array of [x, y] pairs");
    window.clear();
    for (std::size_t i = 0; i < it->size(); ++i) window.push_back(pair((*it)[i], index(wpath, i)));
  }
  auto tail = v.find("tail");
  if (tail == v.end() || (tail->is_string() && tail->get<std::string>() == "zero"))
    return History(std::move(window), History::Tail::Zero);
  const std::string tpath = join(path, "tail");
  if (tail->is_object() && tail->contains("constant"))
    return History(std::move(window), History::Tail::Constant, pair((*tail)["constant"], join(tpath, "constant")));
  throw ConfigError(tpath, "expected \"zero\" or {\"constant\": [x, y]}");
}

}  // namespace

SystemSpec system_from_json(const json& doc) {
  SystemSpec spec;
  spec.period = integer(require(doc, "period", ""), "period");
  if (spec.period < 1) throw ConfigError("period", "must be a positive integer");
  spec.h = sequence(require(doc, "h", ""), "h", spec.period);
  spec.p = sequence(require(doc, "p", ""), "p", spec.period);
  spec.a = kernel(require(doc, "kernel_a", ""), "kernel_a");
  spec.b = kernel(require(doc, "kernel_b", ""), "kernel_b");
  spec.f = nonlinearity(require(doc, "f", ""), "f");
  spec.g = nonlinearity(require(doc, "g", ""), "g");
  return spec;
}

Scenario scenario_from_json(const json& doc) {
  Scenario sc;
  sc.system = system_from_json(doc);
  if (auto it = doc.find("history"); it != doc.end()) sc.history = history(*it, "history");

  if (auto it = doc.find("solver"); it != doc.end()) {
    const json& s = *it;
    if (!s.is_object()) throw ConfigError("solver", "expected an object");
    auto& o = sc.solver;
    o.tol = number_or(s, "tol", "solver", o.tol);
    o.residual_tol = number_or(s, "residual_tol", "solver", o.residual_tol);
    o.max_iter = integer_or(s, "max_iter", "solver", o.max_iter);
    o.damping = number_or(s, "damping", "solver", o.damping);
    if (auto st = s.find("strategy"); st != s.end()) {
      const std::string name = text(*st, "solver.strategy");
      try {
        o.strategy = strategy_from_string(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("solver.strategy", e.what());
      }
    }
    if (!(o.tol > 0.0)) throw ConfigError("solver.tol", "must be positive");
    if (!(o.residual_tol > 0.0)) throw ConfigError("solver.residual_tol", "must be positive");
    if (o.max_iter < 1) throw ConfigError("solver.max_iter", "must be >= 1");
    if (!(o.damping > 0.0 && o.damping <= 1.0)) throw ConfigError("solver.damping", "must lie in (0, 1]");
    if (auto g = s.find("initial_guess"); g != s.end()) {
      const long t = sc.system.period;
      o.initial_guess = PeriodicPair{sequence(require(*g, "x", "solver.initial_guess"), "solver.initial_guess.x", t),
                                     sequence(require(*g, "y", "solver.initial_guess"), "solver.initial_guess.y", t)};
    }
  }

  if (auto it = doc.find("truncation"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("truncation", "expected an object");
    sc.truncation.tail_tol = number_or(*it, "tail_tol", "truncation", sc.truncation.tail_tol);
    sc.truncation.max_terms = integer_or(*it, "max_terms", "truncation", sc.truncation.max_terms);
    if (!(sc.truncation.tail_tol > 0.0)) throw ConfigError("truncation.tail_tol", "must be positive");
    if (sc.truncation.max_terms < 1) throw ConfigError("truncation.max_terms", "must be >= 1");
  }
  sc.c1 = number_or(doc, "c1", "", sc.c1);
  sc.c2 = number_or(doc, "c2", "", sc.c2);
  if (auto it = doc.find("horizon"); it != doc.end()) {
    sc.horizon = integer(*it, "horizon");
    if (*sc.horizon < 0) throw ConfigError("horizon", "must be >= 0");
  }
  return sc;
}

namespace {

json parse_document(std::string_view text) {
  try {
    json doc = json::parse(text.begin(), text.end());
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

SystemSpec parse_system(std::string_view json_text) { return system_from_json(parse_document(json_text)); }
Scenario parse_scenario(std::string_view json_text) { return scenario_from_json(parse_document(json_text)); }

json to_json(const Kernel& k) {
  if (const auto* s = k.separable())
    return {{"type", "separable_exponential"}, {"coef", s->coef}, {"row_rate", s->row_rate}, {"col_rate", s->col_rate}};
  return {{"type", "finite_lag"}, {"weights", k.lagged()->weights}};
}

json to_json(const Nonlinearity& f) {
  return {{"kind", to_string(f.kind())}, {"amplitude", f.amplitude()}, {"frequency", f.frequency()}};
}

json to_json(const History& h) {
  json window = json::array();
  for (const auto& p : h.window()) window.push_back({p.x, p.y});
  json out = {{"window", window}};
  if (h.tail() == History::Tail::Zero) out["tail"] = "zero";
  else out["tail"] = {{"constant", {h.tail_value().x, h.tail_value().y}}};
  return out;
}

json to_json(const SystemSpec& spec) {
  const auto values = [](const PeriodicSequence& s) { return std::vector<double>(s.values().begin(), s.values().end()); };
  return {{"period", spec.period}, {"h", values(spec.h)}, {"p", values(spec.p)}, {"kernel_a", to_json(spec.a)},
          {"kernel_b", to_json(spec.b)}, {"f", to_json(spec.f)}, {"g", to_json(spec.g)}};
}

json to_json(const Scenario& sc) {
  json out = to_json(sc.system);
  out["history"] = to_json(sc.history);
  out["solver"] = {{"tol", sc.solver.tol},
                   {"residual_tol", sc.solver.residual_tol},
                   {"max_iter", sc.solver.max_iter},
                   {"damping", sc.solver.damping},
                   {"strategy", to_string(sc.solver.strategy)}};
  if (sc.solver.initial_guess) {
    const auto& g = *sc.solver.initial_guess;
    out["solver"]["initial_guess"] = {{"x", std::vector<double>(g.x.values().begin(), g.x.values().end())},
                                      {"y", std::vector<double>(g.y.values().begin(), g.y.values().end())}};
  }
  out["truncation"] = {{"tail_tol", sc.truncation.tail_tol}, {"max_terms", sc.truncation.max_terms}};
  out["c1"] = sc.c1;
  out["c2"] = sc.c2;
  if (sc.horizon) out["horizon"] = *sc.horizon;
  return out;
}

}  // namespace volterra
