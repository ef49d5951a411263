#include "rds/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "rds/errors.hpp"

namespace rds {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  require_object(j, where);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": must be finite");
  return x;
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

int integer(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

int integer_or(const json& j, const std::string& key, int fallback, const std::string& where) {
  return j.contains(key) ? integer(j, key, where) : fallback;
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

InitialSpec parse_initial(const json& j, const std::string& where) {
  require_object(j, where);
  if (j.size() != 1) throw ConfigError(where + ": expected exactly one initial-data kind");
  const auto& [kind, body] = *j.items().begin();
  const std::string at = where + "." + kind;
  if (kind == "constant") {
    check_keys(body, {"value"}, at);
    initial::Constant c{number(body, "value", at)};
    if (c.value < 0.0) throw ConfigError(at + ": value must be nonnegative");
    return c;
  }
  if (kind == "cosine_bump") {
    check_keys(body, {"base", "amplitude", "mode"}, at);
    initial::CosineBump c{number(body, "base", at), number(body, "amplitude", at),
                          integer_or(body, "mode", 1, at)};
    if (std::abs(c.amplitude) > c.base) throw ConfigError(at + ": need |amplitude| <= base");
    if (c.mode < 0) throw ConfigError(at + ": mode must be nonnegative");
    return c;
  }
  if (kind == "checkerboard") {
    check_keys(body, {"low", "high"}, at);
    initial::Checkerboard c{number(body, "low", at), number(body, "high", at)};
    if (c.low < 0.0 || c.high < 0.0) throw ConfigError(at + ": values must be nonnegative");
    return c;
  }
  if (kind == "file") {
    check_keys(body, {"path"}, at);
    return initial::File{text(body, "path", at)};
  }
  throw ConfigError(where + ": unknown initial-data kind '" + kind + "'");
}

json initial_to_json(const InitialSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, initial::Constant>) {
          return {{"constant", {{"value", s.value}}}};
        } else if constexpr (std::is_same_v<T, initial::CosineBump>) {
          return {{"cosine_bump", {{"base", s.base}, {"amplitude", s.amplitude}, {"mode", s.mode}}}};
        } else if constexpr (std::is_same_v<T, initial::Checkerboard>) {
          return {{"checkerboard", {{"low", s.low}, {"high", s.high}}}};
        } else {
          return {{"file", {{"path", s.path}}}};
        }
      },
      spec);
}

Boundary parse_bc(const std::string& s, const std::string& where) {
  if (s == "neumann" || s == "Neumann") return Boundary::Neumann;
  if (s == "dirichlet" || s == "Dirichlet") return Boundary::Dirichlet;
  throw ConfigError(where + ": bc must be 'neumann' or 'dirichlet'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

ScalarField read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file " + path.string());
  ScalarField values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::string tok;
    while (row >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("field file " + path.string() + ": bad number '" + tok + "'");
      }
    }
  }
  return values;
}

}  // namespace

Params parse_params(const json& j, int default_dim) {
  const std::string where = "params";
  check_keys(j, {"d1", "d2", "d3", "alpha", "beta", "gamma", "dim"}, where);
  Params p{number(j, "d1", where),    number(j, "d2", where),   number(j, "d3", where),
           number(j, "alpha", where), number(j, "beta", where), number(j, "gamma", where),
           integer_or(j, "dim", default_dim, where)};
  try {
    p.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

ScenarioConfig parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, {"params", "grid", "initial", "t_end", "control", "outputs", "kinetics"},
             "config");
  ScenarioConfig cfg;
  cfg.base_dir = base_dir;

  if (!j.contains("grid")) throw ConfigError("config: missing key 'grid'");
  const json& jg = j.at("grid");
  check_keys(jg, {"dimension", "cells_per_axis", "length", "bc"}, "grid");
  cfg.grid.dimension = integer(jg, "dimension", "grid");
  cfg.grid.cells_per_axis = integer(jg, "cells_per_axis", "grid");
  cfg.grid.length = number_or(jg, "length", 1.0, "grid");
  cfg.grid.bc = jg.contains("bc") ? parse_bc(text(jg, "bc", "grid"), "grid") : Boundary::Neumann;
  try {
    (void)cfg.grid.make();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }

  if (!j.contains("params")) throw ConfigError("config: missing key 'params'");
  cfg.params = parse_params(j.at("params"), cfg.grid.dimension);

  if (!j.contains("initial")) throw ConfigError("config: missing key 'initial'");
  const json& ji = j.at("initial");
  check_keys(ji, {"u", "v", "w"}, "initial");
  for (const char* key : {"u", "v", "w"}) {
    if (!ji.contains(key)) throw ConfigError(std::string("initial: missing key '") + key + "'");
  }
  cfg.u = parse_initial(ji.at("u"), "initial.u");
  cfg.v = parse_initial(ji.at("v"), "initial.v");
  cfg.w = parse_initial(ji.at("w"), "initial.w");

  cfg.t_end = number(j, "t_end", "config");
  if (!(cfg.t_end > 0.0)) throw ConfigError("config.t_end: must be positive");

  if (j.contains("control")) {
    const json& jc = j.at("control");
    const std::string at = "control";
    check_keys(jc, {"dt_init", "dt_min", "dt_max", "safety", "blowup_threshold", "sample_every"},
               at);
    ControlSpec& c = cfg.control;
    c.dt_init = number_or(jc, "dt_init", c.dt_init, at);
    c.dt_min = number_or(jc, "dt_min", c.dt_min, at);
    c.dt_max = number_or(jc, "dt_max", c.dt_max, at);
    c.safety = number_or(jc, "safety", c.safety, at);
    if (jc.contains("blowup_threshold")) c.blowup_threshold = number(jc, "blowup_threshold", at);
    c.sample_every = number_or(jc, "sample_every", c.sample_every, at);
  }
  StepControl probe{cfg.control.dt_init, cfg.control.dt_min, cfg.control.dt_max,
                    cfg.control.safety, cfg.control.blowup_threshold.value_or(1.0),
                    cfg.control.sample_every};
  try {
    probe.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }

  if (j.contains("outputs")) {
    const json& jo = j.at("outputs");
    const std::string at = "outputs";
    check_keys(jo, {"series_path", "snapshots_path", "snapshot_every", "lp_orders"}, at);
    if (jo.contains("series_path")) cfg.outputs.series_path = text(jo, "series_path", at);
    if (jo.contains("snapshots_path") && !jo.at("snapshots_path").is_null()) {
      cfg.outputs.snapshots_path = text(jo, "snapshots_path", at);
    }
    cfg.outputs.snapshot_every = number_or(jo, "snapshot_every", 0.0, at);
    if (cfg.outputs.snapshot_every < 0.0) throw ConfigError("outputs.snapshot_every: negative");
    if (jo.contains("lp_orders")) {
      const json& lp = jo.at("lp_orders");
      if (!lp.is_array()) throw ConfigError("outputs.lp_orders: expected an array");
      for (const auto& x : lp) {
        if (!x.is_number() || x.get<double>() < 1.0) {
          throw ConfigError("outputs.lp_orders: entries must be numbers >= 1");
        }
        cfg.outputs.lp_orders.push_back(x.get<double>());
      }
    }
  }

  if (j.contains("kinetics")) {
    const std::string k = text(j, "kinetics", "config");
    if (k == "mass_action") {
      cfg.kinetics = KineticsModel::MassAction;
    } else if (k == "surrogate_growth") {
      cfg.kinetics = KineticsModel::SurrogateGrowth;
    } else {
      throw ConfigError("config.kinetics: expected 'mass_action' or 'surrogate_growth'");
    }
  }

  // Fail fast on bad initial data (negative file values, size mismatch).
  const Grid g = cfg.grid.make();
  for (const InitialSpec* s : {&cfg.u, &cfg.v, &cfg.w}) (void)build_initial(*s, g, base_dir);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_scenario(j, path.parent_path());
}

json to_json(const ScenarioConfig& cfg) {
  const Params& p = cfg.params;
  json j;
  j["params"] = {{"d1", p.d1},       {"d2", p.d2},     {"d3", p.d3},   {"alpha", p.alpha},
                 {"beta", p.beta},   {"gamma", p.gamma}, {"dim", p.dim}};
  j["grid"] = {{"dimension", cfg.grid.dimension},
               {"cells_per_axis", cfg.grid.cells_per_axis},
               {"length", cfg.grid.length},
               {"bc", std::string(to_string(cfg.grid.bc))}};
  j["initial"] = {{"u", initial_to_json(cfg.u)},
                  {"v", initial_to_json(cfg.v)},
                  {"w", initial_to_json(cfg.w)}};
  j["t_end"] = cfg.t_end;
  json c = {{"dt_init", cfg.control.dt_init},
            {"dt_min", cfg.control.dt_min},
            {"dt_max", cfg.control.dt_max},
            {"safety", cfg.control.safety},
            {"sample_every", cfg.control.sample_every}};
  if (cfg.control.blowup_threshold) c["blowup_threshold"] = *cfg.control.blowup_threshold;
  j["control"] = c;
  json o = {{"series_path", cfg.outputs.series_path},
            {"snapshot_every", cfg.outputs.snapshot_every},
            {"lp_orders", cfg.outputs.lp_orders}};
  if (cfg.outputs.snapshots_path) o["snapshots_path"] = *cfg.outputs.snapshots_path;
  j["outputs"] = o;
  j["kinetics"] = cfg.kinetics == KineticsModel::MassAction ? "mass_action" : "surrogate_growth";
  return j;
}

ScalarField build_initial(const InitialSpec& spec, const Grid& g,
                          const std::filesystem::path& base_dir) {
  const int n = g.cells_per_axis();
  const int dim = g.dimension();
  ScalarField out(g.cell_count());
  const auto cell = [&](std::size_t k, int axis) {
    return axis == 0 ? static_cast<int>(k % n) : static_cast<int>(k / n);
  };

  if (const auto* c = std::get_if<initial::Constant>(&spec)) {
    std::fill(out.begin(), out.end(), c->value);
  } else if (const auto* b = std::get_if<initial::CosineBump>(&spec)) {
    const double k = b->mode * std::numbers::pi / g.length();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      double prod = 1.0;
      for (int axis = 0; axis < dim; ++axis) prod *= std::cos(k * g.center(cell(idx, axis)));
      out[idx] = std::max(0.0, b->base + b->amplitude * prod);
    }
  } else if (const auto* cb = std::get_if<initial::Checkerboard>(&spec)) {
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      int parity = 0;
      for (int axis = 0; axis < dim; ++axis) parity += cell(idx, axis);
      out[idx] = parity % 2 == 0 ? cb->low : cb->high;
    }
  } else {
    const auto& f = std::get<initial::File>(spec);
    const auto path = resolve(base_dir, f.path);
    out = read_field_file(path);
    if (out.size() != g.cell_count()) {
      throw ConfigError("field file " + path.string() + " has " + std::to_string(out.size()) +
                        " values, grid needs " + std::to_string(g.cell_count()));
    }
    for (double x : out) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ConfigError("field file " + path.string() + ": values must be finite and >= 0");
      }
    }
  }
  return out;
}

State initial_state(const ScenarioConfig& cfg, const Grid& g) {
  State s;
  s.t = 0.0;
  s.dt = cfg.control.dt_init;
  s.u = build_initial(cfg.u, g, cfg.base_dir);
  s.v = build_initial(cfg.v, g, cfg.base_dir);
  s.w = build_initial(cfg.w, g, cfg.base_dir);
  return s;
}

StepControl step_control(const ScenarioConfig& cfg, const State& s0) {
  const ControlSpec& c = cfg.control;
  return {c.dt_init, c.dt_min,
          c.dt_max,  c.safety,
          c.blowup_threshold.value_or(default_blowup_threshold(s0)), c.sample_every};
}

bool is_smooth(const InitialSpec& spec) {
  return std::holds_alternative<initial::Constant>(spec) ||
         std::holds_alternative<initial::CosineBump>(spec);
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& extra) {
  const Grid g = cfg.grid.make();
  const State s0 = initial_state(cfg, g);
  RunOptions opts = extra;
  if (!opts.rate) {
    opts.rate = cfg.kinetics == KineticsModel::SurrogateGrowth ? surrogate_growth()
                                                               : mass_action(cfg.params);
  }
  if (opts.lp_orders.empty()) opts.lp_orders = cfg.outputs.lp_orders;
  if (opts.snapshot_every == 0.0) opts.snapshot_every = cfg.outputs.snapshot_every;
  return run(s0, cfg.params, g, step_control(cfg, s0), cfg.t_end, opts);
}

}  // namespace rds
