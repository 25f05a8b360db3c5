#include "hmporo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hmporo/error.hpp"

namespace hmporo {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) bad(prefix + it.key(), "unknown key");
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(key, "must be finite");
  return v;
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad(key, "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) bad(key, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key, "expected a string");
  return j.get<std::string>();
}

void apply_params(const json& j, PhysicalParams& p) {
  if (!j.is_object()) bad("params", "expected an object");
  reject_unknown(j, {"E", "nu", "alpha", "c0", "K", "mu_f", "rho_f_g"}, "params.");
  if (j.contains("E")) p.E = get_number(j["E"], "params.E");
  if (j.contains("nu")) p.nu = get_number(j["nu"], "params.nu");
  if (j.contains("alpha")) p.alpha = get_number(j["alpha"], "params.alpha");
  if (j.contains("c0")) p.c0 = get_number(j["c0"], "params.c0");
  if (j.contains("K")) p.K = get_number(j["K"], "params.K");
  if (j.contains("mu_f")) p.mu_f = get_number(j["mu_f"], "params.mu_f");
  if (j.contains("rho_f_g")) {
    const auto& g = j["rho_f_g"];
    if (!g.is_array() || g.size() != 2) bad("params.rho_f_g", "expected an array of two numbers");
    p.rho_f_g = {get_number(g[0], "params.rho_f_g"), get_number(g[1], "params.rho_f_g")};
  }
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown(j,
                 {"case", "law", "params", "theta", "n", "levels", "dt", "study", "dts", "t_end", "picard_tol",
                  "picard_max", "anderson_depth", "extrapolate_guess", "linear_tol", "stab_constant",
                  "allow_unstable_dt", "boundary", "out", "export", "deterministic"},
                 "");
  RunConfig c;
  if (j.contains("case")) {
    const auto name = get_string(j["case"], "case");
    const auto id = parse_case(name);
    if (!id) bad("case", "unknown case '" + name + "' (expected test1, test2, patch or zero)");
    c.case_id = *id;
  }
  c.params = ManufacturedCase::table_params(c.case_id);
  if (j.contains("law")) {
    const auto name = get_string(j["law"], "law");
    const auto id = parse_law(name);
    if (!id) bad("law", "unknown law '" + name + "' (expected linear, test1 or test2)");
    c.law = *id;
  }
  if (j.contains("params")) apply_params(j["params"], c.params);
  try {
    derive_coeffs(c.params);
  } catch (const ParameterError& e) {
    bad("params", e.what());
  }

  if (j.contains("theta")) {
    c.theta = get_int(j["theta"], "theta");
    if (c.theta != 0 && c.theta != 1) bad("theta", "must be 0 or 1");
  }
  if (j.contains("n")) {
    c.n = get_int(j["n"], "n");
    if (c.n < 1) bad("n", "must be a positive integer");
  }
  if (j.contains("levels")) {
    const auto& l = j["levels"];
    if (!l.is_array() || l.empty()) bad("levels", "expected a non-empty array of integers");
    c.levels.clear();
    for (const auto& v : l) c.levels.push_back(get_int(v, "levels"));
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      if (c.levels[i] < 1) bad("levels", "levels must be positive");
      if (i > 0 && c.levels[i] != 2 * c.levels[i - 1]) bad("levels", "each level must double the previous one");
    }
  }
  if (j.contains("dt")) {
    c.dt = get_number(j["dt"], "dt");
    if (!(*c.dt > 0.0)) bad("dt", "must be positive");
  }
  if (j.contains("study")) {
    const auto s = get_string(j["study"], "study");
    if (s == "spatial") c.study = StudyKind::spatial;
    else if (s == "temporal") c.study = StudyKind::temporal;
    else bad("study", "expected spatial or temporal");
  }
  if (j.contains("dts")) {
    const auto& l = j["dts"];
    if (!l.is_array() || l.empty()) bad("dts", "expected a non-empty array of numbers");
    for (const auto& v : l) {
      c.dts.push_back(get_number(v, "dts"));
      if (!(c.dts.back() > 0.0)) bad("dts", "time steps must be positive");
    }
    for (std::size_t i = 1; i < c.dts.size(); ++i)
      if (std::abs(2.0 * c.dts[i] - c.dts[i - 1]) > 1e-12 * c.dts[i - 1]) bad("dts", "each time step must halve the previous one");
  }
  if (c.study == StudyKind::temporal && c.dts.empty()) bad("dts", "a temporal study needs the list of time steps");
  if (j.contains("t_end")) {
    c.t_end = get_number(j["t_end"], "t_end");
    if (!(c.t_end > 0.0)) bad("t_end", "must be positive");
  }
  if (j.contains("picard_tol")) {
    c.picard_tol = get_number(j["picard_tol"], "picard_tol");
    if (!(c.picard_tol > 0.0)) bad("picard_tol", "must be positive");
  }
  if (j.contains("picard_max")) {
    c.picard_max = get_int(j["picard_max"], "picard_max");
    if (c.picard_max < 1) bad("picard_max", "must be at least 1");
  }
  if (j.contains("anderson_depth")) {
    c.anderson_depth = get_int(j["anderson_depth"], "anderson_depth");
    if (c.anderson_depth < 0) bad("anderson_depth", "must be nonnegative");
  }
  if (j.contains("extrapolate_guess")) c.extrapolate_guess = get_bool(j["extrapolate_guess"], "extrapolate_guess");
  if (j.contains("linear_tol")) {
    c.linear_tol = get_number(j["linear_tol"], "linear_tol");
    if (!(c.linear_tol > 0.0 && c.linear_tol < 1.0)) bad("linear_tol", "must lie in (0, 1)");
  }
  if (j.contains("stab_constant")) {
    c.stab_constant = get_number(j["stab_constant"], "stab_constant");
    if (!(c.stab_constant > 0.0)) bad("stab_constant", "must be positive");
  }
  if (j.contains("allow_unstable_dt")) c.allow_unstable_dt = get_bool(j["allow_unstable_dt"], "allow_unstable_dt");
  if (j.contains("boundary")) {
    const auto b = get_string(j["boundary"], "boundary");
    if (b == "dirichlet-xi-eta") c.flow = FlowBoundary::dirichlet_xi_eta;
    else if (b == "neumann-flux") c.flow = FlowBoundary::neumann_flux;
    else bad("boundary", "expected dirichlet-xi-eta or neumann-flux");
  }
  if (j.contains("out")) {
    c.out = get_string(j["out"], "out");
    if (c.out.empty()) bad("out", "must not be empty");
  }
  if (j.contains("export")) {
    const auto& l = j["export"];
    if (!l.is_array()) bad("export", "expected an array of formats");
    for (const auto& v : l) {
      const auto f = get_string(v, "export");
      if (f == "vtk") c.export_vtk = true;
      else if (f == "csv") c.export_csv = true;
      else bad("export", "unknown format '" + f + "' (expected vtk or csv)");
    }
  }
  if (j.contains("deterministic")) c.deterministic = get_bool(j["deterministic"], "deterministic");

  // Step-count and stability checks that do not depend on the command.
  const auto check_steps = [&](double dt, const std::string& key) {
    const double steps = c.t_end / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
      bad(key, "t_end / dt must be an integer");
  };
  if (c.dt) check_steps(*c.dt, "dt");
  for (double dt : c.dts) check_steps(dt, "dts");
  return c;
}

json load_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

ManufacturedCase RunConfig::manufactured() const { return ManufacturedCase(case_id, params, law); }

SolverConfig RunConfig::solver_config(int n_level) const {
  SolverConfig s;
  const double h = 1.0 / n_level;
  s.theta = theta;
  s.dt = dt ? *dt : h * h;
  s.t_end = t_end;
  s.picard_tol = picard_tol;
  s.picard_max = picard_max;
  s.anderson_depth = anderson_depth;
  s.extrapolate_guess = extrapolate_guess;
  s.linear_tol = linear_tol;
  s.stab_constant = stab_constant;
  s.allow_unstable_dt = allow_unstable_dt;
  return s;
}

StudyOptions RunConfig::study_options() const {
  StudyOptions o;
  o.solver = solver_config(1);
  o.flow = flow;
  o.dt_rule = dt ? DtRule::fixed : DtRule::h_squared;
  o.fixed_dt = dt.value_or(0.0);
  o.parallel = !deterministic;
  o.params = params;
  o.law = law;
  return o;
}

}  // namespace hmporo
