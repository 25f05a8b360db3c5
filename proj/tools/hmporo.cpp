// Command-line front end: solve, convergence and export.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hmporo/analysis.hpp"
#include "hmporo/config.hpp"
#include "hmporo/error.hpp"
#include "hmporo/export.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hmporo;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kSolverError = 3, kIoError = 4 };

struct CliOverrides {
  std::string config_path;
  std::string case_name;
  std::optional<int> theta;
  std::optional<int> n;
  std::vector<int> levels;
  std::optional<double> dt;
  std::vector<double> dts;
  std::string out;
  std::vector<std::string> exports;
  bool deterministic = false;
};

RunConfig resolve_config(const CliOverrides& o) {
  json j = o.config_path.empty() ? json::object() : load_config_json(o.config_path);
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  if (!o.case_name.empty()) j["case"] = o.case_name;
  if (o.theta) j["theta"] = *o.theta;
  if (o.n) j["n"] = *o.n;
  if (!o.levels.empty()) j["levels"] = o.levels;
  if (o.dt) j["dt"] = *o.dt;
  if (!o.dts.empty()) {
    j["dts"] = o.dts;
    j["study"] = "temporal";
  }
  if (!o.out.empty()) j["out"] = o.out;
  if (!o.exports.empty()) j["export"] = o.exports;
  if (o.deterministic) j["deterministic"] = true;
  return parse_run_config(j);
}

void check_solver_config(const SolverConfig& s, double h) {
  try {
    s.validate(h);
  } catch (const Error& e) {
    throw ConfigError(std::string("config key 'dt': ") + e.what());
  }
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::string to_string(const std::function<void(std::ostream&)>& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json params_json(const PhysicalParams& p) {
  return {{"E", p.E}, {"nu", p.nu}, {"alpha", p.alpha}, {"c0", p.c0}, {"K", p.K}, {"mu_f", p.mu_f},
          {"rho_f_g", {p.rho_f_g[0], p.rho_f_g[1]}}};
}

int run_solve(const RunConfig& cfg, bool force_export) {
  const ManufacturedCase mc = cfg.manufactured();
  const Problem pb = mc.make_problem(cfg.n, cfg.flow);
  const SolverConfig sc = cfg.solver_config(cfg.n);
  check_solver_config(sc, pb.mesh.h);
  const fs::path dir = prepare_out(cfg);

  std::vector<StepDiagnostics> diagnostics;
  const StepObserver observer = [&](const StepDiagnostics& d, const FieldState&) { diagnostics.push_back(d); };
  MarchResult result;
  try {
    result = time_march(pb, sc, false, observer);
  } catch (const Error&) {
    write_text_file((dir / "diagnostics.csv").string(),
                    to_string([&](std::ostream& os) { write_diagnostics_csv(os, diagnostics); }));
    throw;
  }
  write_text_file((dir / "diagnostics.csv").string(),
                  to_string([&](std::ostream& os) { write_diagnostics_csv(os, result.diagnostics); }));
  const bool vtk = cfg.export_vtk || (force_export && !cfg.export_csv);
  const bool csv = cfg.export_csv || (force_export && !cfg.export_vtk);
  const auto& s = result.final_state;
  if (vtk)
    write_text_file((dir / "fields.vtk").string(),
                    to_string([&](std::ostream& os) { write_vtk(os, pb.mesh, pb.dofs, s); }));
  if (csv)
    write_text_file((dir / "fields.csv").string(),
                    to_string([&](std::ostream& os) { write_field_csv(os, pb.mesh, pb.dofs, s); }));

  const ErrorNorms e = error_norms(pb, s, mc);
  int iterations = 0;
  for (const auto& d : result.diagnostics) iterations += d.picard_iterations;
  std::printf("case %s, n = %d, dt = %.6e, theta = %d: %zu steps, %d Picard iterations\n",
              std::string(case_name(cfg.case_id)).c_str(), cfg.n, sc.dt, sc.theta, result.diagnostics.size(),
              iterations);
  std::printf("errors at t = %.6e: u L2 %.6e, u H1 %.6e, p L2 %.6e, p H1 %.6e\n", s.t, e.u_l2, e.u_h1, e.p_l2,
              e.p_h1);
  return kOk;
}

int run_convergence(const RunConfig& cfg) {
  const StudyOptions opt = cfg.study_options();
  if (cfg.study == StudyKind::spatial) {
    for (int n : cfg.levels) check_solver_config(cfg.solver_config(n), 1.0 / n);
  } else {
    for (double dt : cfg.dts) {
      SolverConfig sc = cfg.solver_config(cfg.n);
      sc.dt = dt;
      check_solver_config(sc, 1.0 / cfg.n);
    }
  }
  const fs::path dir = prepare_out(cfg);

  ConvergenceReport report = cfg.study == StudyKind::spatial ? convergence_study(cfg.case_id, cfg.levels, opt)
                                                             : temporal_study(cfg.case_id, cfg.n, cfg.dts, opt);
  if (!cfg.deterministic) report.timestamp = utc_timestamp();

  json meta = {{"case", report.case_name},
               {"law", std::string(law_name(cfg.manufactured().law().id()))},
               {"study", cfg.study == StudyKind::spatial ? "spatial" : "temporal"},
               {"theta", report.theta},
               {"boundary", report.flow_boundary},
               {"params", params_json(report.params)},
               {"t_end", cfg.t_end}};
  if (cfg.study == StudyKind::spatial) meta["levels"] = cfg.levels;
  else {
    meta["n"] = cfg.n;
    meta["dts"] = cfg.dts;
  }
  if (!report.timestamp.empty()) meta["timestamp"] = report.timestamp;
  json failures = json::array();
  for (const auto& row : report.rows)
    if (row.failed) failures.push_back(row.failure);
  meta["failures"] = failures;

  write_text_file((dir / "convergence.csv").string(), report.to_csv());
  write_text_file((dir / "convergence.md").string(), report.to_markdown());
  write_text_file((dir / "report.json").string(), meta.dump(2) + "\n");
  std::cout << report.to_markdown();
  if (!failures.empty()) {
    for (const auto& f : failures) std::cerr << "error: " << f.get<std::string>() << '\n';
    return kSolverError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite element solver for nonlinear Hencky-Mises poroelasticity"};
  app.require_subcommand(1);
  CliOverrides o;
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--case", o.case_name, "test1, test2, patch or zero");
  app.add_option("--theta", o.theta, "0 (decoupled) or 1 (monolithic)");
  app.add_option("--n", o.n, "mesh level for solve and export");
  app.add_option("--levels", o.levels, "mesh levels of a spatial study, e.g. 4,8,16")->delimiter(',');
  app.add_option("--dt", o.dt, "fixed time step (default h^2)");
  app.add_option("--dts", o.dts, "time steps of a temporal study")->delimiter(',');
  app.add_option("--out", o.out, "output directory");
  app.add_option("--export", o.exports, "field formats: vtk,csv")->delimiter(',');
  app.add_flag("--deterministic", o.deterministic, "sequential runs and no timestamps");
  auto* solve = app.add_subcommand("solve", "single time march with diagnostics");
  auto* convergence = app.add_subcommand("convergence", "spatial or temporal convergence table");
  auto* exp = app.add_subcommand("export", "time march and field export (vtk and csv by default)");
  for (auto* sub : {solve, convergence, exp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig cfg = resolve_config(o);
    if (convergence->parsed()) return run_convergence(cfg);
    return run_solve(cfg, exp->parsed());
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
}
