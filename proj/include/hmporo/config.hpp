#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hmporo/analysis.hpp"
#include "hmporo/manufactured.hpp"
#include "hmporo/solver.hpp"

namespace hmporo {

/// Run description shared by every command-line command.
///
/// JSON keys (all optional):
///   case               "test1" | "test2" | "patch" | "zero"        (test1)
///   law                "linear" | "test1" | "test2"                (per case)
///   params             {E, nu, alpha, c0, K, mu_f, rho_f_g: [gx, gy]} overrides
///                      on top of the case's parameter table
///   theta              0 | 1                                       (1)
///   n                  mesh level of solve / export / temporal     (8)
///   levels             mesh levels of a spatial study              ([4, 8, 16, 32])
///   dt                 fixed time step; absent means dt = h^2
///   study              "spatial" | "temporal"                      (spatial)
///   dts                time steps of a temporal study, halving
///   t_end              final time                                  (1)
///   picard_tol         relative H1 increment                       (1e-9)
///   picard_max                                                     (50)
///   anderson_depth     0 is plain Picard                           (5)
///   extrapolate_guess  start Picard from 2 u^n - u^(n-1)           (true)
///   linear_tol                                                     (1e-12)
///   stab_constant      theta = 0 requires dt <= C h^2               (1)
///   allow_unstable_dt                                              (false)
///   boundary           "dirichlet-xi-eta" | "neumann-flux"         (dirichlet-xi-eta)
///   out                output directory                            ("out")
///   export             subset of ["vtk", "csv"]                    ([])
///   deterministic      sequential levels, no timestamps            (false)
struct RunConfig {
  CaseId case_id = CaseId::test1;
  std::optional<LawId> law;
  PhysicalParams params = ManufacturedCase::table_params(CaseId::test1);
  int theta = 1;
  int n = 8;
  std::vector<int> levels{4, 8, 16, 32};
  std::optional<double> dt;
  StudyKind study = StudyKind::spatial;
  std::vector<double> dts;
  double t_end = 1.0;
  double picard_tol = 1e-9;
  int picard_max = 50;
  int anderson_depth = 5;
  bool extrapolate_guess = true;
  double linear_tol = 1e-12;
  double stab_constant = 1.0;
  bool allow_unstable_dt = false;
  FlowBoundary flow = FlowBoundary::dirichlet_xi_eta;
  std::string out = "out";
  bool export_vtk = false;
  bool export_csv = false;
  bool deterministic = false;

  ManufacturedCase manufactured() const;
  /// dt defaults to h^2 on the mesh of level n.
  SolverConfig solver_config(int n_level) const;
  StudyOptions study_options() const;
};

/// Parses and validates a configuration object. Every failure is a
/// ConfigError whose message names the offending key.
RunConfig parse_run_config(const nlohmann::json& j);

/// Reads a JSON file (ConfigError when missing or malformed).
nlohmann::json load_config_json(const std::string& path);

}  // namespace hmporo
