#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hmporo/manufactured.hpp"
#include "hmporo/problem.hpp"
#include "hmporo/solver.hpp"

namespace hmporo {

/// Quadrature degree used for errors against exact solutions.
inline constexpr int kErrorQuadratureDegree = 7;

/// H1 entries are full norms (L2 part plus seminorm).
struct ErrorNorms {
  double u_l2 = 0.0;
  double u_h1 = 0.0;
  double p_l2 = 0.0;
  double p_h1 = 0.0;

  std::array<double, 4> as_array() const { return {u_l2, u_h1, p_l2, p_h1}; }
};

/// Errors of `state` against the exact fields of `mc` at time state.t.
ErrorNorms error_norms(const Problem& problem, const FieldState& state, const ManufacturedCase& mc,
                       int quadrature_degree = kErrorQuadratureDegree);

/// Errors at or below this level are treated as exact: orders that involve
/// them are reported as undefined.
inline constexpr double kErrorFloor = 1e-12;

/// log(R(h) / R(h/2)) / log 2. Throws InvalidArgument for nonpositive input.
double spatial_order(double err_coarse, double err_fine);

/// |R(dt) - R(dt/2)| / |R(dt/2) - R(dt/4)|; nullopt when the denominator is zero.
std::optional<double> temporal_order_T(double err_dt, double err_dt2, double err_dt4);

enum class StudyKind { spatial, temporal };
enum class DtRule { h_squared, fixed };

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  ErrorNorms errors;
  /// Per column u_L2, u_H1, p_L2, p_H1: order (spatial) or order_T (temporal).
  std::array<std::optional<double>, 4> orders{};
  int picard_iterations = 0;  ///< summed over all steps
  bool failed = false;
  std::string failure;
};

struct ConvergenceReport {
  StudyKind kind = StudyKind::spatial;
  std::string case_name;
  int theta = 1;
  std::string flow_boundary;
  PhysicalParams params;
  std::string timestamp;  ///< empty in deterministic mode
  std::vector<ConvergenceRow> rows;

  /// Fills `orders` from the errors; rows must be sorted coarse to fine.
  /// Orders involving errors at or below kErrorFloor stay undefined.
  void compute_orders();
  /// Header row then data rows; errors as %.6e, orders as %.4f, undefined
  /// orders as empty fields.
  std::string to_csv() const;
  /// Table in the layout of the published error tables ("—" for undefined orders).
  std::string to_markdown() const;
};

struct StudyOptions {
  /// Settings of every run; dt is replaced per row.
  SolverConfig solver;
  FlowBoundary flow = FlowBoundary::dirichlet_xi_eta;
  DtRule dt_rule = DtRule::h_squared;
  double fixed_dt = 0.0;
  /// Run levels concurrently; results are identical either way.
  bool parallel = false;
  std::optional<PhysicalParams> params;
  std::optional<LawId> law;
};

/// Errors at t_end on meshes n = levels[i] (each twice the previous one).
/// Solver failures are recorded in the failing row and do not abort the study.
ConvergenceReport convergence_study(CaseId id, const std::vector<int>& levels, const StudyOptions& options);

/// Errors at t_end on a fixed mesh for successively halved time steps.
ConvergenceReport temporal_study(CaseId id, int n, const std::vector<double>& dts, const StudyOptions& options);

}  // namespace hmporo
