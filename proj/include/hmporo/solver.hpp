#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <vector>

#include "hmporo/assembly.hpp"
#include "hmporo/linear_solver.hpp"
#include "hmporo/problem.hpp"

namespace hmporo {

struct SolverConfig {
  int theta = 1;
  double dt = 0.0;
  double t_end = 1.0;
  double picard_tol = 1e-9;  ///< relative H1-seminorm increment of u
  int picard_max = 50;
  /// theta = 0 requires dt <= stab_constant * h^2 unless overridden.
  double stab_constant = 1.0;
  bool allow_unstable_dt = false;
  double linear_tol = 1e-12;  ///< relative residual of each linear solve
  /// Anderson mixing depth applied to the frozen displacement; 0 gives plain
  /// Picard. The fixed point and the stopping test are unchanged. Plain
  /// Picard contracts slowly (about 0.75 per iteration) for the test1 law
  /// near t = 1 and exceeds picard_max there.
  int anderson_depth = 5;
  /// Start each step from 2 u^n - u^(n-1) instead of u^n.
  bool extrapolate_guess = true;

  /// Throws InvalidArgument / StabilityProvisoViolated.
  void validate(double h) const;
};

/// p = kappa1 xi + kappa2 eta, nodewise.
Eigen::VectorXd recover_pressure(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, const DerivedCoeffs& c);

/// Nodal interpolation of the initial data; eta0 = c0 p0 + alpha q0,
/// xi0 = alpha p0 - q0 / lambda.
FieldState initial_state(const Problem& problem);

struct EnergyParts {
  double strain = 0.0;  ///< (N(eps u), eps u)
  double xi = 0.0;      ///< kappa3/2 ||xi||^2
  double eta = 0.0;     ///< kappa2/2 ||eta||^2
  double work = 0.0;    ///< (f, u) + <f1, u>

  double stored() const { return strain + xi + eta; }
  double total() const { return stored() - work; }
};

/// Discrete energy J_h of `state` with data evaluated at time t. The eta
/// term uses state.eta, i.e. the caller passes eta at level n + theta.
EnergyParts discrete_energy(const Problem& problem, const FieldState& state, double t);

struct StepResult {
  FieldState state;
  int iterations = 0;
  double increment = 0.0;  ///< last relative increment
  /// eta at level n + theta (equal to state.eta for theta = 1).
  Eigen::VectorXd eta_theta;
};

struct StepDiagnostics {
  int step = 0;
  double t = 0.0;
  int picard_iterations = 0;
  double energy = 0.0;
  double stored_energy = 0.0;
  double increment = 0.0;
};

using StepObserver = std::function<void(const StepDiagnostics&, const FieldState&)>;

struct MarchResult {
  FieldState final_state;
  std::vector<StepDiagnostics> diagnostics;
  std::vector<FieldState> trajectory;  ///< filled when requested
};

/// Backward Euler time marching with Picard iteration on the frozen
/// nonlinear coefficients.
class TimeIntegrator {
 public:
  TimeIntegrator(const Problem& problem, SolverConfig config);

  StepResult picard_step(const FieldState& prev, double t_next);
  /// As above with an explicit first frozen iterate u^(0).
  StepResult picard_step(const FieldState& prev, double t_next, const Eigen::VectorXd& initial_guess);
  MarchResult march(bool keep_trajectory = false, const StepObserver& observer = {});

  /// Discrete H1 seminorm of a [u1 | u2] coefficient vector.
  double h1_seminorm(const Eigen::VectorXd& u) const;
  const SolverConfig& config() const { return config_; }
  const SparseDirectSolver& mechanics_solver() const { return solver_; }

 private:
  const Problem& problem_;
  SolverConfig config_;
  Eigen::SparseMatrix<double> stiffness_;  // scalar P2 Laplacian
  SparseDirectSolver solver_;
  SparseDirectSolver flow_solver_;
};

StepResult picard_step(const Problem& problem, const FieldState& prev, double t_next, const SolverConfig& config);
MarchResult time_march(const Problem& problem, const SolverConfig& config, bool keep_trajectory = false,
                       const StepObserver& observer = {});

}  // namespace hmporo
