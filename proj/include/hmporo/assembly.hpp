#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <utility>
#include <vector>

#include "hmporo/problem.hpp"

namespace hmporo {

/// Quadrature degree of volume integrals in assembly.
inline constexpr int kAssemblyQuadratureDegree = 5;

/// Which rows/columns of the monolithic [u | xi | eta] system are assembled.
///   monolithic: everything (theta = 1, or theta = 0 as one block-triangular system)
///   mechanics:  the (u, xi) block of the decoupled scheme, eta lagged
///   flow:       the eta block of the decoupled scheme, xi^{n+1} known
enum class SystemKind { monolithic, mechanics, flow };

/// (local dof, prescribed value) pairs.
using DirichletValues = std::vector<std::pair<int, double>>;

struct SparseSystem {
  SystemKind kind = SystemKind::monolithic;
  /// Monolithic index of local dof 0 (nonzero only for the flow system).
  int offset = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  Eigen::VectorXd rhs;
  /// Dofs located on the boundary; only these may be constrained.
  std::vector<char> boundary_mask;
  /// Constraints applied so far, sorted by dof.
  DirichletValues dirichlet;

  int size() const { return static_cast<int>(rhs.size()); }
};

/// Data of one Picard solve. `u_frozen` is the iterate the nonlinear
/// coefficients are evaluated at.
struct StepInputs {
  const FieldState& prev;
  const Eigen::VectorXd& u_frozen;
  double t_next;
  double dt;
  int theta;
};

/// Element-wise assembly without boundary constraints. `xi_known` is
/// required for SystemKind::flow and ignored otherwise.
SparseSystem assemble_unconstrained(const Problem& problem, SystemKind kind, const StepInputs& in,
                                    const Eigen::VectorXd* xi_known = nullptr);

/// Dirichlet values at time t for the rows of `kind`, in local numbering.
DirichletValues dirichlet_values(const Problem& problem, SystemKind kind, double t);

/// Symmetric elimination: constrained columns move to the rhs, constrained
/// rows become identity rows carrying the prescribed value. The sparsity
/// pattern of the result depends only on the constrained set.
void apply_dirichlet(SparseSystem& system, const DirichletValues& values);

/// The fully discrete step system (monolithic, constraints applied).
SparseSystem assemble_step_system(const Problem& problem, const StepInputs& in);

/// Decoupled (theta = 0) sub-systems, constraints applied.
SparseSystem assemble_mechanics_system(const Problem& problem, const StepInputs& in);
SparseSystem assemble_flow_system(const Problem& problem, const StepInputs& in, const Eigen::VectorXd& xi_next);

/// Edge integrals <f1, v> over boundary edges, skipping components that are
/// Dirichlet on the edge's side. Returns a vector over the [u1 | u2] block.
Eigen::VectorXd assemble_traction(const Mesh& mesh, const DofMap& dofs, const BoundaryVectorField& f1, double t,
                                  const std::array<std::array<bool, 2>, 4>& dirichlet);

/// Edge integrals <phi1, psi> over all boundary edges (P1 trace).
Eigen::VectorXd assemble_flux(const Mesh& mesh, const BoundaryScalarField& phi1, double t);

}  // namespace hmporo
