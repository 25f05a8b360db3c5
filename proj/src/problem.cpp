#include "hmporo/problem.hpp"

namespace hmporo {

std::string_view flow_boundary_name(FlowBoundary f) {
  return f == FlowBoundary::dirichlet_xi_eta ? "dirichlet-xi-eta" : "neumann-flux";
}

FieldState FieldState::zeros(const DofMap& dofs, double t) {
  FieldState s;
  s.t = t;
  s.u = Eigen::VectorXd::Zero(2 * dofs.scalar_p2);
  s.xi = Eigen::VectorXd::Zero(dofs.num_vertices);
  s.eta = Eigen::VectorXd::Zero(dofs.num_vertices);
  s.p = Eigen::VectorXd::Zero(dofs.num_vertices);
  return s;
}

Problem::Problem(Mesh m, PhysicalParams p, LawId law_id)
    : mesh(std::move(m)),
      dofs(build_dof_map(mesh)),
      params(p),
      coeffs(derive_coeffs(p)),
      law(law_id, coeffs) {}

}  // namespace hmporo
