#include "hmporo/fields.hpp"

namespace hmporo {

DisplacementSample sample_displacement(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& u,
                                       int element, Point2 ref) {
  const auto map = map_to_physical(mesh, element, ref);
  const auto shape = p2_basis().evaluate(ref);
  const auto local = dofs.element_p2(mesh, element);
  DisplacementSample s{Vec2::Zero(), Mat2::Zero(), {}};
  for (int i = 0; i < 6; ++i) {
    const Vec2 g = map.inv_transpose * shape.grad[i];
    for (int c = 0; c < 2; ++c) {
      const double coef = u[c * dofs.scalar_p2 + local[i]];
      s.value[c] += coef * shape.value[i];
      s.grad.row(c) += coef * g.transpose();
    }
  }
  s.strain = strain_of(s.grad);
  return s;
}

ScalarSample sample_p1(const Mesh& mesh, const Eigen::VectorXd& values, int element, Point2 ref) {
  const auto map = map_to_physical(mesh, element, ref);
  const auto shape = p1_basis().evaluate(ref);
  const auto& tri = mesh.triangles[element];
  ScalarSample s{0.0, Vec2::Zero()};
  for (int i = 0; i < 3; ++i) {
    s.value += values[tri[i]] * shape.value[i];
    s.grad += values[tri[i]] * (map.inv_transpose * shape.grad[i]);
  }
  return s;
}

FrozenCoefficients frozen_coefficients(const ConstitutiveLaw& law, const Mesh& mesh, const DofMap& dofs,
                                       const Eigen::VectorXd& u_prev, int element, Point2 ref) {
  return law.frozen(sample_displacement(mesh, dofs, u_prev, element, ref).strain);
}

}  // namespace hmporo
