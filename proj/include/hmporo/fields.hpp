#pragma once

#include <Eigen/Core>

#include "hmporo/constitutive.hpp"
#include "hmporo/fem_basis.hpp"

namespace hmporo {

/// Symmetric part of a displacement gradient.
inline SymMat2 strain_of(const Mat2& grad_u) {
  return {grad_u(0, 0), grad_u(1, 1), 0.5 * (grad_u(0, 1) + grad_u(1, 0))};
}

struct DisplacementSample {
  Vec2 value;
  Mat2 grad;  ///< grad(i, j) = d u_i / d x_j
  SymMat2 strain;
};

struct ScalarSample {
  double value;
  Vec2 grad;
};

/// Vector P2 field `u` ([u1 | u2] layout) at reference point `ref` of `element`.
DisplacementSample sample_displacement(const Mesh& mesh, const DofMap& dofs, const Eigen::VectorXd& u,
                                       int element, Point2 ref);

/// P1 nodal field at reference point `ref` of `element`.
ScalarSample sample_p1(const Mesh& mesh, const Eigen::VectorXd& values, int element, Point2 ref);

/// Picard-frozen coefficients of N at one point, evaluated from the previous
/// displacement iterate.
FrozenCoefficients frozen_coefficients(const ConstitutiveLaw& law, const Mesh& mesh, const DofMap& dofs,
                                       const Eigen::VectorXd& u_prev, int element, Point2 ref);

}  // namespace hmporo
