#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string_view>

#include "hmporo/constitutive.hpp"
#include "hmporo/fem_basis.hpp"
#include "hmporo/mesh.hpp"
#include "hmporo/params.hpp"

namespace hmporo {

using VectorField = std::function<Vec2(Point2, double)>;
using ScalarField = std::function<double(Point2, double)>;
using BoundaryVectorField = std::function<Vec2(Point2, double, Vec2)>;
using BoundaryScalarField = std::function<double(Point2, double, Vec2)>;

/// Volume data. An empty function stands for identically zero data.
struct Forcing {
  VectorField body_force;
  ScalarField source;
};

enum class FlowBoundary {
  dirichlet_xi_eta,  ///< nodal xi and eta prescribed on every boundary vertex
  neumann_flux,      ///< flux phi1 prescribed on every boundary edge
};

std::string_view flow_boundary_name(FlowBoundary f);

/// Boundary specification. Each (side, displacement component) is either
/// Dirichlet (value from `u_value`) or natural (traction from `traction`), so
/// coverage and exclusivity hold by construction. Empty functions mean zero.
struct BoundaryData {
  std::array<std::array<bool, 2>, 4> u_dirichlet{};  ///< [tag][component]
  VectorField u_value;
  BoundaryVectorField traction;

  FlowBoundary flow = FlowBoundary::dirichlet_xi_eta;
  std::function<XiEta(Point2, double)> xi_eta_value;
  BoundaryScalarField flux;

  bool is_dirichlet(BoundaryTag tag, int component) const {
    return u_dirichlet[tag_index(tag)][component];
  }
};

/// Initial displacement, pressure and dilation q0 = div u0.
struct InitialData {
  VectorField u0;
  ScalarField p0;
  ScalarField div_u0;
};

/// Coefficient vectors of one time level.
struct FieldState {
  double t = 0.0;
  Eigen::VectorXd u;    ///< [u1 | u2], each of DofMap::scalar_p2 entries
  Eigen::VectorXd xi;   ///< P1 nodal values
  Eigen::VectorXd eta;  ///< P1 nodal values
  Eigen::VectorXd p;    ///< recovered pressure, P1 nodal values

  static FieldState zeros(const DofMap& dofs, double t = 0.0);
};

/// Everything needed to march the discrete scheme on one mesh.
struct Problem {
  Mesh mesh;
  DofMap dofs;
  PhysicalParams params;
  DerivedCoeffs coeffs;
  ConstitutiveLaw law;
  Forcing forcing;
  BoundaryData boundary;
  InitialData initial;

  Problem(Mesh m, PhysicalParams p, LawId law_id);
};

}  // namespace hmporo
