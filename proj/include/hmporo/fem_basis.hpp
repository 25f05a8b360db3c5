#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <array>
#include <span>
#include <vector>

#include "hmporo/mesh.hpp"

namespace hmporo {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Lagrange basis on the reference triangle {(0,0), (1,0), (0,1)}.
/// P2 nodes: the three vertices, then the midpoints of edges (0,1), (1,2),
/// (2,0).
class ReferenceBasis {
 public:
  static constexpr int kMaxNodes = 6;

  struct Values {
    int count = 0;
    std::array<double, kMaxNodes> value{};
    std::array<Vec2, kMaxNodes> grad{};  ///< reference gradients
  };

  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int node_count() const { return degree_ == 1 ? 3 : 6; }
  Point2 node(int i) const;

  Values evaluate(Point2 ref) const;

 private:
  int degree_;
};

inline const ReferenceBasis& p1_basis() {
  static const ReferenceBasis b(1);
  return b;
}
inline const ReferenceBasis& p2_basis() {
  static const ReferenceBasis b(2);
  return b;
}

struct QuadraturePoint {
  Point2 ref;     ///< reference coordinates (x^, y^)
  double weight;  ///< weights sum to 1/2
};

struct QuadratureRule {
  int degree;
  std::vector<QuadraturePoint> points;
};

/// Symmetric positive-weight rule on the reference triangle exact for all
/// polynomials of total degree `degree` (1..8).
const QuadratureRule& triangle_quadrature(int degree);

/// Three-point Gauss-Legendre rule on [0,1], exact to degree 5.
struct LineRule {
  std::array<double, 3> s;
  std::array<double, 3> w;
};
const LineRule& gauss3_line();

struct ElementMap {
  Point2 physical;
  Mat2 jacobian;  ///< columns are v1 - v0, v2 - v0
  double det;
  Mat2 inv_transpose;
};

/// Affine reference-to-physical map of triangle `element`. Throws MeshError on
/// zero-area elements.
ElementMap map_to_physical(const Mesh& mesh, int element, Point2 ref);

/// Global numbering of the Taylor-Hood triple: vector P2 displacement, P1 xi,
/// P1 eta. Monolithic layout [u1 | u2 | xi | eta]; scalar P2 dof of vertex v
/// is v, of edge e is V + e.
struct DofMap {
  int num_vertices = 0;
  int num_edges = 0;
  int scalar_p2 = 0;
  int u_offset = 0;
  int xi_offset = 0;
  int eta_offset = 0;
  int total = 0;

  /// Scalar P2 dofs (vertices and midpoints) lying on each tagged side.
  std::array<std::vector<int>, 4> p2_boundary;
  /// Vertices lying on each tagged side.
  std::array<std::vector<int>, 4> p1_boundary;
  /// All boundary vertices (each once).
  std::vector<int> boundary_vertices;

  int u_dof(int component, int scalar) const { return u_offset + component * scalar_p2 + scalar; }
  int xi_dof(int vertex) const { return xi_offset + vertex; }
  int eta_dof(int vertex) const { return eta_offset + vertex; }

  /// Local-to-global scalar P2 dofs of a triangle (6 entries).
  std::array<int, 6> element_p2(const Mesh& mesh, int t) const;
  /// Position of the scalar P2 node (vertex or edge midpoint).
  Point2 p2_node_position(const Mesh& mesh, int scalar) const;
};

DofMap build_dof_map(const Mesh& mesh);

}  // namespace hmporo
