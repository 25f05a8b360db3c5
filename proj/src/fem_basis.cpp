#include "hmporo/fem_basis.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "hmporo/error.hpp"

namespace hmporo {

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree != 1 && degree != 2) throw InvalidArgument("only P1 and P2 Lagrange bases exist");
}

Point2 ReferenceBasis::node(int i) const {
  static constexpr std::array<Point2, 6> nodes{
      Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.0, 1.0},
      Point2{0.5, 0.0}, Point2{0.5, 0.5}, Point2{0.0, 0.5}};
  return nodes.at(i);
}

ReferenceBasis::Values ReferenceBasis::evaluate(Point2 ref) const {
  Values out;
  const double x = ref.x;
  const double y = ref.y;
  const double l0 = 1.0 - x - y;
  if (degree_ == 1) {
    out.count = 3;
    out.value = {l0, x, y, 0, 0, 0};
    out.grad[0] = {-1.0, -1.0};
    out.grad[1] = {1.0, 0.0};
    out.grad[2] = {0.0, 1.0};
    return out;
  }
  out.count = 6;
  out.value[0] = l0 * (2.0 * l0 - 1.0);
  out.value[1] = x * (2.0 * x - 1.0);
  out.value[2] = y * (2.0 * y - 1.0);
  out.value[3] = 4.0 * l0 * x;
  out.value[4] = 4.0 * x * y;
  out.value[5] = 4.0 * y * l0;
  const double d0 = 1.0 - 4.0 * l0;  // d/dx and d/dy of l0(2 l0 - 1)
  out.grad[0] = {d0, d0};
  out.grad[1] = {4.0 * x - 1.0, 0.0};
  out.grad[2] = {0.0, 4.0 * y - 1.0};
  out.grad[3] = {4.0 * (l0 - x), -4.0 * x};
  out.grad[4] = {4.0 * y, 4.0 * x};
  out.grad[5] = {-4.0 * y, 4.0 * (l0 - y)};
  return out;
}

namespace {

struct Orbit {
  int kind;  // 0: centroid, 1: (a, a, 1-2a), 2: permutations of (a, b, 1-a-b)
  double a;
  double b;
  double w;  // weight for unit area; halved when expanded
};

QuadratureRule expand(int degree, std::initializer_list<Orbit> orbits) {
  QuadratureRule rule{degree, {}};
  for (const auto& o : orbits) {
    const double w = 0.5 * o.w;
    if (o.kind == 0) {
      rule.points.push_back({{1.0 / 3.0, 1.0 / 3.0}, w});
    } else if (o.kind == 1) {
      const double c = 1.0 - 2.0 * o.a;
      rule.points.push_back({{o.a, o.a}, w});
      rule.points.push_back({{o.a, c}, w});
      rule.points.push_back({{c, o.a}, w});
    } else {
      const double c = 1.0 - o.a - o.b;
      for (auto [p, q] : {std::pair{o.a, o.b}, {o.b, o.a}, {o.a, c}, {c, o.a}, {o.b, c}, {c, o.b}})
        rule.points.push_back({{p, q}, w});
    }
  }
  return rule;
}

// Dunavant rules, abscissae and weights refined to full double precision.
const QuadratureRule& rule1() {
  static const QuadratureRule r = expand(1, {{0, 0, 0, 1.0}});
  return r;
}
const QuadratureRule& rule2() {
  static const QuadratureRule r = expand(2, {{1, 1.0 / 6.0, 0, 1.0 / 3.0}});
  return r;
}
const QuadratureRule& rule4() {
  static const QuadratureRule r =
      expand(4, {{1, 0.44594849091596488632, 0, 0.2233815896780114657},
                 {1, 0.09157621350977074346, 0, 0.10995174365532186764}});
  return r;
}
const QuadratureRule& rule5() {
  static const QuadratureRule r =
      expand(5, {{0, 0, 0, 0.225},
                 {1, 0.47014206410511508977, 0, 0.13239415278850618074},
                 {1, 0.1012865073234563388, 0, 0.1259391805448271526}});
  return r;
}
const QuadratureRule& rule6() {
  static const QuadratureRule r = expand(
      6, {{1, 0.24928674517091042129, 0, 0.11678627572637936603},
          {1, 0.06308901449150222834, 0, 0.050844906370206816921},
          {2, 0.053145049844816947353, 0.31035245103378440542, 0.082851075618373575194}});
  return r;
}
const QuadratureRule& rule8() {
  static const QuadratureRule r = expand(
      8, {{0, 0, 0, 0.14431560767778716825},
          {1, 0.45929258829272315603, 0, 0.095091634267284624794},
          {1, 0.17056930775176020662, 0, 0.10321737053471825028},
          {1, 0.050547228317030975458, 0, 0.032458497623198080311},
          {2, 0.0083947774099576053372, 0.26311282963463811342, 0.027230314174434994265}});
  return r;
}

}  // namespace

const QuadratureRule& triangle_quadrature(int degree) {
  switch (degree) {
    case 1: return rule1();
    case 2: return rule2();
    case 3:
    case 4: return rule4();
    case 5: return rule5();
    case 6: return rule6();
    case 7:
    case 8: return rule8();
    default: break;
  }
  std::ostringstream os;
  os << "no triangle quadrature of degree " << degree << " (supported: 1..8)";
  throw InvalidArgument(os.str());
}

const LineRule& gauss3_line() {
  static const LineRule r = [] {
    const double g = std::sqrt(0.6);
    return LineRule{{0.5 * (1.0 - g), 0.5, 0.5 * (1.0 + g)}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
  }();
  return r;
}

ElementMap map_to_physical(const Mesh& mesh, int element, Point2 ref) {
  if (element < 0 || element >= mesh.num_triangles()) throw MeshError("element index out of range");
  const auto& tri = mesh.triangles[element];
  const Point2 a = mesh.vertices[tri[0]];
  const Point2 b = mesh.vertices[tri[1]];
  const Point2 c = mesh.vertices[tri[2]];
  ElementMap m;
  m.jacobian << b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y;
  m.det = m.jacobian.determinant();
  if (!(std::abs(m.det) > 0.0)) {
    std::ostringstream os;
    os << "degenerate element " << element;
    throw MeshError(os.str());
  }
  m.inv_transpose = m.jacobian.inverse().transpose();
  m.physical = {a.x + m.jacobian(0, 0) * ref.x + m.jacobian(0, 1) * ref.y,
                a.y + m.jacobian(1, 0) * ref.x + m.jacobian(1, 1) * ref.y};
  return m;
}

std::array<int, 6> DofMap::element_p2(const Mesh& mesh, int t) const {
  const auto& v = mesh.triangles[t];
  const auto& e = mesh.triangle_edges[t];
  return {v[0], v[1], v[2], num_vertices + e[0], num_vertices + e[1], num_vertices + e[2]};
}

Point2 DofMap::p2_node_position(const Mesh& mesh, int scalar) const {
  if (scalar < num_vertices) return mesh.vertices[scalar];
  return mesh.edge_midpoint(scalar - num_vertices);
}

DofMap build_dof_map(const Mesh& mesh) {
  DofMap d;
  d.num_vertices = mesh.num_vertices();
  d.num_edges = mesh.num_edges();
  d.scalar_p2 = d.num_vertices + d.num_edges;
  d.u_offset = 0;
  d.xi_offset = 2 * d.scalar_p2;
  d.eta_offset = d.xi_offset + d.num_vertices;
  d.total = d.eta_offset + d.num_vertices;

  std::array<std::set<int>, 4> p2;
  std::array<std::set<int>, 4> p1;
  std::set<int> all;
  for (const auto& be : mesh.boundary_edges) {
    const int k = tag_index(be.tag);
    for (int v : mesh.edges[be.edge].vertices) {
      p2[k].insert(v);
      p1[k].insert(v);
      all.insert(v);
    }
    p2[k].insert(d.num_vertices + be.edge);
  }
  for (int k = 0; k < 4; ++k) {
    d.p2_boundary[k].assign(p2[k].begin(), p2[k].end());
    d.p1_boundary[k].assign(p1[k].begin(), p1[k].end());
  }
  d.boundary_vertices.assign(all.begin(), all.end());
  return d;
}

}  // namespace hmporo
