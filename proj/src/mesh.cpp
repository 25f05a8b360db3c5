#include "hmporo/mesh.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "hmporo/error.hpp"

namespace hmporo {

std::string_view tag_name(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::gamma1: return "Gamma1";
    case BoundaryTag::gamma2: return "Gamma2";
    case BoundaryTag::gamma3: return "Gamma3";
    case BoundaryTag::gamma4: return "Gamma4";
  }
  return "?";
}

Point2 Mesh::edge_midpoint(int e) const {
  const auto& a = vertices[edges[e].vertices[0]];
  const auto& b = vertices[edges[e].vertices[1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

double Mesh::edge_length(int e) const {
  const auto& a = vertices[edges[e].vertices[0]];
  const auto& b = vertices[edges[e].vertices[1]];
  return std::hypot(b.x - a.x, b.y - a.y);
}

double Mesh::signed_area(int t) const {
  const auto& a = vertices[triangles[t][0]];
  const auto& b = vertices[triangles[t][1]];
  const auto& c = vertices[triangles[t][2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

BoundaryTag classify_boundary(Point2 p) {
  constexpr double tol = 1e-12;
  const bool inside = p.x > -tol && p.x < 1.0 + tol && p.y > -tol && p.y < 1.0 + tol;
  if (inside) {
    if (std::abs(p.x) <= tol) return BoundaryTag::gamma1;
    if (std::abs(p.x - 1.0) <= tol) return BoundaryTag::gamma2;
    if (std::abs(p.y - 1.0) <= tol) return BoundaryTag::gamma3;
    if (std::abs(p.y) <= tol) return BoundaryTag::gamma4;
  }
  std::ostringstream os;
  os << "point (" << p.x << ", " << p.y << ") is not on the boundary of the unit square";
  throw MeshError(os.str());
}

Mesh build_structured_mesh(int n) {
  if (n < 1) throw MeshError("structured mesh needs n >= 1 subdivisions");
  Mesh m;
  m.n = n;
  m.h = 1.0 / n;
  const int np = n + 1;
  m.vertices.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices.push_back({i * m.h, j * m.h});
  // Snap the last row/column exactly onto x = 1 and y = 1.
  for (int j = 0; j <= n; ++j) m.vertices[j * np + n].x = 1.0;
  for (int i = 0; i <= n; ++i) m.vertices[n * np + i].y = 1.0;

  m.triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = j * np + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + np;
      const int v11 = v01 + 1;
      m.triangles.push_back({v00, v10, v11});
      m.triangles.push_back({v00, v11, v01});
    }
  }

  std::map<std::pair<int, int>, int> edge_ids;
  m.triangle_edges.resize(m.triangles.size());
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = m.triangles[t][k];
      int b = m.triangles[t][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_ids.try_emplace({a, b}, m.num_edges());
      if (inserted) m.edges.push_back({{a, b}, {t, -1}});
      else m.edges[it->second].triangles[1] = t;
      m.triangle_edges[t][k] = it->second;
    }
  }

  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.edges[e].triangles[1] >= 0) continue;
    const BoundaryTag tag = classify_boundary(m.edge_midpoint(e));
    Point2 normal{0.0, 0.0};
    switch (tag) {
      case BoundaryTag::gamma1: normal = {-1.0, 0.0}; break;
      case BoundaryTag::gamma2: normal = {1.0, 0.0}; break;
      case BoundaryTag::gamma3: normal = {0.0, 1.0}; break;
      case BoundaryTag::gamma4: normal = {0.0, -1.0}; break;
    }
    m.boundary_edges.push_back({e, tag, normal});
  }
  return m;
}

}  // namespace hmporo
