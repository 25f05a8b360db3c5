#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace hmporo {

struct Point2 {
  double x;
  double y;
};

/// Sides of the unit square: Gamma1 = {x=0}, Gamma2 = {x=1}, Gamma3 = {y=1},
/// Gamma4 = {y=0}.
enum class BoundaryTag : std::uint8_t { gamma1 = 0, gamma2 = 1, gamma3 = 2, gamma4 = 3 };

inline constexpr std::array<BoundaryTag, 4> kAllTags{BoundaryTag::gamma1, BoundaryTag::gamma2,
                                                     BoundaryTag::gamma3, BoundaryTag::gamma4};

inline constexpr int tag_index(BoundaryTag t) { return static_cast<int>(t); }
std::string_view tag_name(BoundaryTag t);

struct Edge {
  std::array<int, 2> vertices;       ///< sorted ascending
  std::array<int, 2> triangles{-1, -1};  ///< second entry -1 on the boundary
};

struct BoundaryEdge {
  int edge;
  BoundaryTag tag;
  Point2 normal;  ///< outward unit normal
};

/// Structured triangulation of (0,1)^2. Every one of the n x n cells is cut
/// by its lower-left to upper-right diagonal.
///
/// Local numbering inside a triangle: vertices 0,1,2 counterclockwise, local
/// edge k joins vertices (k, k+1 mod 3). `triangle_edges` stores the global
/// edge of each local edge in that order, which is also the P2 midpoint node
/// order (nodes 3,4,5).
struct Mesh {
  int n = 0;
  double h = 0.0;
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<Edge> edges;
  std::vector<BoundaryEdge> boundary_edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  Point2 edge_midpoint(int e) const;
  double edge_length(int e) const;
  double signed_area(int t) const;
};

Mesh build_structured_mesh(int n);

/// Tag of a point on the boundary of the unit square. Corners resolve by the
/// priority Gamma1 > Gamma2 > Gamma3 > Gamma4. Throws MeshError for points
/// farther than 1e-12 from the boundary.
BoundaryTag classify_boundary(Point2 p);

}  // namespace hmporo
