#include <gtest/gtest.h>

#include <cmath>

#include "hmporo/error.hpp"
#include "hmporo/mesh.hpp"

using namespace hmporo;

namespace {

TEST(Mesh, Counts) {
  const Mesh m1 = build_structured_mesh(1);
  EXPECT_EQ(m1.num_vertices(), 4);
  EXPECT_EQ(m1.num_triangles(), 2);
  EXPECT_EQ(m1.num_edges(), 5);
  const Mesh m4 = build_structured_mesh(4);
  EXPECT_EQ(m4.num_vertices(), 25);
  EXPECT_EQ(m4.num_triangles(), 32);
  EXPECT_EQ(m4.num_edges(), 56);
  EXPECT_DOUBLE_EQ(m4.h, 0.25);
}

TEST(Mesh, RejectsZeroSubdivisions) { EXPECT_THROW(build_structured_mesh(0), MeshError); }

TEST(Mesh, AreasAndOrientation) {
  for (int n : {1, 2, 5}) {
    const Mesh m = build_structured_mesh(n);
    double total = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
      EXPECT_NEAR(m.signed_area(t), 0.5 * m.h * m.h, 1e-15);
      total += m.signed_area(t);
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    EXPECT_EQ(m.num_edges(), m.num_vertices() + m.num_triangles() - 1);
  }
}

TEST(Mesh, DiagonalRunsLowerLeftToUpperRight) {
  const Mesh m = build_structured_mesh(3);
  for (const auto& e : m.edges) {
    const Point2 a = m.vertices[e.vertices[0]], b = m.vertices[e.vertices[1]];
    const double dx = b.x - a.x, dy = b.y - a.y;
    if (std::abs(dx) > 1e-12 && std::abs(dy) > 1e-12) {
      EXPECT_GT(dx * dy, 0.0);
    }
  }
}

TEST(Mesh, ConformingEdges) {
  const Mesh m = build_structured_mesh(4);
  int boundary = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& edge = m.edges[e];
    EXPECT_LT(edge.vertices[0], edge.vertices[1]);
    EXPECT_GE(edge.triangles[0], 0);
    if (edge.triangles[1] < 0) ++boundary;
  }
  EXPECT_EQ(boundary, 16);
  EXPECT_EQ(static_cast<int>(m.boundary_edges.size()), 16);
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int k = 0; k < 3; ++k) {
      const auto& edge = m.edges[m.triangle_edges[t][k]];
      const int a = m.triangles[t][k], b = m.triangles[t][(k + 1) % 3];
      EXPECT_EQ(std::min(a, b), edge.vertices[0]);
      EXPECT_EQ(std::max(a, b), edge.vertices[1]);
      EXPECT_TRUE(edge.triangles[0] == t || edge.triangles[1] == t);
    }
}

TEST(Mesh, BoundaryEdgesTaggedWithOutwardNormals) {
  const Mesh m = build_structured_mesh(5);
  double length = 0.0;
  for (const auto& be : m.boundary_edges) {
    length += m.edge_length(be.edge);
    const Point2 mid = m.edge_midpoint(be.edge);
    EXPECT_EQ(classify_boundary(mid), be.tag);
    const Point2 expected = be.tag == BoundaryTag::gamma1   ? Point2{-1, 0}
                            : be.tag == BoundaryTag::gamma2 ? Point2{1, 0}
                            : be.tag == BoundaryTag::gamma3 ? Point2{0, 1}
                                                            : Point2{0, -1};
    EXPECT_EQ(be.normal.x, expected.x);
    EXPECT_EQ(be.normal.y, expected.y);
  }
  EXPECT_NEAR(length, 4.0, 1e-12);
}

TEST(ClassifyBoundary, Examples) {
  EXPECT_EQ(classify_boundary({0.0, 0.5}), BoundaryTag::gamma1);
  EXPECT_EQ(classify_boundary({0.5, 1.0}), BoundaryTag::gamma3);
  EXPECT_EQ(classify_boundary({1.0, 0.25}), BoundaryTag::gamma2);
  EXPECT_EQ(classify_boundary({0.3, 0.0}), BoundaryTag::gamma4);
  EXPECT_EQ(classify_boundary({0.0, 0.0}), BoundaryTag::gamma1);
  EXPECT_EQ(classify_boundary({1.0, 1.0}), BoundaryTag::gamma2);
  EXPECT_THROW(classify_boundary({0.5, 0.5}), MeshError);
}

}  // namespace
