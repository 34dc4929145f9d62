#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hdgmg/mesh.hpp"

using namespace hdgmg;

namespace {

void expect_conforming(const Mesh& m) {
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    const auto& tt = m.face_triangles(static_cast<int>(f));
    EXPECT_GE(tt[0], 0);
    EXPECT_EQ(m.is_boundary_face(static_cast<int>(f)), tt[1] < 0);
  }
}

}  // namespace

TEST(Mesh, UnitSquareCounts) {
  const Mesh m = build_structured(Domain::UnitSquare);
  EXPECT_EQ(m.num_vertices(), 4u);
  EXPECT_EQ(m.num_triangles(), 2u);
  EXPECT_EQ(m.num_faces(), 5u);
}

TEST(Mesh, LShapeCountsSatisfyEuler) {
  const Mesh m = build_structured(Domain::LShape);
  EXPECT_EQ(m.num_vertices(), 8u);
  EXPECT_EQ(m.num_triangles(), 6u);
  EXPECT_EQ(m.num_faces(), 13u);
  EXPECT_EQ(static_cast<int>(m.num_vertices() - m.num_faces() + m.num_triangles()) + 1, 2);
  expect_conforming(m);
}

TEST(Mesh, UniformRefinementCounts) {
  const Mesh m = refine_uniform(build_structured(Domain::UnitSquare));
  EXPECT_EQ(m.num_vertices(), 9u);
  EXPECT_EQ(m.num_triangles(), 8u);
  expect_conforming(m);
}

TEST(Mesh, ShapeRegularity) {
  const Mesh ref({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  EXPECT_NEAR(shape_regularity(ref), 4.0, 1e-14);
  const Mesh eq({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, {{0, 1, 2}});
  EXPECT_NEAR(shape_regularity(eq), 4.0 / std::sqrt(3.0), 1e-12);
  const Mesh l = build_structured(Domain::LShape);
  EXPECT_NEAR(shape_regularity(refine_uniform(refine_uniform(l))), shape_regularity(l), 1e-12);
}

TEST(Mesh, ClockwiseInputIsReoriented) {
  const Mesh m({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}});
  EXPECT_GT(m.area(0), 0.0);
  EXPECT_NEAR(m.area(0), 0.5, 1e-15);
}

TEST(Mesh, DegenerateTriangleRejected) {
  EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}), MeshError);
}

TEST(Mesh, OutwardNormals) {
  const Mesh m({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  const Point n0 = m.outward_normal(0, 0);
  EXPECT_NEAR(n0.x, 0.0, 1e-15);
  EXPECT_NEAR(n0.y, -1.0, 1e-15);
}

TEST(Mesh, HierarchyParents) {
  const MeshHierarchy h = build_uniform_hierarchy(build_structured(Domain::LShape), 2);
  ASSERT_EQ(h.depth(), 3u);
  for (std::size_t l = 0; l + 1 < h.depth(); ++l) {
    const Mesh& c = *h.levels[l];
    const Mesh& f = *h.levels[l + 1];
    for (std::size_t v = 0; v < f.num_vertices(); ++v) {
      const auto [a, b] = h.vertex_parents[l][v];
      const Point mid = 0.5 * (c.vertex(a) + c.vertex(b));
      EXPECT_NEAR(mid.x, f.vertex(static_cast<int>(v)).x, 1e-14);
      EXPECT_NEAR(mid.y, f.vertex(static_cast<int>(v)).y, 1e-14);
    }
  }
}

TEST(Mesh, GradedRefinementHalvesSmallestElement) {
  // T0 -> T1 changes the macro pattern; from T1 on only the center is refined
  Mesh m = refine_graded_center(build_structured(Domain::GradedSquare));
  const double hmax = m.max_diameter();
  double ratio = hmax / m.min_diameter();
  for (int j = 0; j < 6; ++j) {
    const double hmin = m.min_diameter();
    m = refine_graded_center(m);
    expect_conforming(m);
    EXPECT_NEAR(m.min_diameter(), 0.5 * hmin, 1e-12 * hmin);
    EXPECT_NEAR(m.max_diameter(), hmax, 1e-14);
    const double r = m.max_diameter() / m.min_diameter();
    EXPECT_NEAR(r, 2.0 * ratio, 1e-9 * r);
    ratio = r;
  }
}

TEST(Mesh, GradedRefinementRequiresGradedMesh) {
  EXPECT_THROW(refine_graded_center(build_structured(Domain::LShape)), MeshError);
}

TEST(Mesh, TextRoundTrip) {
  const Mesh m = refine_uniform(build_structured(Domain::LShape));
  std::stringstream ss;
  write_mesh(ss, m);
  const Mesh r = read_mesh(ss);
  EXPECT_EQ(r.num_triangles(), m.num_triangles());
  EXPECT_EQ(r.num_faces(), m.num_faces());
  EXPECT_EQ(r.vertices()[7].x, m.vertices()[7].x);
}
