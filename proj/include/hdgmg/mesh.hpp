// Conforming 2-D triangulations, uniform and center-graded refinement.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdgmg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Domain {
  UnitSquare,    // (0,1)^2, one cell
  LShape,        // (-1,1)x(0,1) U (0,1)x(-1,0], three unit cells
  Square,        // (-1,1)^2, four unit cells
  GradedSquare,  // (-1,1)^2, four cells with diagonals through the origin
};

Domain parse_domain(const std::string& name);

/// Immutable conforming triangulation.
///
/// Local face f of triangle t is the edge (v_f, v_{f+1 mod 3}). Faces are
/// stored as (min, max) vertex pairs and numbered in lexicographic order.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;
  using Edge = std::array<int, 2>;

  /// Builds topology from vertices and triangles. Clockwise triangles are
  /// reoriented; degenerate ones and non-conforming input are rejected.
  Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles, int level = 0);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& faces() const { return faces_; }

  const Point& vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const Edge& face(int f) const { return faces_[f]; }

  /// Adjacent triangles of a face; second entry is -1 on the boundary.
  const Edge& face_triangles(int f) const { return face_to_tri_[f]; }
  /// Global face index of local face `lf` of triangle `t`.
  int triangle_face(int t, int lf) const { return tri_faces_[t][lf]; }

  bool is_boundary_face(int f) const { return boundary_face_[f]; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  double diameter(int t) const { return diameter_[t]; }
  double area(int t) const { return area_[t]; }
  double face_length(int f) const;
  Point centroid(int t) const;
  Point face_midpoint(int f) const;
  /// Unit normal of local face `lf`, outward with respect to triangle `t`.
  Point outward_normal(int t, int lf) const;

  double max_diameter() const;
  double min_diameter() const;

  int level() const { return level_; }

  /// Half-width s of the marked central square (-s,s)^2 for meshes in the
  /// center-graded family; empty otherwise.
  std::optional<double> graded_half_width() const { return graded_half_width_; }
  Mesh with_graded_half_width(double s) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> faces_;
  std::vector<Edge> face_to_tri_;
  std::vector<Triangle> tri_faces_;
  std::vector<bool> boundary_face_;
  std::vector<bool> boundary_vertex_;
  std::vector<double> diameter_;
  std::vector<double> area_;
  int level_ = 0;
  std::optional<double> graded_half_width_;
};

Mesh build_structured(Domain domain);

/// Midpoint subdivision. Coarse vertices keep their indices; the midpoint of
/// coarse face f gets index num_vertices() + f. Child 4t+i lies in parent t.
Mesh refine_uniform(const Mesh& m);

/// Replaces the marked central square by a half-size central square plus a
/// ring of transition triangles. All existing vertices are kept.
Mesh refine_graded_center(const Mesh& m);

/// max_T h_T^2 / |T|
double shape_regularity(const Mesh& m);

/// Nested uniform hierarchy, coarsest first.
struct MeshHierarchy {
  std::vector<std::shared_ptr<const Mesh>> levels;
  /// vertex_parents[l][v] = (a, b): fine vertex v on level l+1 is the
  /// midpoint of coarse vertices a and b (a == b for inherited vertices).
  std::vector<std::vector<std::array<int, 2>>> vertex_parents;

  std::size_t depth() const { return levels.size(); }
  const Mesh& finest() const { return *levels.back(); }
};

MeshHierarchy build_uniform_hierarchy(const Mesh& coarse, int refinements);

/// Plain-text format: "mesh 2d", "vertices N", N lines "x y",
/// "triangles M", M lines "i j k" (0-based, CCW).
void write_mesh(std::ostream& os, const Mesh& m);
Mesh read_mesh(std::istream& is);

}  // namespace hdgmg
