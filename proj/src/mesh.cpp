#include "hdgmg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace hdgmg {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Splits cell [x0,x1]x[y0,y1] along the diagonal of negative slope.
void add_criss_cell(std::vector<Mesh::Triangle>& tris, int v00, int v10, int v01, int v11) {
  tris.push_back({v00, v10, v01});
  tris.push_back({v10, v11, v01});
}

class VertexTable {
 public:
  explicit VertexTable(std::vector<Point>& pts) : pts_(pts) {
    for (std::size_t i = 0; i < pts_.size(); ++i) index_[{pts_[i].x, pts_[i].y}] = static_cast<int>(i);
  }
  int get(double x, double y) {
    auto [it, inserted] = index_.try_emplace({x, y}, static_cast<int>(pts_.size()));
    if (inserted) pts_.push_back({x, y});
    return it->second;
  }

 private:
  std::vector<Point>& pts_;
  std::map<std::pair<double, double>, int> index_;
};

// Union-jack square (-s,s)^2 split into four cells with diagonals through
// the origin.
void add_union_jack(VertexTable& vt, std::vector<Mesh::Triangle>& tris, double s) {
  const int o = vt.get(0.0, 0.0);
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      const int ex = vt.get(sx * s, 0.0);
      const int ey = vt.get(0.0, sy * s);
      const int c = vt.get(sx * s, sy * s);
      tris.push_back({o, ex, c});
      tris.push_back({o, c, ey});
    }
  }
}

}  // namespace

Domain parse_domain(const std::string& name) {
  if (name == "unit-square") return Domain::UnitSquare;
  if (name == "lshape" || name == "L-shape") return Domain::LShape;
  if (name == "square") return Domain::Square;
  if (name == "graded-square") return Domain::GradedSquare;
  throw MeshError("unknown domain '" + name + "'");
}

Mesh::Mesh(std::vector<Point> vertices, std::vector<Triangle> triangles, int level)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), level_(level) {
  const int nv = static_cast<int>(vertices_.size());
  for (auto& t : triangles_) {
    for (int v : t) {
      if (v < 0 || v >= nv) throw MeshError("triangle references vertex out of range");
    }
    double a = signed_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    if (a < 0.0) {
      std::swap(t[1], t[2]);
      a = -a;
    }
    if (!(a > 0.0)) throw MeshError("degenerate triangle");
    area_.push_back(a);
    const Point& p0 = vertices_[t[0]];
    const Point& p1 = vertices_[t[1]];
    const Point& p2 = vertices_[t[2]];
    diameter_.push_back(std::max({distance(p0, p1), distance(p1, p2), distance(p2, p0)}));
  }

  std::vector<Edge> all;
  all.reserve(3 * triangles_.size());
  for (const auto& t : triangles_) {
    for (int lf = 0; lf < 3; ++lf) {
      const int a = t[lf];
      const int b = t[(lf + 1) % 3];
      all.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  faces_ = std::move(all);

  face_to_tri_.assign(faces_.size(), {-1, -1});
  tri_faces_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int lf = 0; lf < 3; ++lf) {
      const int a = triangles_[t][lf];
      const int b = triangles_[t][(lf + 1) % 3];
      const Edge key{std::min(a, b), std::max(a, b)};
      const auto it = std::lower_bound(faces_.begin(), faces_.end(), key);
      const int f = static_cast<int>(it - faces_.begin());
      tri_faces_[t][lf] = f;
      auto& adj = face_to_tri_[f];
      if (adj[0] < 0) {
        adj[0] = static_cast<int>(t);
      } else if (adj[1] < 0) {
        adj[1] = static_cast<int>(t);
      } else {
        throw MeshError("face shared by more than two triangles");
      }
    }
  }

  boundary_face_.assign(faces_.size(), false);
  boundary_vertex_.assign(vertices_.size(), false);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (face_to_tri_[f][1] < 0) {
      boundary_face_[f] = true;
      boundary_vertex_[faces_[f][0]] = true;
      boundary_vertex_[faces_[f][1]] = true;
    }
  }
}

double Mesh::face_length(int f) const { return distance(vertices_[faces_[f][0]], vertices_[faces_[f][1]]); }

Point Mesh::centroid(int t) const {
  const auto& tri = triangles_[t];
  const Point s = vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]];
  return (1.0 / 3.0) * s;
}

Point Mesh::face_midpoint(int f) const { return 0.5 * (vertices_[faces_[f][0]] + vertices_[faces_[f][1]]); }

Point Mesh::outward_normal(int t, int lf) const {
  const auto& tri = triangles_[t];
  const Point e = vertices_[tri[(lf + 1) % 3]] - vertices_[tri[lf]];
  const double len = std::hypot(e.x, e.y);
  return {e.y / len, -e.x / len};
}

double Mesh::max_diameter() const { return *std::max_element(diameter_.begin(), diameter_.end()); }
double Mesh::min_diameter() const { return *std::min_element(diameter_.begin(), diameter_.end()); }

Mesh Mesh::with_graded_half_width(double s) const {
  Mesh copy = *this;
  copy.graded_half_width_ = s;
  return copy;
}

namespace {

// Coarse meshes number their vertices row by row (ascending y, then x); this
// fixes the relaxation order on every refined level.
void renumber_by_rows(std::vector<Point>& pts, std::vector<Mesh::Triangle>& tris) {
  std::vector<int> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return pts[a].y != pts[b].y ? pts[a].y < pts[b].y : pts[a].x < pts[b].x;
  });
  std::vector<int> new_index(pts.size());
  std::vector<Point> sorted(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = static_cast<int>(i);
    sorted[i] = pts[order[i]];
  }
  pts = std::move(sorted);
  for (auto& t : tris) {
    for (int& v : t) v = new_index[v];
  }
}

}  // namespace

Mesh build_structured(Domain domain) {
  std::vector<Point> pts;
  std::vector<Mesh::Triangle> tris;
  VertexTable vt(pts);
  auto cell = [&](double x0, double y0) {
    add_criss_cell(tris, vt.get(x0, y0), vt.get(x0 + 1, y0), vt.get(x0, y0 + 1), vt.get(x0 + 1, y0 + 1));
  };
  switch (domain) {
    case Domain::UnitSquare:
      cell(0, 0);
      break;
    case Domain::LShape:
      cell(-1, 0);
      cell(0, 0);
      cell(0, -1);
      break;
    case Domain::Square:
      cell(-1, -1);
      cell(0, -1);
      cell(-1, 0);
      cell(0, 0);
      break;
    case Domain::GradedSquare: {
      add_union_jack(vt, tris, 1.0);
      renumber_by_rows(pts, tris);
      return Mesh(std::move(pts), std::move(tris), 0).with_graded_half_width(1.0);
    }
  }
  renumber_by_rows(pts, tris);
  return Mesh(std::move(pts), std::move(tris), 0);
}

Mesh refine_uniform(const Mesh& m) {
  std::vector<Point> pts = m.vertices();
  const int nv = static_cast<int>(pts.size());
  for (std::size_t f = 0; f < m.num_faces(); ++f) pts.push_back(m.face_midpoint(static_cast<int>(f)));
  std::vector<Mesh::Triangle> tris;
  tris.reserve(4 * m.num_triangles());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& v = m.triangle(static_cast<int>(t));
    const int m01 = nv + m.triangle_face(static_cast<int>(t), 0);
    const int m12 = nv + m.triangle_face(static_cast<int>(t), 1);
    const int m20 = nv + m.triangle_face(static_cast<int>(t), 2);
    tris.push_back({v[0], m01, m20});
    tris.push_back({m01, v[1], m12});
    tris.push_back({m20, m12, v[2]});
    tris.push_back({m01, m12, m20});
  }
  return Mesh(std::move(pts), std::move(tris), m.level() + 1);
}

Mesh refine_graded_center(const Mesh& m) {
  const auto hw = m.graded_half_width();
  if (!hw) throw MeshError("mesh is not in the center-graded family");
  const double s = *hw;
  const double r = 0.5 * s;

  std::vector<Point> pts = m.vertices();
  VertexTable vt(pts);
  for (double x : {-s, 0.0, s}) {
    for (double y : {-s, 0.0, s}) {
      if (x == 0.0 && y == 0.0) continue;
      if (vt.get(x, y) >= static_cast<int>(m.num_vertices())) {
        throw MeshError("marked central square is missing its boundary vertices");
      }
    }
  }

  std::vector<Mesh::Triangle> tris;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const Point c = m.centroid(static_cast<int>(t));
    if (std::abs(c.x) < s && std::abs(c.y) < s) continue;
    tris.push_back(m.triangle(static_cast<int>(t)));
  }
  if (tris.size() + 8 != m.num_triangles()) throw MeshError("marked central square is not a union-jack patch");

  add_union_jack(vt, tris, r);

  // Ring between (-r,r)^2 and (-s,s)^2: each flank is fanned from the
  // midpoint of its outer side.
  const std::array<std::array<double, 2>, 4> outward{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};
  for (const auto& d : outward) {
    const double tx = -d[1];
    const double ty = d[0];
    const int big_a = vt.get(s * (d[0] - tx), s * (d[1] - ty));
    const int big_b = vt.get(s * d[0], s * d[1]);
    const int big_c = vt.get(s * (d[0] + tx), s * (d[1] + ty));
    const int a = vt.get(r * (d[0] - tx), r * (d[1] - ty));
    const int b = vt.get(r * d[0], r * d[1]);
    const int c = vt.get(r * (d[0] + tx), r * (d[1] + ty));
    tris.push_back({big_a, a, big_b});
    tris.push_back({a, b, big_b});
    tris.push_back({b, c, big_b});
    tris.push_back({c, big_c, big_b});
  }
  return Mesh(std::move(pts), std::move(tris), m.level() + 1).with_graded_half_width(r);
}

double shape_regularity(const Mesh& m) {
  double rho = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const double h = m.diameter(static_cast<int>(t));
    rho = std::max(rho, h * h / m.area(static_cast<int>(t)));
  }
  return rho;
}

MeshHierarchy build_uniform_hierarchy(const Mesh& coarse, int refinements) {
  MeshHierarchy hier;
  hier.levels.push_back(std::make_shared<const Mesh>(coarse));
  for (int l = 0; l < refinements; ++l) {
    const Mesh& c = *hier.levels.back();
    std::vector<std::array<int, 2>> parents;
    parents.reserve(c.num_vertices() + c.num_faces());
    for (std::size_t v = 0; v < c.num_vertices(); ++v) parents.push_back({static_cast<int>(v), static_cast<int>(v)});
    for (const auto& f : c.faces()) parents.push_back(f);
    hier.vertex_parents.push_back(std::move(parents));
    hier.levels.push_back(std::make_shared<const Mesh>(refine_uniform(c)));
  }
  return hier;
}

void write_mesh(std::ostream& os, const Mesh& m) {
  os << "mesh 2d\n";
  os << "vertices " << m.num_vertices() << "\n";
  os.precision(17);
  for (const auto& p : m.vertices()) os << p.x << " " << p.y << "\n";
  os << "triangles " << m.num_triangles() << "\n";
  for (const auto& t : m.triangles()) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Mesh read_mesh(std::istream& is) {
  std::string word;
  std::string dim;
  if (!(is >> word >> dim) || word != "mesh" || dim != "2d") throw MeshError("expected header 'mesh 2d'");
  std::size_t n = 0;
  if (!(is >> word >> n) || word != "vertices") throw MeshError("expected 'vertices N'");
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    if (!(is >> p.x >> p.y)) throw MeshError("truncated vertex list");
  }
  if (!(is >> word >> n) || word != "triangles") throw MeshError("expected 'triangles M'");
  std::vector<Mesh::Triangle> tris(n);
  for (auto& t : tris) {
    if (!(is >> t[0] >> t[1] >> t[2])) throw MeshError("truncated triangle list");
  }
  return Mesh(std::move(pts), std::move(tris));
}

}  // namespace hdgmg
