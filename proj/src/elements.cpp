#include "hdgmg/elements.hpp"

#include <cmath>

namespace hdgmg {

FamilyKind parse_family(const std::string& name) {
  if (name == "type1" || name == "rt") return FamilyKind::Type1;
  if (name == "type2" || name == "bdm") return FamilyKind::Type2;
  if (name == "type3") return FamilyKind::Type3;
  if (name == "type4") return FamilyKind::Type4;
  if (name == "wg") return FamilyKind::WG;
  throw UnsupportedFamily("unknown element family '" + name + "'");
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Type1: return "type1";
    case FamilyKind::Type2: return "type2";
    case FamilyKind::Type3: return "type3";
    case FamilyKind::Type4: return "type4";
    case FamilyKind::WG: return "wg";
  }
  return "?";
}

TraceBasis parse_trace_basis(const std::string& name) {
  if (name == "nodal") return TraceBasis::Nodal;
  if (name == "legendre") return TraceBasis::Legendre;
  throw std::invalid_argument("unknown trace basis '" + name + "'");
}

ElementFamily ElementFamily::make(FamilyKind kind, int k) {
  ElementFamily fam;
  fam.kind = kind;
  fam.k = k;
  if (kind == FamilyKind::Type1 || kind == FamilyKind::Type2) fam.alpha = 0.0;
  fam.validate();
  return fam;
}

void ElementFamily::validate() const {
  bool ok = false;
  switch (kind) {
    case FamilyKind::Type1: ok = (k == 0); break;
    case FamilyKind::Type2: ok = (k == 1); break;
    case FamilyKind::Type3: ok = (k == 0 || k == 1); break;
    case FamilyKind::Type4: ok = (k == 0); break;
    case FamilyKind::WG: ok = (k == 0); break;
  }
  if (!ok) throw UnsupportedFamily("unsupported combination " + to_string(kind) + " k=" + std::to_string(k));
  if (alpha < 0.0 || c_alpha < 0.0) throw UnsupportedFamily("stabilization must be nonnegative");
  for (double a : element_alpha) {
    if (a < 0.0) throw UnsupportedFamily("stabilization must be nonnegative");
  }
}

int ElementFamily::v_degree() const {
  switch (kind) {
    case FamilyKind::Type2: return k - 1;
    case FamilyKind::Type4: return k + 1;
    case FamilyKind::WG: return 0;
    default: return k;
  }
}

int ElementFamily::w_degree() const { return kind == FamilyKind::WG ? 0 : k; }

int ElementFamily::dim_v() const { return scalar_dim(v_degree()); }

int ElementFamily::dim_w() const {
  const int n = 2 * scalar_dim(w_degree());
  return raviart_thomas() ? n + scalar_dim(k) : n;
}

double ElementFamily::stabilization(int element, double h) const {
  switch (kind) {
    case FamilyKind::Type1:
    case FamilyKind::Type2: return 0.0;
    case FamilyKind::Type4: return c_alpha / h;
    default:
      if (!element_alpha.empty()) return element_alpha.at(element);
      return alpha;
  }
}

ElementGeometry ElementGeometry::from_mesh(const Mesh& m, int t) {
  ElementGeometry g;
  const auto& tri = m.triangle(t);
  for (int i = 0; i < 3; ++i) g.vertices[i] = m.vertex(tri[i]);
  g.centroid = m.centroid(t);
  g.h = m.diameter(t);
  g.area = m.area(t);
  for (int f = 0; f < 3; ++f) {
    g.faces[f] = m.triangle_face(t, f);
    g.face_length[f] = m.face_length(g.faces[f]);
    g.normal[f] = m.outward_normal(t, f);
    g.reversed[f] = tri[f] > tri[(f + 1) % 3];
  }
  return g;
}

Point ElementGeometry::map(const Point& ref) const {
  return vertices[0] + ref.x * (vertices[1] - vertices[0]) + ref.y * (vertices[2] - vertices[0]);
}

Point ElementGeometry::face_point(int f, double t) const {
  const double s = reversed[f] ? 1.0 - t : t;
  return vertices[f] + s * (vertices[(f + 1) % 3] - vertices[f]);
}

int scalar_dim(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }

void eval_scalar(int degree, const ElementGeometry& g, const Point& x, Eigen::Ref<Eigen::VectorXd> out) {
  const double xi = (x.x - g.centroid.x) / g.h;
  const double eta = (x.y - g.centroid.y) / g.h;
  if (degree >= 0) out[0] = 1.0;
  if (degree >= 1) {
    out[1] = xi;
    out[2] = eta;
  }
  if (degree >= 2) {
    out[3] = xi * xi;
    out[4] = xi * eta;
    out[5] = eta * eta;
  }
  if (degree > 2) throw UnsupportedFamily("scalar basis degree > 2");
}

namespace {

// d/dxi and d/deta of the scaled monomials, in the same order as eval_scalar.
void eval_scalar_grad(int degree, const ElementGeometry& g, const Point& x, Eigen::VectorXd& dxi,
                      Eigen::VectorXd& deta) {
  const int n = scalar_dim(degree);
  dxi.setZero(n);
  deta.setZero(n);
  const double xi = (x.x - g.centroid.x) / g.h;
  const double eta = (x.y - g.centroid.y) / g.h;
  if (degree >= 1) {
    dxi[1] = 1.0;
    deta[2] = 1.0;
  }
  if (degree >= 2) {
    dxi[3] = 2.0 * xi;
    dxi[4] = eta;
    deta[4] = xi;
    deta[5] = 2.0 * eta;
  }
}

}  // namespace

void eval_vector(const ElementFamily& fam, const ElementGeometry& g, const Point& x, VectorBasisValues& out) {
  const int wd = fam.w_degree();
  const int ns = scalar_dim(wd);
  const int n = fam.dim_w();
  out.vx.setZero(n);
  out.vy.setZero(n);
  out.div.setZero(n);
  Eigen::VectorXd s(ns);
  eval_scalar(wd, g, x, s);
  Eigen::VectorXd dxi, deta;
  eval_scalar_grad(wd, g, x, dxi, deta);
  for (int i = 0; i < ns; ++i) {
    out.vx[i] = s[i];
    out.div[i] = dxi[i] / g.h;
    out.vy[ns + i] = s[i];
    out.div[ns + i] = deta[i] / g.h;
  }
  if (fam.raviart_thomas()) {
    const int nk = scalar_dim(fam.k);
    Eigen::VectorXd p(nk);
    eval_scalar(fam.k, g, x, p);
    Eigen::VectorXd px, py;
    eval_scalar_grad(fam.k, g, x, px, py);
    const double dx = x.x - g.centroid.x;
    const double dy = x.y - g.centroid.y;
    for (int i = 0; i < nk; ++i) {
      out.vx[2 * ns + i] = dx * p[i];
      out.vy[2 * ns + i] = dy * p[i];
      // div((x - xc) p) = 2 p + (x - xc) . grad p
      out.div[2 * ns + i] = 2.0 * p[i] + (dx * px[i] + dy * py[i]) / g.h;
    }
  }
}

BasisTables element_bases(const ElementFamily& fam, const ElementGeometry& g, int quad_degree) {
  fam.validate();
  if (!(g.area > 0.0)) throw MeshError("degenerate element");
  const QuadratureRule rule = triangle_quadrature(quad_degree);
  BasisTables tab;
  const int nq = static_cast<int>(rule.size());
  tab.v.resize(nq, fam.dim_v());
  tab.wx.resize(nq, fam.dim_w());
  tab.wy.resize(nq, fam.dim_w());
  tab.wdiv.resize(nq, fam.dim_w());
  VectorBasisValues vb;
  Eigen::VectorXd sv(fam.dim_v());
  for (int q = 0; q < nq; ++q) {
    const Point x = g.map(rule.points[q]);
    tab.points.push_back(x);
    tab.weights.push_back(2.0 * g.area * rule.weights[q]);
    eval_scalar(fam.v_degree(), g, x, sv);
    tab.v.row(q) = sv.transpose();
    eval_vector(fam, g, x, vb);
    tab.wx.row(q) = vb.vx.transpose();
    tab.wy.row(q) = vb.vy.transpose();
    tab.wdiv.row(q) = vb.div.transpose();
  }
  return tab;
}

double face_basis(int mode, double t, double length) {
  const double s = 1.0 / std::sqrt(length);
  switch (mode) {
    case 0: return s;
    case 1: return std::sqrt(3.0) * (2.0 * t - 1.0) * s;
    case 2: return std::sqrt(5.0) * (6.0 * t * t - 6.0 * t + 1.0) * s;
    default: throw UnsupportedFamily("face basis mode > 2");
  }
}

Eigen::VectorXd face_project(int k, const ElementGeometry& g, const std::function<double(const Point&)>& fn) {
  const QuadratureRule rule = edge_quadrature(2 * k + 6);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(3 * (k + 1));
  for (int f = 0; f < 3; ++f) {
    const double len = g.face_length[f];
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.points[q].x;
      const double val = fn(g.face_point(f, t)) * rule.weights[q] * len;
      for (int m = 0; m <= k; ++m) out[f * (k + 1) + m] += val * face_basis(m, t, len);
    }
  }
  return out;
}

Eigen::MatrixXd trace_dof_transform(int k, double length, TraceBasis basis) {
  if (basis == TraceBasis::Legendre) return Eigen::MatrixXd::Identity(k + 1, k + 1);
  const double r = std::sqrt(length);
  Eigen::MatrixXd t(k + 1, k + 1);
  if (k == 0) {
    t(0, 0) = r;
  } else if (k == 1) {
    // hats 1 - t and t against the orthonormal Legendre pair
    const double c = std::sqrt(3.0) * r / 6.0;
    t << 0.5 * r, 0.5 * r, -c, c;
  } else {
    throw UnsupportedFamily("nodal trace basis for k > 1");
  }
  return t;
}

}  // namespace hdgmg
