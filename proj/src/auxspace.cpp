#include "hdgmg/auxspace.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace hdgmg {

namespace {

// Gradients of the three barycentric hats of triangle t.
Eigen::Matrix<double, 2, 3> hat_gradients(const Mesh& m, int t) {
  const auto& tri = m.triangle(t);
  const Point p0 = m.vertex(tri[0]);
  const Point p1 = m.vertex(tri[1]);
  const Point p2 = m.vertex(tri[2]);
  const double two_area = 2.0 * m.area(t);
  Eigen::Matrix<double, 2, 3> g;
  g << (p1.y - p2.y), (p2.y - p0.y), (p0.y - p1.y),
       (p2.x - p1.x), (p0.x - p2.x), (p1.x - p0.x);
  return g / two_area;
}

}  // namespace

AuxiliarySpace assemble_p1(std::shared_ptr<const Mesh> mesh, const CoefficientField& a, AuxCoefficient mode) {
  AuxiliarySpace aux;
  aux.mesh = mesh;
  const Mesh& m = *mesh;
  aux.node_to_dof.assign(m.num_vertices(), -1);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    if (m.is_boundary_vertex(static_cast<int>(v))) continue;
    aux.node_to_dof[v] = static_cast<int>(aux.dof_to_node.size());
    aux.dof_to_node.push_back(static_cast<int>(v));
  }
  const QuadratureRule rule = triangle_quadrature(a.piecewise_constant() ? 1 : 4);
  std::vector<Triplet> ks;
  std::vector<Triplet> ms;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const ElementGeometry g = ElementGeometry::from_mesh(m, ti);
    Eigen::Matrix2d abar = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d cbar = Eigen::Matrix2d::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Eigen::Matrix2d aq = a.at(g.map(rule.points[q]), g.centroid);
      abar += 2.0 * rule.weights[q] * aq;
      cbar += 2.0 * rule.weights[q] * aq.inverse();
    }
    const Eigen::Matrix2d coef = mode == AuxCoefficient::Exact ? abar : cbar.inverse().eval();
    const auto grad = hat_gradients(m, ti);
    const Eigen::Matrix3d local = g.area * grad.transpose() * coef * grad;
    const auto& tri = m.triangle(ti);
    for (int i = 0; i < 3; ++i) {
      const int di = aux.node_to_dof[tri[i]];
      if (di < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int dj = aux.node_to_dof[tri[j]];
        if (dj < 0) continue;
        ks.emplace_back(di, dj, local(i, j));
        ms.emplace_back(di, dj, g.area * (i == j ? 2.0 : 1.0) / 12.0);
      }
    }
  }
  const int n = aux.num_dofs();
  aux.stiffness.resize(n, n);
  aux.stiffness.setFromTriplets(ks.begin(), ks.end());
  aux.stiffness.makeCompressed();
  aux.mass.resize(n, n);
  aux.mass.setFromTriplets(ms.begin(), ms.end());
  aux.mass.makeCompressed();
  return aux;
}

ProlongationMap build_prolongation(const TraceSpace& trace, const AuxiliarySpace& aux) {
  const Mesh& m = trace.mesh();
  const int k = trace.k();
  const QuadratureRule rule = edge_quadrature(2 * k + 2);
  std::vector<Triplet> trip;
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    const int fi = static_cast<int>(f);
    const int off = trace.face_offset(fi);
    if (off < 0) continue;
    const double len = m.face_length(fi);
    const Eigen::MatrixXd tinv = trace.face_transform(fi).inverse();
    for (int end = 0; end < 2; ++end) {
      const int dof = aux.node_to_dof[m.face(fi)[end]];
      if (dof < 0) continue;
      // hat restricted to F: 1 - t at the min vertex, t at the max vertex
      Eigen::VectorXd ortho = Eigen::VectorXd::Zero(k + 1);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.points[q].x;
        const double hat = end == 0 ? 1.0 - t : t;
        for (int md = 0; md <= k; ++md) ortho[md] += rule.weights[q] * len * hat * face_basis(md, t, len);
      }
      const Eigen::VectorXd coeff = tinv * ortho;
      for (int md = 0; md <= k; ++md) {
        if (coeff[md] != 0.0) trip.emplace_back(off + md, dof, coeff[md]);
      }
    }
  }
  ProlongationMap p;
  p.matrix.resize(trace.num_dofs(), aux.num_dofs());
  p.matrix.setFromTriplets(trip.begin(), trip.end());
  p.matrix.makeCompressed();
  return p;
}

SparseMatrix galerkin_coarse(const SparseMatrix& a, const ProlongationMap& p, double* asymmetry) {
  if (a.rows() != a.cols() || a.cols() != p.matrix.rows()) throw std::invalid_argument("galerkin_coarse: dimension mismatch");
  const SparseMatrix pt = p.matrix.transpose();
  const SparseMatrix ap = a * p.matrix;
  SparseMatrix c = pt * ap;
  c.prune(0.0);
  if (asymmetry) *asymmetry = relative_asymmetry(c);
  const SparseMatrix ct = c.transpose();
  SparseMatrix sym = 0.5 * (c + ct);
  sym.makeCompressed();
  return sym;
}

Vector adjoint_prolongation(const ProlongationMap& p, const SparseMatrix& trace_gram, const AuxiliarySpace& aux,
                            const Vector& mu) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass(aux.mass);
  const Vector rhs = p.matrix.transpose() * (trace_gram * mu);
  return mass.solve(rhs);
}

SparseMatrix p1_interpolation(const MeshHierarchy& hier, std::size_t coarse_level, const AuxiliarySpace& coarse,
                              const AuxiliarySpace& fine) {
  if (coarse_level + 1 >= hier.depth()) throw std::invalid_argument("p1_interpolation: no finer level");
  const auto& parents = hier.vertex_parents[coarse_level];
  std::vector<Triplet> trip;
  for (int fd = 0; fd < fine.num_dofs(); ++fd) {
    const auto [a, b] = parents[fine.dof_to_node[fd]];
    const int da = coarse.node_to_dof[a];
    const int db = coarse.node_to_dof[b];
    if (a == b) {
      if (da >= 0) trip.emplace_back(fd, da, 1.0);
      continue;
    }
    if (da >= 0) trip.emplace_back(fd, da, 0.5);
    if (db >= 0) trip.emplace_back(fd, db, 0.5);
  }
  SparseMatrix p(fine.num_dofs(), coarse.num_dofs());
  p.setFromTriplets(trip.begin(), trip.end());
  p.makeCompressed();
  return p;
}

double p1_h1_seminorm(const AuxiliarySpace& aux, const Vector& v) {
  const Mesh& m = *aux.mesh;
  double s = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const auto grad = hat_gradients(m, ti);
    Eigen::Vector3d vals;
    for (int i = 0; i < 3; ++i) {
      const int d = aux.node_to_dof[m.triangle(ti)[i]];
      vals[i] = d < 0 ? 0.0 : v[d];
    }
    s += m.area(ti) * (grad * vals).squaredNorm();
  }
  return std::sqrt(s);
}

}  // namespace hdgmg
