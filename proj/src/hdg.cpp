#include "hdgmg/hdg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hdgmg {

// ---------------------------------------------------------------------------
// CoefficientField

namespace {

Eigen::Matrix2d scalar_tensor(double v) { return v * Eigen::Matrix2d::Identity(); }

void check_spd(const Eigen::Matrix2d& a) {
  const double tr = a.trace();
  const double det = a.determinant();
  if (std::abs(a(0, 1) - a(1, 0)) > 1e-12 * std::max(1.0, std::abs(tr)) || !(tr > 0.0) || !(det > 0.0)) {
    throw std::domain_error("diffusion tensor is not SPD");
  }
}

}  // namespace

CoefficientField CoefficientField::identity() {
  return CoefficientField([](const Point&) { return Eigen::Matrix2d::Identity().eval(); }, true);
}

CoefficientField CoefficientField::piecewise_scalar(ScalarFunction value) {
  return CoefficientField([v = std::move(value)](const Point& x) { return scalar_tensor(v(x)); }, true);
}

CoefficientField CoefficientField::piecewise_tensor(TensorFunction value) {
  return CoefficientField(std::move(value), true);
}

CoefficientField CoefficientField::variable_scalar(ScalarFunction value) {
  return CoefficientField([v = std::move(value)](const Point& x) { return scalar_tensor(v(x)); }, false);
}

CoefficientField CoefficientField::variable_tensor(TensorFunction value) {
  return CoefficientField(std::move(value), false);
}

Eigen::Matrix2d CoefficientField::at(const Point& x, const Point& centroid) const {
  Eigen::Matrix2d a = fn_(piecewise_ ? centroid : x);
  check_spd(a);
  return a;
}

CoefficientField CoefficientField::scaled(double factor) const {
  return CoefficientField([fn = fn_, factor](const Point& x) { return (factor * fn(x)).eval(); }, piecewise_);
}

// ---------------------------------------------------------------------------
// LocalSolver

namespace {

int polynomial_order(const ElementFamily& fam) {
  return std::max(fam.v_degree(), fam.w_degree() + (fam.raviart_thomas() ? 1 : 0));
}

}  // namespace

LocalSolver LocalSolver::build(Scheme scheme, const ElementGeometry& g, const ElementFamily& fam,
                               const CoefficientField& a, int element) {
  if (scheme == Scheme::WG && fam.kind != FamilyKind::WG) {
    throw UnsupportedFamily("WG local solver requires the WG family");
  }
  const int p = polynomial_order(fam);
  const int qdeg = std::max(2, 2 * p + (a.piecewise_constant() ? 2 : 4));
  const BasisTables tab = element_bases(fam, g, qdeg);
  const int nw = fam.dim_w();
  const int nv = fam.dim_v();
  const int k = fam.k;
  const int nm = fam.local_trace_dofs();

  LocalSolver ls;
  ls.geom_ = g;
  ls.v_degree_ = fam.v_degree();
  ls.alpha_ = fam.stabilization(element, g.h);
  ls.qp_ = tab.points;
  ls.qw_ = tab.weights;
  ls.qv_ = tab.v;

  Eigen::MatrixXd mass_c = Eigen::MatrixXd::Zero(nw, nw);
  Eigen::MatrixXd mass_a = Eigen::MatrixXd::Zero(nw, nw);
  Eigen::MatrixXd mass_1 = Eigen::MatrixXd::Zero(nw, nw);
  ls.div_ = Eigen::MatrixXd::Zero(nv, nw);
  for (std::size_t q = 0; q < tab.points.size(); ++q) {
    const double w = tab.weights[q];
    const Eigen::Matrix2d at = a.at(tab.points[q], g.centroid);
    const Eigen::Matrix2d ct = at.inverse();
    for (int i = 0; i < nw; ++i) {
      const Eigen::Vector2d phi_i(tab.wx(q, i), tab.wy(q, i));
      for (int j = 0; j < nw; ++j) {
        const Eigen::Vector2d phi_j(tab.wx(q, j), tab.wy(q, j));
        mass_c(i, j) += w * phi_i.dot(ct * phi_j);
        mass_a(i, j) += w * phi_i.dot(at * phi_j);
        mass_1(i, j) += w * phi_i.dot(phi_j);
      }
    }
    for (int i = 0; i < nv; ++i) {
      for (int j = 0; j < nw; ++j) ls.div_(i, j) += w * tab.v(q, i) * tab.wdiv(q, j);
    }
  }

  // Face terms.
  const QuadratureRule er = edge_quadrature(2 * p + 2 * k + 2);
  ls.trace_ = Eigen::MatrixXd::Zero(nw, nm);
  ls.proj_ = Eigen::MatrixXd::Zero(nm, nv);
  VectorBasisValues vb;
  Eigen::VectorXd sv(nv);
  for (int f = 0; f < 3; ++f) {
    const double len = g.face_length[f];
    const Point n = g.normal[f];
    for (std::size_t q = 0; q < er.size(); ++q) {
      const double t = er.points[q].x;
      const double w = er.weights[q] * len;
      const Point x = g.face_point(f, t);
      eval_vector(fam, g, x, vb);
      eval_scalar(fam.v_degree(), g, x, sv);
      for (int m = 0; m <= k; ++m) {
        const double mu = face_basis(m, t, len);
        const int col = f * (k + 1) + m;
        for (int i = 0; i < nw; ++i) ls.trace_(i, col) += w * mu * (vb.vx[i] * n.x + vb.vy[i] * n.y);
        for (int j = 0; j < nv; ++j) ls.proj_(col, j) += w * mu * sv[j];
      }
    }
  }
  ls.stab_ = ls.alpha_ * ls.proj_.transpose() * ls.proj_;

  if (scheme == Scheme::HDG) {
    ls.mass_ = mass_c;
    ls.div_eff_ = ls.div_;
    ls.flux_ = ls.trace_.transpose();
    ls.energy_mass_ = mass_c;
  } else {
    const Eigen::MatrixXd pw = mass_1.ldlt().solve(mass_a);  // P^W(a .) in W coordinates
    ls.mass_ = mass_1;
    ls.div_eff_ = ls.div_ * pw;
    ls.flux_ = ls.trace_.transpose() * pw;
    ls.energy_mass_ = mass_a;
  }

  Eigen::MatrixXd sys(nw + nv, nw + nv);
  sys.topLeftCorner(nw, nw) = ls.mass_;
  sys.topRightCorner(nw, nv) = ls.div_.transpose();
  sys.bottomLeftCorner(nv, nw) = -ls.div_eff_;
  sys.bottomRightCorner(nv, nv) = ls.stab_;
  ls.lu_.compute(sys);
  if (!ls.lu_.isInvertible()) {
    throw SingularLocalProblem("singular local problem on element " + std::to_string(element));
  }

  Eigen::MatrixXd rhs(nw + nv, nm);
  rhs.topRows(nw) = ls.trace_;
  rhs.bottomRows(nv) = ls.alpha_ * ls.proj_.transpose();
  const Eigen::MatrixXd sol = ls.lu_.solve(rhs);
  ls.sigma_map_ = sol.topRows(nw);
  ls.u_map_ = sol.bottomRows(nv);

  const Eigen::MatrixXd jump = ls.proj_ * ls.u_map_ - Eigen::MatrixXd::Identity(nm, nm);
  ls.energy_ = ls.sigma_map_.transpose() * ls.energy_mass_ * ls.sigma_map_ + ls.alpha_ * jump.transpose() * jump;
  ls.energy_ = 0.5 * (ls.energy_ + ls.energy_.transpose()).eval();
  return ls;
}

Eigen::VectorXd LocalSolver::source_moments(const ScalarFunction& f) const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(dim_v());
  if (!f) return m;
  for (std::size_t q = 0; q < qp_.size(); ++q) m += qw_[q] * f(qp_[q]) * qv_.row(static_cast<Eigen::Index>(q)).transpose();
  return m;
}

LocalState LocalSolver::solve(const Eigen::VectorXd& lambda) const {
  return {sigma_map_ * lambda, u_map_ * lambda};
}

LocalState LocalSolver::solve(const Eigen::VectorXd& lambda, const Eigen::VectorXd& source) const {
  const int nw = dim_w();
  const int nv = dim_v();
  Eigen::VectorXd rhs(nw + nv);
  rhs.head(nw) = trace_ * lambda;
  rhs.tail(nv) = alpha_ * proj_.transpose() * lambda + source;
  const Eigen::VectorXd sol = lu_.solve(rhs);
  return {sol.head(nw), sol.tail(nv)};
}

double LocalSolver::residual(const LocalState& s, const Eigen::VectorXd& lambda, const Eigen::VectorXd& source) const {
  const Eigen::VectorXd r1 = mass_ * s.sigma + div_.transpose() * s.u - trace_ * lambda;
  const Eigen::VectorXd r2 = -div_eff_ * s.sigma + stab_ * s.u - alpha_ * proj_.transpose() * lambda - source;
  double r = 0.0;
  if (r1.size()) r = std::max(r, r1.cwiseAbs().maxCoeff());
  if (r2.size()) r = std::max(r, r2.cwiseAbs().maxCoeff());
  return r;
}

Eigen::VectorXd LocalSolver::trace_flux(const LocalState& s, const Eigen::VectorXd& lambda) const {
  return flux_ * s.sigma - alpha_ * (proj_ * s.u - lambda);
}

double LocalSolver::eval_u(const Eigen::VectorXd& u, const Point& x) const {
  Eigen::VectorXd sv(u.size());
  eval_scalar(v_degree_, geom_, x, sv);
  return sv.dot(u);
}

// ---------------------------------------------------------------------------
// TraceSpace

TraceSpace::TraceSpace(std::shared_ptr<const Mesh> mesh, int k, TraceBasis basis, bool all_faces_interior)
    : mesh_(std::move(mesh)), k_(k), basis_(basis) {
  const int nf = static_cast<int>(mesh_->num_faces());
  offset_.assign(nf, -1);
  transform_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    transform_[f] = trace_dof_transform(k_, mesh_->face_length(f), basis_);
    if (all_faces_interior || !mesh_->is_boundary_face(f)) {
      offset_[f] = ndofs_;
      ndofs_ += k_ + 1;
    }
  }
}

std::vector<int> TraceSpace::element_dofs(int t) const {
  std::vector<int> dofs(3 * (k_ + 1), -1);
  for (int lf = 0; lf < 3; ++lf) {
    const int off = offset_[mesh_->triangle_face(t, lf)];
    if (off < 0) continue;
    for (int m = 0; m <= k_; ++m) dofs[lf * (k_ + 1) + m] = off + m;
  }
  return dofs;
}

Eigen::MatrixXd TraceSpace::element_transform(int t) const {
  const int nb = k_ + 1;
  Eigen::MatrixXd tr = Eigen::MatrixXd::Zero(3 * nb, 3 * nb);
  for (int lf = 0; lf < 3; ++lf) tr.block(lf * nb, lf * nb, nb, nb) = transform_[mesh_->triangle_face(t, lf)];
  return tr;
}

Eigen::VectorXd TraceSpace::gather(int t, const Vector& global) const {
  const auto dofs = element_dofs(t);
  Eigen::VectorXd g(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) g[static_cast<Eigen::Index>(i)] = dofs[i] < 0 ? 0.0 : global[dofs[i]];
  return element_transform(t) * g;
}

SparseMatrix TraceSpace::mesh_gram() const {
  std::vector<Triplet> trip;
  const int nb = k_ + 1;
  for (std::size_t f = 0; f < mesh_->num_faces(); ++f) {
    const int off = offset_[f];
    if (off < 0) continue;
    double weight = 0.0;
    for (int t : mesh_->face_triangles(static_cast<int>(f))) {
      if (t >= 0) weight += mesh_->diameter(t);
    }
    const Eigen::MatrixXd g = weight * transform_[f].transpose() * transform_[f];
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) trip.emplace_back(off + i, off + j, g(i, j));
    }
  }
  SparseMatrix gm(ndofs_, ndofs_);
  gm.setFromTriplets(trip.begin(), trip.end());
  return gm;
}

// ---------------------------------------------------------------------------
// Assembly

std::vector<LocalSolver> build_local_solvers(Scheme scheme, const Mesh& mesh, const ElementFamily& fam,
                                             const CoefficientField& a, Execution exec) {
  fam.validate();
  const int nt = static_cast<int>(mesh.num_triangles());
  std::vector<LocalSolver> locals(nt);
  if (exec == Execution::Parallel) {
    // Exceptions may not cross the parallel region.
    std::vector<std::string> errors(nt);
#pragma omp parallel for schedule(dynamic, 64)
    for (int t = 0; t < nt; ++t) {
      try {
        locals[t] = LocalSolver::build(scheme, ElementGeometry::from_mesh(mesh, t), fam, a, t);
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
    for (const auto& e : errors) {
      if (!e.empty()) throw SingularLocalProblem(e);
    }
  } else {
    for (int t = 0; t < nt; ++t) locals[t] = LocalSolver::build(scheme, ElementGeometry::from_mesh(mesh, t), fam, a, t);
  }
  return locals;
}

namespace {

CondensedSystem assemble(Scheme scheme, std::shared_ptr<const Mesh> mesh, const ElementFamily& fam,
                         const CoefficientField& a, const ScalarFunction& f, const AssemblyOptions& opts) {
  CondensedSystem sys;
  sys.mesh = mesh;
  sys.family = fam;
  sys.scheme = scheme;
  sys.trace = TraceSpace(mesh, fam.k, opts.basis, opts.all_faces_interior);
  sys.locals = build_local_solvers(scheme, *mesh, fam, a, opts.exec);

  const int n = sys.trace.num_dofs();
  std::vector<Triplet> trip;
  trip.reserve(mesh->num_triangles() * static_cast<std::size_t>(fam.local_trace_dofs() * fam.local_trace_dofs()));
  sys.b = Vector::Zero(n);
  // Fixed element order keeps the accumulation deterministic.
  for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const auto dofs = sys.trace.element_dofs(ti);
    const Eigen::MatrixXd tr = sys.trace.element_transform(ti);
    const Eigen::MatrixXd e = tr.transpose() * sys.locals[t].energy() * tr;
    Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()));
    if (f) load = tr.transpose() * (sys.locals[t].u_map().transpose() * sys.locals[t].source_moments(f));
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] < 0) continue;
      sys.b[dofs[i]] += load[static_cast<Eigen::Index>(i)];
      for (std::size_t j = 0; j < dofs.size(); ++j) {
        if (dofs[j] < 0) continue;
        trip.emplace_back(dofs[i], dofs[j], e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
  }
  sys.A.resize(n, n);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  return sys;
}

}  // namespace

CondensedSystem assemble_condensed(std::shared_ptr<const Mesh> mesh, const ElementFamily& fam,
                                   const CoefficientField& a, const ScalarFunction& f, const AssemblyOptions& opts) {
  return assemble(fam.kind == FamilyKind::WG ? Scheme::WG : Scheme::HDG, std::move(mesh), fam, a, f, opts);
}

CondensedSystem wg_assemble(std::shared_ptr<const Mesh> mesh, const ElementFamily& fam, const CoefficientField& a,
                            const ScalarFunction& f, const AssemblyOptions& opts) {
  if (fam.kind != FamilyKind::WG) throw UnsupportedFamily("wg_assemble requires the WG family");
  return assemble(Scheme::WG, std::move(mesh), fam, a, f, opts);
}

Eigen::MatrixXd assemble_dense_reference(const CondensedSystem& sys) {
  const int n = sys.num_dofs();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  // a_h(lambda, mu) = sum_T (m sigma_lambda, sigma_mu)_T + alpha_T <P u_lambda - lambda, P u_mu - mu>_{dT}
  std::vector<std::vector<LocalState>> states(sys.locals.size());
  std::vector<std::vector<Eigen::VectorXd>> traces(sys.locals.size());
  Vector e = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    e.setZero();
    e[i] = 1.0;
    for (std::size_t t = 0; t < sys.locals.size(); ++t) {
      Eigen::VectorXd l = sys.trace.gather(static_cast<int>(t), e);
      states[t].push_back(sys.locals[t].solve(l));
      traces[t].push_back(std::move(l));
    }
  }
  for (std::size_t t = 0; t < sys.locals.size(); ++t) {
    const auto& ls = sys.locals[t];
    for (int i = 0; i < n; ++i) {
      if (traces[t][i].isZero(0.0)) continue;
      const Eigen::VectorXd ji = ls.trace_projection() * states[t][i].u - traces[t][i];
      for (int j = 0; j < n; ++j) {
        if (traces[t][j].isZero(0.0)) continue;
        const Eigen::VectorXd jj = ls.trace_projection() * states[t][j].u - traces[t][j];
        dense(i, j) += states[t][i].sigma.dot(ls.energy_mass() * states[t][j].sigma) + ls.alpha() * ji.dot(jj);
      }
    }
  }
  return dense;
}

Recovery recover_interior(const CondensedSystem& sys, const Vector& lambda, const ScalarFunction& f) {
  if (lambda.size() != sys.num_dofs()) throw std::invalid_argument("trace vector has the wrong dimension");
  Recovery rec;
  rec.states.reserve(sys.locals.size());
  for (std::size_t t = 0; t < sys.locals.size(); ++t) {
    const auto& ls = sys.locals[t];
    rec.states.push_back(ls.solve(sys.trace.gather(static_cast<int>(t), lambda), ls.source_moments(f)));
  }
  return rec;
}

HdgResidual hdg_residual(const CondensedSystem& sys, const Vector& lambda, const ScalarFunction& f,
                         const Recovery& rec) {
  HdgResidual res;
  Vector transmission = Vector::Zero(sys.num_dofs());
  for (std::size_t t = 0; t < sys.locals.size(); ++t) {
    const int ti = static_cast<int>(t);
    const auto& ls = sys.locals[t];
    const Eigen::VectorXd l = sys.trace.gather(ti, lambda);
    res.local = std::max(res.local, ls.residual(rec.states[t], l, ls.source_moments(f)));
    const Eigen::VectorXd flux = sys.trace.element_transform(ti).transpose() * ls.trace_flux(rec.states[t], l);
    const auto dofs = sys.trace.element_dofs(ti);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] >= 0) transmission[dofs[i]] += flux[static_cast<Eigen::Index>(i)];
    }
  }
  res.global = transmission.size() ? transmission.cwiseAbs().maxCoeff() : 0.0;
  return res;
}

double l2_error(const CondensedSystem& sys, const Recovery& rec, const ScalarFunction& exact) {
  const QuadratureRule rule = triangle_quadrature(8);
  double err2 = 0.0;
  for (std::size_t t = 0; t < sys.locals.size(); ++t) {
    const ElementGeometry g = ElementGeometry::from_mesh(*sys.mesh, static_cast<int>(t));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = g.map(rule.points[q]);
      const double d = sys.locals[t].eval_u(rec.states[t].u, x) - exact(x);
      err2 += 2.0 * g.area * rule.weights[q] * d * d;
    }
  }
  return std::sqrt(err2);
}

Eigen::MatrixXd wg_boundary_weak_gradient(const ElementGeometry& g) {
  // (grad_w^b mu, q)_T = <mu, q.n>_{dT} with q constant: |T| grad = int_F mu n
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(2, 3);
  for (int f = 0; f < 3; ++f) {
    const double int_mu = std::sqrt(g.face_length[f]);  // integral of the mode-0 basis function
    grad(0, f) = int_mu * g.normal[f].x / g.area;
    grad(1, f) = int_mu * g.normal[f].y / g.area;
  }
  return grad;
}

}  // namespace hdgmg
