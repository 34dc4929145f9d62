#include "hdgmg/verify.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <json.hpp>

#include "hdgmg/two_level.hpp"

namespace hdgmg {

namespace {

// Weights of the mode-0 coefficients in int_{dT}, and |dT|.
Eigen::VectorXd mean_weights(const TraceSpace& trace, int t, double& perimeter) {
  const Mesh& m = trace.mesh();
  const int nb = trace.k() + 1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(3 * nb);
  perimeter = 0.0;
  for (int lf = 0; lf < 3; ++lf) {
    const double len = m.face_length(m.triangle_face(t, lf));
    w[lf * nb] = std::sqrt(len);
    perimeter += len;
  }
  return w;
}

// Assembles sum_T tr_T^t L_T tr_T over interior trace dofs.
template <class LocalFn>
SparseMatrix assemble_trace_form(const TraceSpace& trace, LocalFn local) {
  const Mesh& m = trace.mesh();
  std::vector<Triplet> trip;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    const Eigen::MatrixXd tr = trace.element_transform(ti);
    const Eigen::MatrixXd e = tr.transpose() * local(ti) * tr;
    const auto dofs = trace.element_dofs(ti);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] < 0) continue;
      for (std::size_t j = 0; j < dofs.size(); ++j) {
        if (dofs[j] < 0) continue;
        trip.emplace_back(dofs[i], dofs[j], e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
  }
  SparseMatrix s(trace.num_dofs(), trace.num_dofs());
  s.setFromTriplets(trip.begin(), trip.end());
  s.makeCompressed();
  return s;
}

using CholSolver = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

// Extreme eigenvalues of a v = mu b v (b SPD).
ExtremeEigenvalues generalized_extremes(const SparseMatrix& a, const SparseMatrix& b, int dense_limit) {
  const Eigen::Index n = a.rows();
  ExtremeEigenvalues out;
  if (n == 0) return out;
  if (n <= dense_limit) {
    const Eigen::VectorXd ev = dense_generalized_eigenvalues(to_dense(a), to_dense(b));
    out.min = ev[0];
    out.max = ev[n - 1];
    out.converged = true;
    return out;
  }
  CholSolver chol(b);
  if (chol.info() != Eigen::Success) throw std::runtime_error("generalized eigenproblem: B not SPD");
  const auto t = [&](const Vector& x, Vector& y) { y = chol.solve(Vector(a * x)); };
  const auto m = [&](const Vector& x, Vector& y) { y = b * x; };
  return lanczos_extremes(n, t, m, 300, 1e-8);
}

}  // namespace

ElementNorms element_norms(const TraceSpace& trace, int t, const Vector& lambda) {
  double perimeter = 0.0;
  const Eigen::VectorXd w = mean_weights(trace, t, perimeter);
  const Eigen::VectorXd l = trace.gather(t, lambda);
  ElementNorms out;
  out.boundary_l2_sq = l.squaredNorm();
  out.mean = w.dot(l) / perimeter;
  const double h = trace.mesh().diameter(t);
  out.seminorm_sq = std::max(0.0, out.boundary_l2_sq - out.mean * out.mean * perimeter) / h;
  return out;
}

MeshNorms mesh_norms(const TraceSpace& trace, const Vector& lambda) {
  const Mesh& m = trace.mesh();
  MeshNorms out;
  double hn = 0.0;
  double sn = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const ElementNorms e = element_norms(trace, static_cast<int>(t), lambda);
    hn += m.diameter(static_cast<int>(t)) * e.boundary_l2_sq;
    sn += e.seminorm_sq;
    out.element_seminorm.push_back(std::sqrt(e.seminorm_sq));
    out.element_mean.push_back(e.mean);
  }
  out.h_norm = std::sqrt(hn);
  out.h_seminorm = std::sqrt(sn);
  return out;
}

SparseMatrix seminorm_matrix(const TraceSpace& trace) {
  return assemble_trace_form(trace, [&](int t) {
    double perimeter = 0.0;
    const Eigen::VectorXd w = mean_weights(trace, t, perimeter);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(w.size(), w.size());
    return Eigen::MatrixXd((id - w * w.transpose() / perimeter) / trace.mesh().diameter(t));
  });
}

SparseMatrix inverse_scaled_boundary_matrix(const TraceSpace& trace) {
  const int n = 3 * (trace.k() + 1);
  return assemble_trace_form(trace, [&](int t) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n) / trace.mesh().diameter(t));
  });
}

EquivalenceRatios check_assumption1(const CondensedSystem& sys, int dense_limit) {
  const SparseMatrix s = seminorm_matrix(sys.trace);
  const ExtremeEigenvalues ex = generalized_extremes(sys.A, s, dense_limit);
  EquivalenceRatios out;
  out.c_min = ex.min;
  out.c_max = ex.max;
  out.dense = sys.A.rows() <= dense_limit;
  if (!(out.c_min > 0.0)) throw std::runtime_error("seminorm equivalence: non-positive lower ratio");
  return out;
}

double compute_Nh(const SparseMatrix& aux_stiffness, const SparseMatrix& galerkin, int dense_limit) {
  if (aux_stiffness.rows() != galerkin.rows()) throw std::invalid_argument("compute_Nh: dimension mismatch");
  const ExtremeEigenvalues ex = generalized_extremes(galerkin, aux_stiffness, dense_limit);
  return std::max(std::abs(1.0 - ex.min), std::abs(1.0 - ex.max));
}

MhReport compute_Mh(const SparseMatrix& aux_stiffness, const AuxiliaryCorrector& corrector, double Nh,
                    int dense_limit) {
  const auto r = [&](const Vector& x, Vector& y) { y = corrector.apply(x); };
  const auto rt = [&](const Vector& x, Vector& y) { y = corrector.apply_transpose(x); };
  MhReport out;
  out.Mh = operator_contraction(aux_stiffness, r, rt, dense_limit);
  if (Nh < 1.0) {
    out.admissibility = std::sqrt((1.0 + Nh) / (1.0 - Nh)) * ((1.0 + Nh) * out.Mh + Nh);
  } else {
    out.admissibility = std::numeric_limits<double>::infinity();
  }
  out.admissible = out.admissibility < 1.0;
  return out;
}

SparseMatrix averaging_operator(const TraceSpace& trace, const AuxiliarySpace& aux) {
  const Mesh& m = trace.mesh();
  std::vector<int> patch(m.num_vertices(), 0);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    for (int v : m.triangle(static_cast<int>(t))) ++patch[v];
  }
  std::vector<Triplet> trip;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const int ti = static_cast<int>(t);
    double perimeter = 0.0;
    const Eigen::VectorXd w = mean_weights(trace, ti, perimeter);
    // row functional of m_T in global coordinates
    const Eigen::RowVectorXd mean_row = w.transpose() * trace.element_transform(ti) / perimeter;
    const auto dofs = trace.element_dofs(ti);
    for (int v : m.triangle(ti)) {
      const int node = aux.node_to_dof[v];
      if (node < 0) continue;
      for (std::size_t j = 0; j < dofs.size(); ++j) {
        const double c = mean_row[static_cast<Eigen::Index>(j)];
        if (dofs[j] >= 0 && c != 0.0) trip.emplace_back(node, dofs[j], c / patch[v]);
      }
    }
  }
  SparseMatrix p(aux.num_dofs(), trace.num_dofs());
  p.setFromTriplets(trip.begin(), trip.end());
  p.makeCompressed();
  return p;
}

Vector averaging_apply(const SparseMatrix& averaging, const Vector& lambda) {
  if (lambda.size() != averaging.cols()) throw std::invalid_argument("averaging: size mismatch");
  return averaging * lambda;
}

namespace {

// Plain CG on an SPD linear map.
Vector conjugate_gradient(const LinearMap& op, const Vector& b, double tol, int max_iter) {
  Vector x = Vector::Zero(b.size());
  Vector r = b;
  Vector p = r;
  Vector q;
  double rr = r.squaredNorm();
  const double stop = tol * tol * rr;
  for (int it = 0; it < max_iter && rr > stop; ++it) {
    op(p, q);
    const double step = rr / p.dot(q);
    x += step * p;
    r -= step * q;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return x;
}

}  // namespace

double smoother_inverse_constant(const SparseMatrix& a, const Smoother& smoother, const TraceSpace& trace,
                                 int samples, std::uint64_t seed) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  // Rbar = R + R^t - R^t A R
  const auto rbar = [&](const Vector& x, Vector& y) {
    const Vector rx = smoother.apply(x);
    y = rx + smoother.apply_transpose(x) - smoother.apply_transpose(Vector(a * rx));
  };
  const SparseMatrix d = inverse_scaled_boundary_matrix(trace);
  double out = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector l = random_vector(n, seed + static_cast<std::uint64_t>(s));
    const Vector y = conjugate_gradient(rbar, l, 1e-12, 10 * static_cast<int>(n) + 100);
    out = std::max(out, l.dot(y) / l.dot(d * l));
  }
  return out;
}

SmootherBounds check_smoother_bounds(const SparseMatrix& a, const Smoother& smoother, const TraceSpace& trace,
                                     int samples, std::uint64_t seed) {
  const Eigen::Index n = a.rows();
  SmootherBounds out;
  out.samples = samples;
  out.seed = seed;
  if (n == 0) return out;
  const Eigen::MatrixXd ad = to_dense(a);
  const Eigen::MatrixXd r = dense_operator(n, [&](const Vector& x, Vector& y) { y = smoother.apply(x); });

  Eigen::EigenSolver<Eigen::MatrixXd> es(r * ad, false);
  const Eigen::VectorXcd ev = es.eigenvalues();
  out.eig_min = ev.real().minCoeff();
  out.eig_max = ev.real().maxCoeff();
  out.eig_max_imag = ev.imag().cwiseAbs().maxCoeff();

  const Eigen::MatrixXd rbar = r.transpose() + r - r.transpose() * ad * r;
  const Eigen::PartialPivLU<Eigen::MatrixXd> r_lu(r);
  const Eigen::PartialPivLU<Eigen::MatrixXd> rbar_lu(rbar);
  const SparseMatrix d = inverse_scaled_boundary_matrix(trace);
  for (int s = 0; s < samples; ++s) {
    const Vector l = random_vector(n, seed + static_cast<std::uint64_t>(s));
    const double q_r = l.dot(r_lu.solve(l));
    const double q_rbar = l.dot(rbar_lu.solve(l));
    const double q_d = l.dot(d * l);
    out.inverse_constant = std::max(out.inverse_constant, q_rbar / q_d);
    const double excess = (q_rbar - q_r) / std::abs(q_r);
    out.rbar_max_excess = s == 0 ? excess : std::max(out.rbar_max_excess, excess);
    if (excess > 1e-12) ++out.rbar_violations;
  }
  return out;
}

// ---------------------------------------------------------------------------

void Report::put(const std::string& key, Value v) {
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = std::move(v);
      return;
    }
  }
  entries_.emplace_back(key, std::move(v));
}

bool Report::all_passed() const {
  for (const auto& [key, v] : entries_) {
    if (key.size() > 5 && key.compare(key.size() - 5, 5, ".pass") == 0 && !std::get<bool>(v)) return false;
  }
  return true;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << std::setprecision(10);
  for (const auto& [key, v] : entries_) {
    os << key << " = ";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, bool>) {
            os << (x ? "true" : "false");
          } else {
            os << x;
          }
        },
        v);
    os << '\n';
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, v] : entries_) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(x)) {
              j[key] = x;
            } else {
              j[key] = nullptr;
            }
          } else {
            j[key] = x;
          }
        },
        v);
  }
  return j.dump(2);
}

}  // namespace hdgmg
