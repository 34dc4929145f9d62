// HDG and lowest-order WG local solvers, static condensation to the trace
// system, and element-by-element recovery.
#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hdgmg/elements.hpp"
#include "hdgmg/mesh.hpp"
#include "hdgmg/sparse.hpp"

namespace hdgmg {

class SingularLocalProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ScalarFunction = std::function<double(const Point&)>;
using TensorFunction = std::function<Eigen::Matrix2d(const Point&)>;

/// Diffusion tensor a. Piecewise-constant fields are evaluated once per
/// element at its centroid; variable fields pointwise.
class CoefficientField {
 public:
  static CoefficientField identity();
  static CoefficientField piecewise_scalar(ScalarFunction value);
  static CoefficientField piecewise_tensor(TensorFunction value);
  static CoefficientField variable_scalar(ScalarFunction value);
  static CoefficientField variable_tensor(TensorFunction value);

  bool piecewise_constant() const { return piecewise_; }
  /// a at x inside an element with centroid `centroid`. Throws if a is not SPD.
  Eigen::Matrix2d at(const Point& x, const Point& centroid) const;
  CoefficientField scaled(double factor) const;

 private:
  CoefficientField(TensorFunction fn, bool piecewise) : fn_(std::move(fn)), piecewise_(piecewise) {}
  TensorFunction fn_;
  bool piecewise_ = true;
};

enum class Scheme { HDG, WG };

/// Solution of the local problem on one element for given trace data.
struct LocalState {
  Eigen::VectorXd sigma;
  Eigen::VectorXd u;
};

/// Dense local saddle-point solver of one element. Trace data are
/// orthonormal face-basis coefficients, face-major.
class LocalSolver {
 public:
  LocalSolver() = default;

  static LocalSolver build(Scheme scheme, const ElementGeometry& g, const ElementFamily& fam,
                           const CoefficientField& a, int element);

  int dim_w() const { return static_cast<int>(mass_.rows()); }
  int dim_v() const { return static_cast<int>(stab_.rows()); }
  int dim_trace() const { return static_cast<int>(trace_.cols()); }
  double alpha() const { return alpha_; }

  /// Columns: sigma_mu and u_mu for each local trace basis function mu.
  const Eigen::MatrixXd& sigma_map() const { return sigma_map_; }
  const Eigen::MatrixXd& u_map() const { return u_map_; }
  /// (E)_{ij} = contribution of this element to a_h(mu_j, mu_i).
  const Eigen::MatrixXd& energy() const { return energy_; }

  /// (f, psi_i)_T for the V(T) basis.
  Eigen::VectorXd source_moments(const ScalarFunction& f) const;

  LocalState solve(const Eigen::VectorXd& lambda) const;
  LocalState solve(const Eigen::VectorXd& lambda, const Eigen::VectorXd& source) const;

  /// Max-abs residual of both local equations.
  double residual(const LocalState& s, const Eigen::VectorXd& lambda, const Eigen::VectorXd& source) const;

  /// <flux . n - alpha (P u - lambda), mu_m>_{dT} for each local trace mode.
  Eigen::VectorXd trace_flux(const LocalState& s, const Eigen::VectorXd& lambda) const;

  /// Projection of V(T) onto the trace modes: (P u)_m = <u, mu_m>.
  const Eigen::MatrixXd& trace_projection() const { return proj_; }

  /// Mass matrix of the energy term: (c phi_j, phi_i) for HDG, (a phi_j, phi_i) for WG.
  const Eigen::MatrixXd& energy_mass() const { return energy_mass_; }

  /// u_h evaluated at a point of the element.
  double eval_u(const Eigen::VectorXd& u, const Point& x) const;

 private:
  Eigen::MatrixXd mass_;      // eq. 1 mass: (c phi_j, phi_i) for HDG, (phi_j, phi_i) for WG
  Eigen::MatrixXd div_;       // (psi_i, div phi_j)
  Eigen::MatrixXd div_eff_;   // eq. 2 divergence: div_ for HDG, div_ M0^{-1} Ma for WG
  Eigen::MatrixXd stab_;      // alpha <P psi_j, P psi_i>
  Eigen::MatrixXd trace_;     // <mu_m, phi_i . n>, dim W x dim trace
  Eigen::MatrixXd proj_;      // <psi_j, mu_m>, dim trace x dim V
  Eigen::MatrixXd flux_;      // trace functional of sigma: trace_^T or trace_^T M0^{-1} Ma
  Eigen::MatrixXd energy_mass_;
  Eigen::MatrixXd sigma_map_;
  Eigen::MatrixXd u_map_;
  Eigen::MatrixXd energy_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
  double alpha_ = 0.0;
  ElementGeometry geom_;
  int v_degree_ = 0;
  std::vector<Point> qp_;
  std::vector<double> qw_;
  Eigen::MatrixXd qv_;
};

/// Global trace unknowns: P_k on every interior face, zero on the boundary.
/// DOF order is ascending face index, mode-major within a face.
class TraceSpace {
 public:
  TraceSpace() = default;
  TraceSpace(std::shared_ptr<const Mesh> mesh, int k, TraceBasis basis, bool all_faces_interior = false);

  const Mesh& mesh() const { return *mesh_; }
  int k() const { return k_; }
  TraceBasis basis() const { return basis_; }
  int num_dofs() const { return ndofs_; }
  /// First DOF of face f, or -1 when f carries no unknowns.
  int face_offset(int f) const { return offset_[f]; }
  const Eigen::MatrixXd& face_transform(int f) const { return transform_[f]; }

  /// Global DOF per local trace slot of element t (-1 for boundary slots).
  std::vector<int> element_dofs(int t) const;
  /// Block-diagonal map from element-global coordinates to orthonormal local coefficients.
  Eigen::MatrixXd element_transform(int t) const;
  Eigen::VectorXd gather(int t, const Vector& global) const;

  /// Gram matrix of <.,.>_h = sum_T h_T int_{dT} in global coordinates.
  SparseMatrix mesh_gram() const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int k_ = 0;
  TraceBasis basis_ = TraceBasis::Nodal;
  int ndofs_ = 0;
  std::vector<int> offset_;
  std::vector<Eigen::MatrixXd> transform_;
};

struct AssemblyOptions {
  TraceBasis basis = TraceBasis::Nodal;
  Execution exec = Execution::Parallel;
  /// Keep unknowns on boundary faces too (single-element tests).
  bool all_faces_interior = false;
};

/// A_h lambda = b_h together with the cached local solvers.
struct CondensedSystem {
  std::shared_ptr<const Mesh> mesh;
  ElementFamily family;
  Scheme scheme = Scheme::HDG;
  TraceSpace trace;
  std::vector<LocalSolver> locals;
  SparseMatrix A;
  Vector b;

  int num_dofs() const { return trace.num_dofs(); }
};

CondensedSystem assemble_condensed(std::shared_ptr<const Mesh> mesh, const ElementFamily& fam,
                                   const CoefficientField& a, const ScalarFunction& f,
                                   const AssemblyOptions& opts = {});

/// WG counterpart: V = P_0, W = [P_0]^2, flux P^W(a sigma).
CondensedSystem wg_assemble(std::shared_ptr<const Mesh> mesh, const ElementFamily& fam,
                            const CoefficientField& a, const ScalarFunction& f, const AssemblyOptions& opts = {});

/// Local solvers only (no global matrix); used by the serial/parallel comparison.
std::vector<LocalSolver> build_local_solvers(Scheme scheme, const Mesh& mesh, const ElementFamily& fam,
                                             const CoefficientField& a, Execution exec);

/// Reference assembly: evaluates a_h on every pair of global trace basis
/// functions through the local solves, producing a dense matrix.
Eigen::MatrixXd assemble_dense_reference(const CondensedSystem& sys);

struct Recovery {
  std::vector<LocalState> states;
};

Recovery recover_interior(const CondensedSystem& sys, const Vector& lambda, const ScalarFunction& f);

struct HdgResidual {
  double local = 0.0;   // max over elements of the two local equations
  double global = 0.0;  // max over trace test functions of the transmission condition
};

HdgResidual hdg_residual(const CondensedSystem& sys, const Vector& lambda, const ScalarFunction& f,
                         const Recovery& rec);

/// L^2 error of u_h against an exact solution.
double l2_error(const CondensedSystem& sys, const Recovery& rec, const ScalarFunction& exact);

/// Weak gradients of lowest-order WG on an element: grad_w^b of the local
/// trace mode m (columns), in W(T) = [P_0]^2 coordinates.
Eigen::MatrixXd wg_boundary_weak_gradient(const ElementGeometry& g);

}  // namespace hdgmg
