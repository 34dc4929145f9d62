// Element families, local polynomial bases and face projections.
#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdgmg/mesh.hpp"
#include "hdgmg/quadrature.hpp"

namespace hdgmg {

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FamilyKind { Type1, Type2, Type3, Type4, WG };

FamilyKind parse_family(const std::string& name);
std::string to_string(FamilyKind kind);

/// V(T), W(T), trace degree k and the stabilization rule.
///
///   Type1  RT_k:   V = P_k,     W = [P_k]^2 + P_k x,  alpha = 0
///   Type2  BDM_k:  V = P_{k-1}, W = [P_k]^2,          alpha = 0
///   Type3:         V = P_k,     W = [P_k]^2,          alpha = const per element
///   Type4:         V = P_{k+1}, W = [P_k]^2,          alpha = c_alpha / h_T
///   WG:            V = P_0,     W = [P_0]^2,          alpha as Type3
struct ElementFamily {
  FamilyKind kind = FamilyKind::Type3;
  int k = 0;
  double alpha = 1.0;    // Type3 / WG
  double c_alpha = 1.0;  // Type4
  std::vector<double> element_alpha;  // optional per-element override (Type3 / WG)

  static ElementFamily make(FamilyKind kind, int k);

  void validate() const;
  int v_degree() const;
  int w_degree() const;
  bool raviart_thomas() const { return kind == FamilyKind::Type1; }
  int dim_v() const;
  int dim_w() const;
  int face_dofs() const { return k + 1; }
  int local_trace_dofs() const { return 3 * (k + 1); }
  double stabilization(int element, double h) const;
};

/// Coordinates of the global trace unknowns on one face.
///   Nodal:    Lagrange basis of P_k(F) (k=0: the constant 1; k=1: the
///             endpoint hats, ordered min vertex then max vertex).
///   Legendre: the L^2(F)-orthonormal Legendre basis itself.
enum class TraceBasis { Nodal, Legendre };

TraceBasis parse_trace_basis(const std::string& name);

/// Geometry of one triangle as seen by the local solvers.
struct ElementGeometry {
  std::array<Point, 3> vertices;
  Point centroid;
  double h = 0.0;
  double area = 0.0;
  std::array<int, 3> faces{};          // global face index of local face f
  std::array<double, 3> face_length{};
  std::array<Point, 3> normal{};       // outward unit normals
  std::array<bool, 3> reversed{};      // local edge runs max -> min vertex

  static ElementGeometry from_mesh(const Mesh& m, int t);
  Point map(const Point& ref) const;
  /// Point on local face f at global face parameter t in [0,1] (t = 0 at
  /// the face's smaller vertex index).
  Point face_point(int f, double t) const;
};

/// Scalar P_d in scaled monomials ((x-xc)/h, (y-yc)/h), d <= 2.
int scalar_dim(int degree);
void eval_scalar(int degree, const ElementGeometry& g, const Point& x, Eigen::Ref<Eigen::VectorXd> out);

/// Vector basis of W(T): componentwise scaled monomials, followed for RT by
/// the extra field (x - xc) p, p in the P_k scalar basis.
struct VectorBasisValues {
  Eigen::VectorXd vx;
  Eigen::VectorXd vy;
  Eigen::VectorXd div;
};
void eval_vector(const ElementFamily& fam, const ElementGeometry& g, const Point& x, VectorBasisValues& out);

/// Basis tables at the points of a triangle rule.
struct BasisTables {
  std::vector<Point> points;
  std::vector<double> weights;     // physical weights, sum = |T|
  Eigen::MatrixXd v;               // nq x dim V
  Eigen::MatrixXd wx, wy, wdiv;    // nq x dim W
};

BasisTables element_bases(const ElementFamily& fam, const ElementGeometry& g, int quad_degree);

/// L^2(F)-orthonormal Legendre basis of P_k(F) evaluated at parameter t.
double face_basis(int mode, double t, double length);

/// Coefficients of P_T^d g in the orthonormal face basis, ordered face-major
/// (local face f, mode m) -> f*(k+1)+m.
Eigen::VectorXd face_project(int k, const ElementGeometry& g, const std::function<double(const Point&)>& fn);

/// Matrix taking global trace coordinates on face F to orthonormal Legendre
/// coefficients.
Eigen::MatrixXd trace_dof_transform(int k, double length, TraceBasis basis);

}  // namespace hdgmg
