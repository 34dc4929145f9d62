#include <cmath>

#include <gtest/gtest.h>

#include "hdgmg/experiment.hpp"
#include "hdgmg/verify.hpp"

using namespace hdgmg;

namespace {

const ScalarFunction kZero = [](const Point&) { return 0.0; };

std::shared_ptr<const Mesh> reference_triangle() {
  return std::make_shared<const Mesh>(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}},
                                      std::vector<Mesh::Triangle>{{0, 1, 2}});
}

}  // namespace

TEST(Norms, ReferenceTriangle) {
  const TraceSpace trace(reference_triangle(), 0, TraceBasis::Nodal, true);
  const double s2 = std::sqrt(2.0);
  const MeshNorms ones = mesh_norms(trace, Vector::Ones(3));
  EXPECT_NEAR(ones.h_norm * ones.h_norm, s2 * (2.0 + s2), 1e-13);
  EXPECT_NEAR(ones.h_seminorm, 0.0, 1e-7);
  // global face order is lexicographic: (0,1), (0,2), (1,2)
  Vector e = Vector::Zero(3);
  e[trace.face_offset(0)] = 1.0;
  const MeshNorms n = mesh_norms(trace, e);
  EXPECT_NEAR(n.element_mean[0], 1.0 / (2.0 + s2), 1e-14);
  EXPECT_NEAR(n.h_seminorm * n.h_seminorm, 0.5, 1e-14);
  const SparseMatrix s = seminorm_matrix(trace);
  EXPECT_NEAR(e.dot(s * e), 0.5, 1e-14);
  EXPECT_NEAR(Vector::Ones(3).dot(s * Vector::Ones(3)), 0.0, 1e-14);
}

TEST(Assumption1, RatiosScaleWithCoefficient) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(build_structured(Domain::LShape)));
  // no stabilization, so a_h is linear in a
  const auto fam = ElementFamily::make(FamilyKind::Type1, 0);
  const EquivalenceRatios r1 = check_assumption1(assemble_condensed(m, fam, CoefficientField::identity(), kZero));
  const EquivalenceRatios r2 =
      check_assumption1(assemble_condensed(m, fam, CoefficientField::identity().scaled(2.0), kZero));
  EXPECT_GT(r1.c_min, 0.0);
  EXPECT_NEAR(r2.c_min, 2.0 * r1.c_min, 1e-10 * r1.c_min);
  EXPECT_NEAR(r2.c_max, 2.0 * r1.c_max, 1e-10 * r1.c_max);
}

TEST(Mh, ExactSolveIsZero) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(build_structured(Domain::LShape)));
  const AuxiliarySpace aux = assemble_p1(m, coefficient_preset("exp1"));
  const ExactAuxiliarySolve exact(aux.stiffness);
  const MhReport r = compute_Mh(aux.stiffness, exact, 0.0);
  EXPECT_LE(r.Mh, 1e-10);
  EXPECT_TRUE(r.admissible);
}

TEST(Averaging, ConstantMeansAndBoundary) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(refine_uniform(build_structured(Domain::LShape))));
  const TraceSpace trace(m, 1, TraceBasis::Nodal);
  const AuxiliarySpace aux = assemble_p1(m, CoefficientField::identity());
  const SparseMatrix p = averaging_operator(trace, aux);
  EXPECT_EQ(p.rows(), aux.num_dofs());
  // interior nodes whose patch has no boundary face see mean 3
  const Vector v = averaging_apply(p, Vector::Constant(trace.num_dofs(), 3.0));
  for (int i = 0; i < aux.num_dofs(); ++i) {
    const int node = aux.dof_to_node[i];
    bool touches_boundary = false;
    for (std::size_t t = 0; t < m->num_triangles(); ++t) {
      const auto& tri = m->triangle(static_cast<int>(t));
      if (tri[0] != node && tri[1] != node && tri[2] != node) continue;
      for (int v2 : tri) touches_boundary = touches_boundary || m->is_boundary_vertex(v2);
    }
    if (!touches_boundary) EXPECT_NEAR(v[i], 3.0, 1e-13);
  }
}

TEST(SmootherBounds, SymmetricGaussSeidel) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(build_structured(Domain::LShape)));
  const CondensedSystem sys =
      assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 0), CoefficientField::identity(), kZero);
  const Smoother s(sys.A, {SmootherKind::SymmetricGS, 1, 0.0});
  const SmootherBounds b = check_smoother_bounds(sys.A, s, sys.trace);
  EXPECT_GT(b.eig_min, 0.0);
  EXPECT_LE(b.eig_max, 1.0 + 1e-10);
  EXPECT_EQ(b.rbar_violations, 0);
  EXPECT_NEAR(smoother_inverse_constant(sys.A, s, sys.trace), b.inverse_constant, 1e-8 * b.inverse_constant);
}

TEST(Report, TextJsonAndChecks) {
  Report r;
  r.set("n", 3);
  r.set("x", 0.5);
  r.set("bad", std::nan(""));
  r.check("ok", true);
  EXPECT_TRUE(r.all_passed());
  EXPECT_NE(r.to_json().find("null"), std::string::npos);
  r.check("fails", false);
  EXPECT_FALSE(r.all_passed());
  EXPECT_NE(r.to_text().find("fails.pass"), std::string::npos);
}
