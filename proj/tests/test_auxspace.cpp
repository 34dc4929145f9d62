#include <gtest/gtest.h>

#include "hdgmg/auxspace.hpp"
#include "hdgmg/eigen_estimates.hpp"
#include "hdgmg/experiment.hpp"
#include "hdgmg/verify.hpp"

using namespace hdgmg;

namespace {

const ScalarFunction kZero = [](const Point&) { return 0.0; };

std::shared_ptr<const Mesh> lshape(int refinements) {
  Mesh m = build_structured(Domain::LShape);
  for (int i = 0; i < refinements; ++i) m = refine_uniform(m);
  return std::make_shared<const Mesh>(m);
}

}  // namespace

TEST(AuxSpace, FivePointStencil) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(build_structured(Domain::UnitSquare)));
  const AuxiliarySpace aux = assemble_p1(m, CoefficientField::identity());
  ASSERT_EQ(aux.num_dofs(), 1);
  EXPECT_NEAR(aux.stiffness.coeff(0, 0), 4.0, 1e-14);
}

TEST(AuxSpace, SymmetricAndLinearInCoefficient) {
  const auto m = lshape(2);
  const auto a = coefficient_preset("exp1");
  const AuxiliarySpace aux = assemble_p1(m, a);
  const AuxiliarySpace aux10 = assemble_p1(m, a.scaled(10.0));
  EXPECT_LE(relative_asymmetry(aux.stiffness), 1e-13);
  EXPECT_LE((to_dense(aux10.stiffness) - 10.0 * to_dense(aux.stiffness)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Prolongation, LowestOrderEntries) {
  const auto m = lshape(1);
  const AuxiliarySpace aux = assemble_p1(m, CoefficientField::identity());
  const TraceSpace trace(m, 0, TraceBasis::Nodal);
  const SparseMatrix p = build_prolongation(trace, aux).matrix;
  for (std::size_t f = 0; f < m->num_faces(); ++f) {
    const int row = trace.face_offset(static_cast<int>(f));
    if (row < 0) continue;
    for (int node = 0; node < aux.num_dofs(); ++node) {
      const int v = aux.dof_to_node[node];
      const auto& e = m->face(static_cast<int>(f));
      const double expected = (v == e[0] || v == e[1]) ? 0.5 : 0.0;
      EXPECT_NEAR(p.coeff(row, node), expected, 1e-14);
    }
  }
}

TEST(Galerkin, ExactForPiecewiseConstantCoefficients) {
  const auto m = lshape(2);
  const auto a = coefficient_preset("exp1");
  const AuxiliarySpace aux = assemble_p1(m, a);
  for (auto [kind, k] : {std::pair{FamilyKind::Type1, 0}, {FamilyKind::Type2, 1}, {FamilyKind::Type3, 1},
                         {FamilyKind::Type4, 0}}) {
    const CondensedSystem sys = assemble_condensed(m, ElementFamily::make(kind, k), a, kZero);
    double asym = 1.0;
    const SparseMatrix gal = galerkin_coarse(sys.A, build_prolongation(sys.trace, aux), &asym);
    EXPECT_LE(asym, 1e-12);
    const Eigen::MatrixXd ref = to_dense(aux.stiffness);
    EXPECT_LE((to_dense(gal) - ref).cwiseAbs().maxCoeff(), 1e-10 * ref.cwiseAbs().maxCoeff());
    EXPECT_LE(compute_Nh(aux.stiffness, gal), 1e-9);
  }
}

TEST(Galerkin, LowestOrderType3IsNotExactButPositive) {
  const auto m = lshape(2);
  const auto a = CoefficientField::identity();
  const AuxiliarySpace aux = assemble_p1(m, a);
  const CondensedSystem sys = assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 0), a, kZero);
  const SparseMatrix gal = galerkin_coarse(sys.A, build_prolongation(sys.trace, aux));
  const double nh = compute_Nh(aux.stiffness, gal);
  EXPECT_GT(nh, 1e-3);
  EXPECT_LT(nh, 1.0);
  for (int s = 0; s < 100; ++s) {
    const Vector x = random_vector(gal.rows(), 100 + s);
    EXPECT_GT(x.dot(gal * x), 0.0);
  }
}

TEST(Prolongation, AdjointConsistency) {
  const auto m = lshape(2);
  const AuxiliarySpace aux = assemble_p1(m, CoefficientField::identity());
  const TraceSpace trace(m, 1, TraceBasis::Nodal);
  const ProlongationMap p = build_prolongation(trace, aux);
  const SparseMatrix gram = trace.mesh_gram();
  for (int s = 0; s < 5; ++s) {
    const Vector v = random_vector(aux.num_dofs(), 2 * s);
    const Vector mu = random_vector(trace.num_dofs(), 2 * s + 1);
    const Vector adj = adjoint_prolongation(p, gram, aux, mu);
    const double lhs = (p.matrix * v).dot(gram * mu);
    const double rhs = adj.dot(aux.mass * v);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Interpolation, ReproducesLinearFunctions) {
  const MeshHierarchy h = build_uniform_hierarchy(build_structured(Domain::UnitSquare), 2);
  const auto a = CoefficientField::identity();
  const AuxiliarySpace c = assemble_p1(h.levels[1], a);
  const AuxiliarySpace f = assemble_p1(h.levels[2], a);
  const SparseMatrix i = p1_interpolation(h, 1, c, f);
  // x (1 - x) y (1 - y) is not linear, but a coarse hat must map to the fine piecewise-linear hat
  Vector v = Vector::Zero(c.num_dofs());
  v[0] = 1.0;
  const Vector w = i * v;
  EXPECT_NEAR(p1_h1_seminorm(f, w), p1_h1_seminorm(c, v), 1e-13);
}
