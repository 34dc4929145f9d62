#include <cmath>

#include <Eigen/SparseCholesky>
#include <gtest/gtest.h>

#include "hdgmg/experiment.hpp"
#include "hdgmg/hdg.hpp"

using namespace hdgmg;

namespace {

const ScalarFunction kZero = [](const Point&) { return 0.0; };

std::shared_ptr<const Mesh> reference_triangle() {
  return std::make_shared<const Mesh>(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}},
                                      std::vector<Mesh::Triangle>{{0, 1, 2}});
}

LocalSolver reference_solver(FamilyKind kind, int k) {
  const auto m = reference_triangle();
  return LocalSolver::build(Scheme::HDG, ElementGeometry::from_mesh(*m, 0), ElementFamily::make(kind, k),
                            CoefficientField::identity(), 0);
}

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  return (to_dense(a) - to_dense(b)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(LocalSolver, ConstantTraceGivesConstantState) {
  const LocalSolver s = reference_solver(FamilyKind::Type3, 0);
  const ElementGeometry g = ElementGeometry::from_mesh(*reference_triangle(), 0);
  Eigen::VectorXd lambda(3);
  for (int f = 0; f < 3; ++f) lambda[f] = std::sqrt(g.face_length[f]);
  const LocalState st = s.solve(lambda);
  EXPECT_NEAR(st.sigma.norm(), 0.0, 1e-13);
  EXPECT_NEAR(s.eval_u(st.u, g.centroid), 1.0, 1e-13);
}

TEST(LocalSolver, SingleEdgeTrace) {
  const LocalSolver s = reference_solver(FamilyKind::Type3, 0);
  const ElementGeometry g = ElementGeometry::from_mesh(*reference_triangle(), 0);
  const Eigen::VectorXd lambda = Eigen::Vector3d(1.0, 0.0, 0.0);
  const LocalState st = s.solve(lambda);
  ASSERT_EQ(st.sigma.size(), 2);
  EXPECT_NEAR(st.sigma[0], 0.0, 1e-13);
  EXPECT_NEAR(st.sigma[1], -2.0, 1e-13);
  EXPECT_NEAR(s.eval_u(st.u, g.centroid), (2.0 - std::sqrt(2.0)) / 2.0, 1e-13);
  EXPECT_NEAR(s.energy()(0, 0), 2.0 + std::sqrt(2.0) / 2.0, 1e-13);
}

TEST(LocalSolver, RaviartThomasReproducesLinearGradient) {
  const LocalSolver s = reference_solver(FamilyKind::Type1, 0);
  const ElementGeometry g = ElementGeometry::from_mesh(*reference_triangle(), 0);
  const Eigen::VectorXd lambda = face_project(0, g, [](const Point& p) { return p.x; });
  const LocalState st = s.solve(lambda);
  // sigma in the W basis evaluated at two points must equal (1, 0)
  const ElementFamily fam = ElementFamily::make(FamilyKind::Type1, 0);
  for (const Point p : {Point{0.2, 0.2}, Point{0.6, 0.1}}) {
    VectorBasisValues v;
    eval_vector(fam, g, p, v);
    EXPECT_NEAR(v.vx.dot(st.sigma), 1.0, 1e-12);
    EXPECT_NEAR(v.vy.dot(st.sigma), 0.0, 1e-12);
  }
}

TEST(LocalSolver, EnergyIsSymmetricPositiveSemidefinite) {
  for (auto [kind, k] : {std::pair{FamilyKind::Type1, 0}, {FamilyKind::Type2, 1}, {FamilyKind::Type3, 0},
                         {FamilyKind::Type3, 1}, {FamilyKind::Type4, 0}}) {
    const LocalSolver s = reference_solver(kind, k);
    const Eigen::MatrixXd& e = s.energy();
    EXPECT_NEAR((e - e.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Assembly, ZeroSourceGivesZeroLoad) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(build_structured(Domain::LShape)));
  const CondensedSystem sys = assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 1),
                                                 coefficient_preset("exp1"), kZero);
  EXPECT_EQ(sys.b.norm(), 0.0);
  EXPECT_LE(relative_asymmetry(sys.A), 1e-13);
  const Recovery rec = recover_interior(sys, Vector::Zero(sys.num_dofs()), kZero);
  for (const LocalState& st : rec.states) {
    EXPECT_EQ(st.u.norm(), 0.0);
    EXPECT_EQ(st.sigma.norm(), 0.0);
  }
}

TEST(Assembly, ParallelMatchesSerialBitwise) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(refine_uniform(build_structured(Domain::LShape))));
  AssemblyOptions serial;
  serial.exec = Execution::Serial;
  const auto a = coefficient_preset("exp1");
  const ScalarFunction f = [](const Point& p) { return std::sin(p.x) + p.y; };
  const CondensedSystem s1 = assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 1), a, f, serial);
  const CondensedSystem s2 = assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 1), a, f);
  EXPECT_EQ(max_abs_difference(s1.A, s2.A), 0.0);
  EXPECT_TRUE(s1.b == s2.b);
}

TEST(Assembly, SparseMatchesDenseOnTwoElements) {
  const auto two = std::make_shared<const Mesh>(build_structured(Domain::UnitSquare));
  for (auto [kind, k] : {std::pair{FamilyKind::Type1, 0}, {FamilyKind::Type2, 1}, {FamilyKind::Type3, 0},
                         {FamilyKind::Type3, 1}, {FamilyKind::Type4, 0}}) {
    AssemblyOptions opts;
    opts.all_faces_interior = true;
    const CondensedSystem sys =
        assemble_condensed(two, ElementFamily::make(kind, k), CoefficientField::identity(), kZero, opts);
    const Eigen::MatrixXd dense = assemble_dense_reference(sys);
    EXPECT_LE((to_dense(sys.A) - dense).cwiseAbs().maxCoeff(), 1e-12 * dense.cwiseAbs().maxCoeff());
  }
}

TEST(Assembly, RecoveryResidualAndConvergence) {
  // -div grad u = f with u = sin(pi x) sin(pi y) on the unit square
  const double pi = std::acos(-1.0);
  const ScalarFunction exact = [pi](const Point& p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
  const ScalarFunction f = [&](const Point& p) { return 2.0 * pi * pi * exact(p); };
  Mesh mesh = build_structured(Domain::UnitSquare);
  double prev = 0.0;
  for (int l = 0; l < 5; ++l) {
    mesh = refine_uniform(mesh);
    const auto m = std::make_shared<const Mesh>(mesh);
    const CondensedSystem sys =
        assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 1), CoefficientField::identity(), f);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol{Eigen::SparseMatrix<double>(sys.A)};
    const Vector lambda = chol.solve(sys.b);
    const Recovery rec = recover_interior(sys, lambda, f);
    const HdgResidual r = hdg_residual(sys, lambda, f, rec);
    EXPECT_LE(r.local, 1e-10);
    EXPECT_LE(r.global, 1e-10);
    const double err = l2_error(sys, rec, exact);
    if (l > 1) EXPECT_LT(err, 0.3 * prev);
    prev = err;
  }
}

TEST(WeakGalerkin, WeakGradient) {
  const ElementGeometry g = ElementGeometry::from_mesh(*reference_triangle(), 0);
  const Eigen::MatrixXd grad = wg_boundary_weak_gradient(g);
  Eigen::Vector3d ones;
  for (int f = 0; f < 3; ++f) ones[f] = std::sqrt(g.face_length[f]);
  EXPECT_NEAR((grad * ones).norm(), 0.0, 1e-14);
  const Eigen::Vector2d e0 = grad * Eigen::Vector3d(1.0, 0.0, 0.0);
  EXPECT_NEAR(e0[0], 0.0, 1e-14);
  EXPECT_NEAR(e0[1], -2.0, 1e-14);
}

TEST(WeakGalerkin, MatchesLowestOrderHdg) {
  const auto m = std::make_shared<const Mesh>(refine_uniform(refine_uniform(build_structured(Domain::LShape))));
  const auto a = coefficient_preset("exp1");
  const CondensedSystem h = assemble_condensed(m, ElementFamily::make(FamilyKind::Type3, 0), a, kZero);
  const CondensedSystem w = wg_assemble(m, ElementFamily::make(FamilyKind::WG, 0), a, kZero);
  EXPECT_LE(max_abs_difference(h.A, w.A), 1e-11 * to_dense(h.A).cwiseAbs().maxCoeff());
}
