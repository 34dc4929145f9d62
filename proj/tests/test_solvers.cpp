#include <cmath>

#include <gtest/gtest.h>

#include "hdgmg/auxspace.hpp"
#include "hdgmg/experiment.hpp"
#include "hdgmg/multigrid.hpp"
#include "hdgmg/smoothers.hpp"
#include "hdgmg/two_level.hpp"

using namespace hdgmg;

namespace {

const ScalarFunction kZero = [](const Point&) { return 0.0; };

SparseMatrix from_dense(const Eigen::MatrixXd& d) { return d.sparseView(); }

SparseMatrix two_by_two() {
  Eigen::Matrix2d a;
  a << 2, -1, -1, 2;
  return from_dense(a);
}

// Exp1-style setup on one L-shape level.
struct LevelSetup {
  MeshHierarchy hier;
  CondensedSystem sys;
  AuxiliarySpace aux;
  ProlongationMap p;
  LevelSetup(int level, int k)
      : hier(build_uniform_hierarchy(build_structured(Domain::LShape), level)),
        sys(assemble_condensed(hier.levels[level], ElementFamily::make(FamilyKind::Type3, k),
                               coefficient_preset("exp1"), kZero)),
        aux(assemble_p1(hier.levels[level], coefficient_preset("exp1"))),
        p(build_prolongation(sys.trace, aux)) {}
};

}  // namespace

TEST(Smoother, ForwardGaussSeidel) {
  const SparseMatrix a = two_by_two();
  const Smoother s(a, {SmootherKind::ForwardGS, 1, 0.0});
  const Vector x = s.apply(Vector::Ones(2));
  EXPECT_NEAR(x[0], 0.5, 1e-15);
  EXPECT_NEAR(x[1], 0.75, 1e-15);
}

TEST(Smoother, SymmetricGaussSeidel) {
  const SparseMatrix a = two_by_two();
  const Smoother s(a, {SmootherKind::SymmetricGS, 1, 0.0});
  const Vector x = s.apply(Vector::Ones(2));
  EXPECT_NEAR(x[0], 0.875, 1e-15);
  EXPECT_NEAR(x[1], 0.75, 1e-15);
  EXPECT_TRUE(s.symmetric());
}

TEST(Smoother, TransposeIsAdjoint) {
  LevelSetup st(1, 1);
  for (SmootherKind kind : {SmootherKind::ForwardGS, SmootherKind::SymmetricGS, SmootherKind::Richardson}) {
    const Smoother s(st.sys.A, {kind, 2, 0.0});
    const Vector x = random_vector(st.sys.num_dofs(), 1);
    const Vector y = random_vector(st.sys.num_dofs(), 2);
    EXPECT_NEAR(s.apply(x).dot(y), x.dot(s.apply_transpose(y)), 1e-12);
  }
}

TEST(Smoother, ParseNames) {
  EXPECT_EQ(parse_smoother("gs"), SmootherKind::ForwardGS);
  EXPECT_EQ(parse_smoother("sym-gs"), SmootherKind::SymmetricGS);
  EXPECT_THROW(parse_smoother("jacobi"), std::invalid_argument);
}

TEST(Contraction, RichardsonClosedForm) {
  Eigen::Matrix2d d;
  d << 1, 0, 0, 2;
  const SparseMatrix a = from_dense(d);
  const auto r = [](const Vector& x, Vector& y) { y = 0.5 * x; };
  EXPECT_NEAR(operator_contraction(a, r), 0.5, 1e-12);
}

TEST(VCycle, DepthOneIsExact) {
  const MeshHierarchy h = build_uniform_hierarchy(build_structured(Domain::LShape), 1);
  const auto a = coefficient_preset("exp1");
  const auto vc = build_vcycle(h, 0, a, 1);
  const AuxiliarySpace aux = assemble_p1(h.levels[0], a);
  const Vector r = random_vector(aux.num_dofs(), 5);
  const Vector x = vc->apply(r);
  EXPECT_NEAR((aux.stiffness * x - r).norm(), 0.0, 1e-12);
}

TEST(VCycle, ContractionDecreasesWithSweeps) {
  const MeshHierarchy h = build_uniform_hierarchy(build_structured(Domain::LShape), 3);
  const auto a = coefficient_preset("exp1");
  const AuxiliarySpace aux = assemble_p1(h.levels[3], a);
  double prev = 1.0;
  for (int m1 = 1; m1 <= 3; ++m1) {
    const auto vc = build_vcycle(h, 3, a, m1);
    const auto r = [&](const Vector& x, Vector& y) { y = vc->apply(x); };
    const auto rt = [&](const Vector& x, Vector& y) { y = vc->apply_transpose(x); };
    const double c = operator_contraction(aux.stiffness, r, rt);
    EXPECT_LT(c, 1.0);
    EXPECT_LE(c, prev + 1e-12);
    prev = c;
  }
}

TEST(TwoLevel, ExactSmootherGivesZeroContraction) {
  LevelSetup st(1, 0);
  const Smoother exact(st.sys.A, {SmootherKind::Exact, 1, 0.0});
  const ExactAuxiliarySolve aux(st.aux.stiffness);
  const TwoLevelPreconditioner b(st.sys.A, st.p.matrix, exact, aux);
  EXPECT_LE(estimate_contraction(b).value, 1e-10);
}

TEST(TwoLevel, SymmetricAndContracting) {
  for (int k = 0; k <= 1; ++k) {
    LevelSetup st(2, k);
    const auto vc = build_vcycle(st.hier, 2, coefficient_preset("exp1"), 1);
    const Smoother s(st.sys.A, {SmootherKind::SymmetricGS, 1, 0.0});
    const TwoLevelPreconditioner b(st.sys.A, st.p.matrix, s, *vc);
    const int n = st.sys.num_dofs();
    for (int i = 0; i < 50; ++i) {
      const Vector x = random_vector(n, 2 * i);
      const Vector y = random_vector(n, 2 * i + 1);
      EXPECT_NEAR(b.apply(x).dot(y), x.dot(b.apply(y)), 1e-11 * b.apply(x).norm() * y.norm());
    }
    const ContractionEstimate c = estimate_contraction(b, 600, true);
    EXPECT_LT(c.value, 1.0);
    if (c.dense >= 0.0) EXPECT_NEAR(c.value, c.dense, 1e-6);
  }
}

TEST(TwoLevel, ZeroDataNeedsNoIterations) {
  LevelSetup st(1, 0);
  const auto vc = build_vcycle(st.hier, 1, coefficient_preset("exp1"), 1);
  const Smoother s(st.sys.A, {SmootherKind::SymmetricGS, 1, 0.0});
  const TwoLevelPreconditioner b(st.sys.A, st.p.matrix, s, *vc);
  const Vector zero = Vector::Zero(st.sys.num_dofs());
  const SolveResult r = solve_two_level(st.sys.A, zero, b, zero);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.converged);
}

TEST(TwoLevel, SolvesLoadedProblem) {
  LevelSetup st(2, 1);
  const auto vc = build_vcycle(st.hier, 2, coefficient_preset("exp1"), 1);
  const Smoother s(st.sys.A, {SmootherKind::SymmetricGS, 1, 0.0});
  const TwoLevelPreconditioner b(st.sys.A, st.p.matrix, s, *vc);
  const Vector rhs = random_vector(st.sys.num_dofs(), 9);
  const SolveResult r = solve_two_level(st.sys.A, rhs, b, Vector::Zero(rhs.size()), 1e-10);
  ASSERT_TRUE(r.converged);
  EXPECT_LE((st.sys.A * r.x - rhs).norm(), 1e-7 * rhs.norm());
}

TEST(TwoLevel, FirstExperimentCoarsestCell) {
  // k=0, m0=1, m1=1, T1, x0 = 1, b = 0: the reference count is 19
  LevelSetup st(1, 0);
  const auto vc = build_vcycle(st.hier, 1, coefficient_preset("exp1"), 1);
  const Smoother s(st.sys.A, {SmootherKind::SymmetricGS, 1, 0.0});
  const TwoLevelPreconditioner b(st.sys.A, st.p.matrix, s, *vc);
  const int n = st.sys.num_dofs();
  const SolveResult r = solve_two_level(st.sys.A, Vector::Zero(n), b, Vector::Ones(n));
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.iterations, 5);
  EXPECT_LT(r.iterations, 30);
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LT(r.history[i], r.history[i - 1]);
}
