#include "hdgmg/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hdgmg {

TwoLevelPreconditioner::TwoLevelPreconditioner(const SparseMatrix& a, const SparseMatrix& prolongation,
                                               const Smoother& smoother, const AuxiliaryCorrector& aux)
    : a_(a), p_(prolongation), pt_(prolongation.transpose()), smoother_(smoother), aux_(aux) {
  if (p_.rows() != a_.rows()) throw std::invalid_argument("two-level: prolongation rows must match A");
  if (p_.cols() != aux_.size()) throw std::invalid_argument("two-level: prolongation columns must match aux space");
}

Vector TwoLevelPreconditioner::aux_correction(const Vector& r, bool transpose) const {
  const Vector rc = pt_ * r;
  const Vector xc = transpose ? aux_.apply_transpose(rc) : aux_.apply(rc);
  return p_ * xc;
}

Vector TwoLevelPreconditioner::apply(const Vector& eta) const {
  if (eta.size() != a_.rows()) throw std::invalid_argument("two-level: size mismatch");
  Vector r;
  Vector mu = smoother_.apply(eta);
  residual(a_, mu, eta, r);
  mu += aux_correction(r, false);
  residual(a_, mu, eta, r);
  mu += aux_correction(r, true);
  residual(a_, mu, eta, r);
  mu += smoother_.apply_transpose(r);
  return mu;
}

SolveResult solve_two_level(const SparseMatrix& a, const Vector& b, const TwoLevelPreconditioner& prec,
                            const Vector& x0, double reduction, int max_iter) {
  if (!(reduction > 0.0 && reduction < 1.0)) throw std::invalid_argument("solve: reduction must lie in (0,1)");
  if (b.size() != a.rows() || x0.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  const bool homogeneous = b.isZero(0.0);
  SolveResult out;
  out.x = x0;

  const auto error_norm = [&](const Vector& x, Vector& r) {
    residual(a, x, b, r);
    if (homogeneous) return energy_norm(a, x);
    return std::sqrt(std::max(0.0, dot(prec.apply(r), r)));
  };

  Vector r;
  const double e0 = error_norm(out.x, r);
  out.history.push_back(e0);
  if (e0 == 0.0) {
    out.converged = true;
    return out;
  }
  for (int it = 1; it <= max_iter; ++it) {
    out.x += prec.apply(r);
    const double e = error_norm(out.x, r);
    out.history.push_back(e);
    out.iterations = it;
    if (e <= reduction * e0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double operator_contraction(const SparseMatrix& a, const LinearMap& corrector, const LinearMap& corrector_t,
                            int dense_limit) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  if (n <= dense_limit) {
    const Eigen::MatrixXd ad = to_dense(a);
    const Eigen::MatrixXd rd = dense_operator(n, corrector);
    const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n) - rd * ad;
    // ||E||_A^2 = lambda_max(E^t A E, A)
    Eigen::MatrixXd g = e.transpose() * ad * e;
    g = 0.5 * (g + g.transpose()).eval();
    const Eigen::VectorXd ev = dense_generalized_eigenvalues(g, ad);
    return std::sqrt(std::max(0.0, ev[n - 1]));
  }
  const auto error = [&](const LinearMap& r, const Vector& x, Vector& y) {
    Vector ax = a * x;
    Vector cx;
    r(ax, cx);
    y = x - cx;
  };
  const auto m = [&](const Vector& x, Vector& y) { y = a * x; };
  if (!corrector_t) {
    const auto t = [&](const Vector& x, Vector& y) { error(corrector, x, y); };
    const ExtremeEigenvalues ex = lanczos_extremes(n, t, m, 300, 1e-8);
    return std::max(std::abs(ex.min), std::abs(ex.max));
  }
  // E* E with E* = I - R^t A the A-adjoint of E
  const auto t = [&](const Vector& x, Vector& y) {
    Vector ex;
    error(corrector, x, ex);
    error(corrector_t, ex, y);
  };
  const ExtremeEigenvalues ex = lanczos_extremes(n, t, m, 300, 1e-8);
  return std::sqrt(std::max(0.0, ex.max));
}

ContractionEstimate estimate_contraction(const TwoLevelPreconditioner& prec, int dense_limit, bool power_check) {
  const SparseMatrix& a = prec.matrix();
  const Eigen::Index n = a.rows();
  ContractionEstimate out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const auto t = [&](const Vector& x, Vector& y) {
    Vector ax;
    spmv(a, x, ax);
    y = x - prec.apply(ax);
  };
  const auto m = [&](const Vector& x, Vector& y) { spmv(a, x, y); };
  const ExtremeEigenvalues ex = lanczos_extremes(n, t, m, 300, 1e-8);
  out.value = std::max(std::abs(ex.min), std::abs(ex.max));
  out.converged = ex.converged;
  if (power_check) {
    const PowerIterationResult pw = power_iteration(n, t, m, 500, 1e-9);
    out.power = pw.value;
    out.last_change = pw.last_change;
  }
  if (n <= dense_limit) {
    const auto corrector = [&](const Vector& x, Vector& y) { y = prec.apply(x); };
    out.dense = operator_contraction(a, corrector, {}, dense_limit);
  }
  return out;
}

}  // namespace hdgmg
