// Two-level preconditioner B: smoother, auxiliary correction, its adjoint,
// adjoint smoother. Also the stationary iteration built on it.
#pragma once

#include <vector>

#include "hdgmg/eigen_estimates.hpp"
#include "hdgmg/multigrid.hpp"
#include "hdgmg/smoothers.hpp"
#include "hdgmg/sparse.hpp"

namespace hdgmg {

/// All referenced objects must outlive the preconditioner.
class TwoLevelPreconditioner {
 public:
  TwoLevelPreconditioner(const SparseMatrix& a, const SparseMatrix& prolongation, const Smoother& smoother,
                         const AuxiliaryCorrector& aux);

  int size() const { return static_cast<int>(a_.rows()); }
  const SparseMatrix& matrix() const { return a_; }
  Vector apply(const Vector& eta) const;

 private:
  Vector aux_correction(const Vector& r, bool transpose) const;

  const SparseMatrix& a_;
  const SparseMatrix& p_;
  SparseMatrix pt_;
  const Smoother& smoother_;
  const AuxiliaryCorrector& aux_;
};

struct SolveResult {
  Vector x;
  int iterations = 0;
  bool converged = false;
  /// Energy norm of the error estimate per iterate, starting with the initial one.
  std::vector<double> history;
};

/// x_j = x_{j-1} + B (b - A x_{j-1}). For b = 0 the error is the iterate, so
/// the stop test is exact; otherwise <B r, r>^{1/2} stands in for it.
SolveResult solve_two_level(const SparseMatrix& a, const Vector& b, const TwoLevelPreconditioner& prec,
                            const Vector& x0, double reduction = 1e-8, int max_iter = 200);

struct ContractionEstimate {
  double value = 0.0;      // ||I - B A||_A, Lanczos
  double power = -1.0;     // power-iteration cross-check, -1 when skipped
  double dense = -1.0;     // dense generalized eigensolve, -1 when skipped
  bool converged = false;
  double last_change = 0.0;
};

/// Largest |eigenvalue| of I - B A in the A inner product. The power
/// iteration and dense cross-checks run only when requested.
ContractionEstimate estimate_contraction(const TwoLevelPreconditioner& prec, int dense_limit = 600,
                                         bool power_check = true);

/// ||I - R A||_A for an SPD matrix A. `corrector_t` applies R^t; leave it
/// empty when R is symmetric.
double operator_contraction(const SparseMatrix& a, const LinearMap& corrector, const LinearMap& corrector_t = {},
                            int dense_limit = 600);

}  // namespace hdgmg
