// Smoothers R acting on residuals: x = R r approximates A^{-1} r.
#pragma once

#include <memory>
#include <string>

#include <Eigen/SparseCholesky>

#include "hdgmg/sparse.hpp"

namespace hdgmg {

enum class SmootherKind { ForwardGS, BackwardGS, SymmetricGS, Richardson, Exact };

SmootherKind parse_smoother(const std::string& name);
std::string to_string(SmootherKind kind);

struct SmootherConfig {
  SmootherKind kind = SmootherKind::SymmetricGS;
  int sweeps = 1;
  /// Richardson step; <= 0 means 1 / lambda_max(A) estimated on construction.
  double damping = 0.0;
};

/// m sweeps of the chosen relaxation started from zero. The matrix is held
/// by reference and must outlive the smoother.
class Smoother {
 public:
  Smoother(const SparseMatrix& a, SmootherConfig cfg);

  const SmootherConfig& config() const { return cfg_; }
  double damping() const { return damping_; }
  bool symmetric() const;

  Vector apply(const Vector& r) const;
  /// Transpose of apply with respect to the Euclidean product.
  Vector apply_transpose(const Vector& r) const;

  /// In-place Gauss-Seidel sweeps on A x = r.
  void forward_sweep(Vector& x, const Vector& r) const;
  void backward_sweep(Vector& x, const Vector& r) const;

 private:
  Vector run(const Vector& r, bool transpose) const;

  const SparseMatrix& a_;
  SmootherConfig cfg_;
  Vector diag_;
  double damping_ = 0.0;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> exact_;
};

/// Largest eigenvalue of a symmetric positive semidefinite matrix (Lanczos).
double estimate_lambda_max(const SparseMatrix& a);

}  // namespace hdgmg
