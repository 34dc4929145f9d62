// Extreme eigenvalues of operators that are self-adjoint in a given inner
// product. Generalized problems A x = mu B x enter as T = B^{-1} A with M = B.
#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "hdgmg/sparse.hpp"

namespace hdgmg {

using LinearMap = std::function<void(const Vector& in, Vector& out)>;

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
  bool converged = false;
  double residual = 0.0;  // largest Ritz residual bound of the two extremes, relative
};

/// Lanczos with full reorthogonalization in the M inner product.
ExtremeEigenvalues lanczos_extremes(Eigen::Index n, const LinearMap& apply_t, const LinearMap& apply_m,
                                    int max_steps = 300, double tol = 1e-8, std::uint64_t seed = kDefaultSeed);

struct PowerIterationResult {
  double value = 0.0;  // largest |eigenvalue|
  int iterations = 0;
  bool converged = false;
  double last_change = 0.0;
};

/// Power iteration on an M-self-adjoint operator. Stops when the relative
/// change of the norm ratio falls below tol.
PowerIterationResult power_iteration(Eigen::Index n, const LinearMap& apply_t, const LinearMap& apply_m,
                                     int max_iter = 500, double tol = 1e-9, std::uint64_t seed = kDefaultSeed);

/// Eigenvalues of A x = mu B x (A symmetric, B SPD), ascending.
Eigen::VectorXd dense_generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Dense matrix of a linear map by applying it to unit vectors.
Eigen::MatrixXd dense_operator(Eigen::Index n, const LinearMap& map);

/// Random vector with entries uniform in [-1, 1].
Vector random_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace hdgmg
