// Compressed-row kernels. Each parallel kernel has a serial reference that
// the tests compare against bit for bit (row-wise work, no reductions across
// threads) or to roundoff (dot products).
#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hdgmg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double, int>;

enum class Execution { Serial, Parallel };

/// y = A x
void spmv(const SparseMatrix& a, const Vector& x, Vector& y, Execution exec = Execution::Parallel);
void spmv_serial(const SparseMatrix& a, const Vector& x, Vector& y);
void spmv_parallel(const SparseMatrix& a, const Vector& x, Vector& y);

/// r = b - A x
void residual(const SparseMatrix& a, const Vector& x, const Vector& b, Vector& r,
              Execution exec = Execution::Parallel);

/// Deterministic dot product: fixed-size blocks summed in block order.
double dot(const Vector& x, const Vector& y, Execution exec = Execution::Parallel);

/// sqrt(x^T A x)
double energy_norm(const SparseMatrix& a, const Vector& x);

/// Largest |a_ij - a_ji| relative to max |a_ij|.
double relative_asymmetry(const SparseMatrix& a);

/// Dense copy for desk-scale diagnostics.
Eigen::MatrixXd to_dense(const SparseMatrix& a);

/// Diagonal entries; throws if any is zero.
Vector diagonal_checked(const SparseMatrix& a);

/// Number of threads the parallel kernels use (1 without OpenMP).
int kernel_threads();

}  // namespace hdgmg
