#include "hdgmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hdgmg {

namespace {
constexpr Eigen::Index kDotBlock = 4096;
}

void spmv_serial(const SparseMatrix& a, const Vector& x, Vector& y) {
  const Eigen::Index n = a.rows();
  y.resize(n);
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const double* val = a.valuePtr();
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = outer[i]; p < outer[i + 1]; ++p) s += val[p] * x[inner[p]];
    y[i] = s;
  }
}

void spmv_parallel(const SparseMatrix& a, const Vector& x, Vector& y) {
  const Eigen::Index n = a.rows();
  y.resize(n);
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const double* val = a.valuePtr();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = outer[i]; p < outer[i + 1]; ++p) s += val[p] * x[inner[p]];
    y[i] = s;
  }
}

void spmv(const SparseMatrix& a, const Vector& x, Vector& y, Execution exec) {
  if (!a.isCompressed()) throw std::invalid_argument("spmv requires a compressed matrix");
  if (x.size() != a.cols()) throw std::invalid_argument("spmv dimension mismatch");
  if (exec == Execution::Parallel) {
    spmv_parallel(a, x, y);
  } else {
    spmv_serial(a, x, y);
  }
}

void residual(const SparseMatrix& a, const Vector& x, const Vector& b, Vector& r, Execution exec) {
  spmv(a, x, r, exec);
  r = b - r;
}

double dot(const Vector& x, const Vector& y, Execution exec) {
  if (x.size() != y.size()) throw std::invalid_argument("dot dimension mismatch");
  const Eigen::Index n = x.size();
  const Eigen::Index nb = (n + kDotBlock - 1) / kDotBlock;
  std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
  auto block = [&](Eigen::Index b) {
    const Eigen::Index lo = b * kDotBlock;
    const Eigen::Index hi = std::min(n, lo + kDotBlock);
    double s = 0.0;
    for (Eigen::Index i = lo; i < hi; ++i) s += x[i] * y[i];
    partial[static_cast<std::size_t>(b)] = s;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index b = 0; b < nb; ++b) block(b);
  } else {
    for (Eigen::Index b = 0; b < nb; ++b) block(b);
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

double energy_norm(const SparseMatrix& a, const Vector& x) {
  Vector ax;
  spmv(a, x, ax);
  return std::sqrt(std::max(0.0, dot(x, ax)));
}

double relative_asymmetry(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  const double scale = a.coeffs().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const SparseMatrix d = a - at;
  return d.nonZeros() ? d.coeffs().cwiseAbs().maxCoeff() / scale : 0.0;
}

Eigen::MatrixXd to_dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

Vector diagonal_checked(const SparseMatrix& a) {
  Vector d = a.diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0) throw std::runtime_error("zero diagonal entry in row " + std::to_string(i));
  }
  return d;
}

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hdgmg
