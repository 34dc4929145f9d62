#include "hdgmg/smoothers.hpp"

#include <stdexcept>

#include "hdgmg/eigen_estimates.hpp"

namespace hdgmg {

SmootherKind parse_smoother(const std::string& name) {
  if (name == "gs" || name == "forward-gs") return SmootherKind::ForwardGS;
  if (name == "backward-gs") return SmootherKind::BackwardGS;
  if (name == "sym-gs" || name == "symmetric-gs") return SmootherKind::SymmetricGS;
  if (name == "richardson") return SmootherKind::Richardson;
  if (name == "exact") return SmootherKind::Exact;
  throw std::invalid_argument("unknown smoother '" + name + "'");
}

std::string to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::ForwardGS: return "forward-gs";
    case SmootherKind::BackwardGS: return "backward-gs";
    case SmootherKind::SymmetricGS: return "sym-gs";
    case SmootherKind::Richardson: return "richardson";
    case SmootherKind::Exact: return "exact";
  }
  return "?";
}

double estimate_lambda_max(const SparseMatrix& a) {
  const auto t = [&](const Vector& x, Vector& y) { y = a * x; };
  const auto id = [](const Vector& x, Vector& y) { y = x; };
  return lanczos_extremes(a.rows(), t, id, 200, 1e-6).max;
}

Smoother::Smoother(const SparseMatrix& a, SmootherConfig cfg) : a_(a), cfg_(cfg) {
  if (a.rows() != a.cols()) throw std::invalid_argument("smoother: matrix must be square");
  if (cfg_.sweeps < 1) throw std::invalid_argument("smoother: sweeps must be >= 1");
  switch (cfg_.kind) {
    case SmootherKind::ForwardGS:
    case SmootherKind::BackwardGS:
    case SmootherKind::SymmetricGS:
      diag_ = diagonal_checked(a);
      break;
    case SmootherKind::Richardson:
      damping_ = cfg_.damping > 0.0 ? cfg_.damping : 1.0 / estimate_lambda_max(a);
      break;
    case SmootherKind::Exact: {
      exact_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(Eigen::SparseMatrix<double>(a));
      if (exact_->info() != Eigen::Success) throw std::runtime_error("smoother: factorization failed");
      break;
    }
  }
}

bool Smoother::symmetric() const {
  return cfg_.kind == SmootherKind::SymmetricGS || cfg_.kind == SmootherKind::Richardson ||
         cfg_.kind == SmootherKind::Exact;
}

void Smoother::forward_sweep(Vector& x, const Vector& r) const {
  const int n = static_cast<int>(a_.rows());
  const int* outer = a_.outerIndexPtr();
  const int* inner = a_.innerIndexPtr();
  const double* val = a_.valuePtr();
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    for (int p = outer[i]; p < outer[i + 1]; ++p) {
      if (inner[p] != i) s -= val[p] * x[inner[p]];
    }
    x[i] = s / diag_[i];
  }
}

void Smoother::backward_sweep(Vector& x, const Vector& r) const {
  const int n = static_cast<int>(a_.rows());
  const int* outer = a_.outerIndexPtr();
  const int* inner = a_.innerIndexPtr();
  const double* val = a_.valuePtr();
  for (int i = n - 1; i >= 0; --i) {
    double s = r[i];
    for (int p = outer[i]; p < outer[i + 1]; ++p) {
      if (inner[p] != i) s -= val[p] * x[inner[p]];
    }
    x[i] = s / diag_[i];
  }
}

// For symmetric A, the transpose of m forward sweeps is m backward sweeps.
Vector Smoother::run(const Vector& r, bool transpose) const {
  if (r.size() != a_.rows()) throw std::invalid_argument("smoother: size mismatch");
  Vector x = Vector::Zero(r.size());
  switch (cfg_.kind) {
    case SmootherKind::ForwardGS:
    case SmootherKind::BackwardGS: {
      const bool forward = (cfg_.kind == SmootherKind::ForwardGS) != transpose;
      for (int s = 0; s < cfg_.sweeps; ++s) forward ? forward_sweep(x, r) : backward_sweep(x, r);
      break;
    }
    case SmootherKind::SymmetricGS:
      for (int s = 0; s < cfg_.sweeps; ++s) {
        forward_sweep(x, r);
        backward_sweep(x, r);
      }
      break;
    case SmootherKind::Richardson:
      for (int s = 0; s < cfg_.sweeps; ++s) x += damping_ * (r - a_ * x);
      break;
    case SmootherKind::Exact:
      x = exact_->solve(r);
      break;
  }
  return x;
}

Vector Smoother::apply(const Vector& r) const { return run(r, false); }
Vector Smoother::apply_transpose(const Vector& r) const { return run(r, true); }

}  // namespace hdgmg
