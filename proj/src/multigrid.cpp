#include "hdgmg/multigrid.hpp"

#include <stdexcept>

namespace hdgmg {

ExactAuxiliarySolve::ExactAuxiliarySolve(const SparseMatrix& a) : n_(static_cast<int>(a.rows())) {
  if (a.rows() != a.cols()) throw std::invalid_argument("exact solve: matrix must be square");
  if (n_ > 0) {
    llt_.compute(Eigen::SparseMatrix<double>(a));
    if (llt_.info() != Eigen::Success) throw std::runtime_error("exact solve: factorization failed");
  }
}

Vector ExactAuxiliarySolve::apply(const Vector& r) const {
  if (r.size() != n_) throw std::invalid_argument("exact solve: size mismatch");
  if (n_ == 0) return r;
  return llt_.solve(r);
}

CycleKind parse_cycle(const std::string& name) {
  if (name == "symmetric" || name == "v") return CycleKind::Symmetric;
  if (name == "pre" || name == "pre-smoothing") return CycleKind::PreSmoothing;
  throw std::invalid_argument("unknown cycle '" + name + "'");
}

std::string to_string(CycleKind kind) { return kind == CycleKind::Symmetric ? "symmetric" : "pre-smoothing"; }

VCycle::VCycle(std::vector<SparseMatrix> matrices, std::vector<SparseMatrix> interpolations, int m1, CycleKind kind)
    : matrices_(std::move(matrices)), interp_(std::move(interpolations)), m1_(m1), kind_(kind) {
  if (matrices_.empty()) throw std::invalid_argument("vcycle: hierarchy of depth 0");
  if (interp_.size() + 1 != matrices_.size()) throw std::invalid_argument("vcycle: need one interpolation per level gap");
  if (m1_ < 1) throw std::invalid_argument("vcycle: m1 must be >= 1");
  for (std::size_t l = 0; l < interp_.size(); ++l) {
    if (interp_[l].cols() != matrices_[l].rows() || interp_[l].rows() != matrices_[l + 1].rows())
      throw std::invalid_argument("vcycle: interpolation size mismatch");
  }
  diag_.resize(matrices_.size());
  for (std::size_t l = 1; l < matrices_.size(); ++l) diag_[l] = diagonal_checked(matrices_[l]);
  if (matrices_[0].rows() > 0) {
    coarse_.compute(Eigen::SparseMatrix<double>(matrices_[0]));
    if (coarse_.info() != Eigen::Success) throw std::runtime_error("vcycle: coarse factorization failed");
  }
}

void VCycle::sweep(int level, Vector& x, const Vector& r, bool forward) const {
  const SparseMatrix& a = matrices_[level];
  const Vector& d = diag_[level];
  const int n = static_cast<int>(a.rows());
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const double* val = a.valuePtr();
  for (int step = 0; step < n; ++step) {
    const int i = forward ? step : n - 1 - step;
    double s = r[i];
    for (int p = outer[i]; p < outer[i + 1]; ++p) {
      if (inner[p] != i) s -= val[p] * x[inner[p]];
    }
    x[i] = s / d[i];
  }
}

Vector VCycle::cycle(int level, const Vector& r, Pass pass) const {
  if (level == 0) return matrices_[0].rows() > 0 ? Vector(coarse_.solve(r)) : r;
  const SparseMatrix& a = matrices_[level];
  const SparseMatrix& p = interp_[level - 1];
  Vector x = Vector::Zero(r.size());
  if (pass != Pass::Up) {
    for (int s = 0; s < m1_; ++s) sweep(level, x, r, true);
  }
  const Vector rc = p.transpose() * (r - a * x);
  x += p * cycle(level - 1, rc, pass);
  if (pass != Pass::Down) {
    for (int s = 0; s < m1_; ++s) sweep(level, x, r, false);
  }
  return x;
}

Vector VCycle::apply(const Vector& r) const {
  if (r.size() != size()) throw std::invalid_argument("vcycle: size mismatch");
  return cycle(depth() - 1, r, kind_ == CycleKind::Symmetric ? Pass::Full : Pass::Down);
}

Vector VCycle::apply_transpose(const Vector& r) const {
  if (r.size() != size()) throw std::invalid_argument("vcycle: size mismatch");
  return cycle(depth() - 1, r, kind_ == CycleKind::Symmetric ? Pass::Full : Pass::Up);
}

std::unique_ptr<VCycle> build_vcycle(const MeshHierarchy& hier, std::size_t finest, const CoefficientField& a, int m1,
                                     CycleKind kind, AuxCoefficient mode) {
  if (finest >= hier.depth()) throw std::invalid_argument("build_vcycle: level out of range");
  std::vector<AuxiliarySpace> spaces;
  std::vector<SparseMatrix> mats;
  std::vector<SparseMatrix> interps;
  for (std::size_t l = 0; l <= finest; ++l) {
    spaces.push_back(assemble_p1(hier.levels[l], a, mode));
    mats.push_back(spaces.back().stiffness);
    if (l > 0) interps.push_back(p1_interpolation(hier, l - 1, spaces[l - 1], spaces[l]));
  }
  return std::make_unique<VCycle>(std::move(mats), std::move(interps), m1, kind);
}

}  // namespace hdgmg
