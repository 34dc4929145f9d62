// Auxiliary correctors R~ for the P1 problem: exact solve or geometric V-cycle.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>

#include "hdgmg/auxspace.hpp"
#include "hdgmg/sparse.hpp"

namespace hdgmg {

class AuxiliaryCorrector {
 public:
  virtual ~AuxiliaryCorrector() = default;
  virtual int size() const = 0;
  virtual Vector apply(const Vector& r) const = 0;
  virtual Vector apply_transpose(const Vector& r) const = 0;
};

/// R~ = A~^{-1} by sparse Cholesky.
class ExactAuxiliarySolve : public AuxiliaryCorrector {
 public:
  explicit ExactAuxiliarySolve(const SparseMatrix& a);
  int size() const override { return n_; }
  Vector apply(const Vector& r) const override;
  Vector apply_transpose(const Vector& r) const override { return apply(r); }

 private:
  int n_ = 0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> llt_;
};

enum class CycleKind {
  Symmetric,      // V(m1, m1): m1 forward sweeps down, m1 backward sweeps up
  PreSmoothing,   // m1 forward sweeps down only; the transpose smooths on the way up
};

CycleKind parse_cycle(const std::string& name);
std::string to_string(CycleKind kind);

/// Geometric V-cycle over a nested P1 hierarchy with an exact coarsest solve.
/// Levels are ordered coarsest first; the finest matrix is the one R~ targets.
class VCycle : public AuxiliaryCorrector {
 public:
  VCycle(std::vector<SparseMatrix> matrices, std::vector<SparseMatrix> interpolations, int m1,
         CycleKind kind = CycleKind::PreSmoothing);

  int size() const override { return static_cast<int>(matrices_.back().rows()); }
  int depth() const { return static_cast<int>(matrices_.size()); }
  const SparseMatrix& matrix(int level) const { return matrices_[level]; }
  Vector apply(const Vector& r) const override;
  Vector apply_transpose(const Vector& r) const override;

 private:
  enum class Pass { Full, Down, Up };
  Vector cycle(int level, const Vector& r, Pass pass) const;
  void sweep(int level, Vector& x, const Vector& r, bool forward) const;

  std::vector<SparseMatrix> matrices_;
  std::vector<SparseMatrix> interp_;  // interp_[l]: level l -> level l+1
  std::vector<Vector> diag_;
  int m1_ = 1;
  CycleKind kind_ = CycleKind::Symmetric;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> coarse_;
};

/// P1 matrices on levels 0..finest of `hier` with nodal interpolation between them.
std::unique_ptr<VCycle> build_vcycle(const MeshHierarchy& hier, std::size_t finest, const CoefficientField& a,
                                     int m1, CycleKind kind = CycleKind::PreSmoothing,
                                     AuxCoefficient mode = AuxCoefficient::Exact);

}  // namespace hdgmg
