// Diagnostics for the mesh-dependent norms, norm equivalences, coarse-space
// quality and smoother bounds. Flat key-value reports in text or JSON.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hdgmg/auxspace.hpp"
#include "hdgmg/eigen_estimates.hpp"
#include "hdgmg/hdg.hpp"
#include "hdgmg/multigrid.hpp"
#include "hdgmg/smoothers.hpp"

namespace hdgmg {

// ---------------------------------------------------------------------------
// Mesh-dependent norms

struct ElementNorms {
  double boundary_l2_sq = 0.0;  // ||lambda||^2_{dT}
  double mean = 0.0;            // m_T(lambda)
  double seminorm_sq = 0.0;     // h_T^{-1} ||lambda - m_T||^2_{dT}
};

ElementNorms element_norms(const TraceSpace& trace, int t, const Vector& lambda);

struct MeshNorms {
  double h_norm = 0.0;      // <lambda, lambda>_h^{1/2}
  double h_seminorm = 0.0;  // (sum_T |||lambda|||^2_{h,dT})^{1/2}
  std::vector<double> element_seminorm;
  std::vector<double> element_mean;
};

MeshNorms mesh_norms(const TraceSpace& trace, const Vector& lambda);

/// Matrix of sum_T |||.|||^2_{h,dT} in global trace coordinates.
SparseMatrix seminorm_matrix(const TraceSpace& trace);
/// Matrix of sum_T h_T^{-2} ||.||^2_{h,dT} = sum_T h_T^{-1} ||.||^2_{dT}.
SparseMatrix inverse_scaled_boundary_matrix(const TraceSpace& trace);

// ---------------------------------------------------------------------------
// Spectral diagnostics

struct EquivalenceRatios {
  double c_min = 0.0;
  double c_max = 0.0;
  bool dense = true;
};

/// Extreme generalized eigenvalues of a_h against the seminorm sum.
EquivalenceRatios check_assumption1(const CondensedSystem& sys, int dense_limit = 3000);

/// max |1 - mu| over A_gal v = mu A_aux v.
double compute_Nh(const SparseMatrix& aux_stiffness, const SparseMatrix& galerkin, int dense_limit = 600);

struct MhReport {
  double Mh = 0.0;
  double admissibility = 0.0;  // sqrt((1+N)/(1-N)) ((1+N) M + N); inf when N >= 1
  bool admissible = false;
};

MhReport compute_Mh(const SparseMatrix& aux_stiffness, const AuxiliaryCorrector& corrector, double Nh,
                    int dense_limit = 600);

// ---------------------------------------------------------------------------
// Averaging operator P_h: node value = mean of m_T over the elements around it

SparseMatrix averaging_operator(const TraceSpace& trace, const AuxiliarySpace& aux);
Vector averaging_apply(const SparseMatrix& averaging, const Vector& lambda);

// ---------------------------------------------------------------------------
// Smoother bounds (dense, desk scale)

struct SmootherBounds {
  double eig_min = 0.0;         // real parts of sigma(R A)
  double eig_max = 0.0;
  double eig_max_imag = 0.0;
  double inverse_constant = 0.0;  // max_lambda <Rbar^{-1} l, l> / sum_T h_T^{-2} ||l||^2_{h,dT}
  int rbar_violations = 0;
  double rbar_max_excess = 0.0;   // max of (<Rbar^{-1}l,l> - <R^{-1}l,l>) / <R^{-1}l,l>
  int samples = 0;
  std::uint64_t seed = 0;
};

/// max over seeded random lambda of <Rbar^{-1} l, l> / sum_T h_T^{-2} ||l||^2_{h,dT},
/// with Rbar^{-1} applied by conjugate gradients (matrix-free, any size).
double smoother_inverse_constant(const SparseMatrix& a, const Smoother& smoother, const TraceSpace& trace,
                                 int samples = 50, std::uint64_t seed = kDefaultSeed);

SmootherBounds check_smoother_bounds(const SparseMatrix& a, const Smoother& smoother, const TraceSpace& trace,
                                     int samples = 50, std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Report

class Report {
 public:
  using Value = std::variant<double, long long, bool, std::string>;

  void set(const std::string& key, double v) { put(key, v); }
  void set(const std::string& key, int v) { put(key, static_cast<long long>(v)); }
  void set(const std::string& key, long long v) { put(key, v); }
  void set(const std::string& key, bool v) { put(key, v); }
  void set(const std::string& key, const std::string& v) { put(key, v); }
  void set(const std::string& key, const char* v) { put(key, std::string(v)); }
  /// Records a named check; keys ending in ".pass" feed all_passed().
  void check(const std::string& name, bool pass) { put(name + ".pass", pass); }

  bool all_passed() const;
  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  std::string to_text() const;
  std::string to_json() const;

 private:
  void put(const std::string& key, Value v);
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace hdgmg
