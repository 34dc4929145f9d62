// H^1-conforming P1 auxiliary space and its coupling to the trace space.
#pragma once

#include <memory>
#include <vector>

#include "hdgmg/hdg.hpp"
#include "hdgmg/mesh.hpp"
#include "hdgmg/sparse.hpp"

namespace hdgmg {

/// How the P1 stiffness sees the coefficient.
enum class AuxCoefficient {
  Exact,                // (a grad u, grad v) with a evaluated by quadrature
  ElementMeanInverse,   // (cbar^{-1} grad u, grad v), cbar = element mean of a^{-1}
};

/// Interior P1 nodes with the Dirichlet-eliminated stiffness and mass.
struct AuxiliarySpace {
  std::shared_ptr<const Mesh> mesh;
  std::vector<int> node_to_dof;  // -1 on boundary nodes
  std::vector<int> dof_to_node;
  SparseMatrix stiffness;        // A~_h
  SparseMatrix mass;             // consistent P1 mass

  int num_dofs() const { return static_cast<int>(dof_to_node.size()); }
};

AuxiliarySpace assemble_p1(std::shared_ptr<const Mesh> mesh, const CoefficientField& a,
                           AuxCoefficient mode = AuxCoefficient::Exact);

/// I_h: P1 nodal values -> trace coordinates; on each interior face the
/// L^2(F) projection of the P1 trace onto P_k(F).
struct ProlongationMap {
  SparseMatrix matrix;  // trace dofs x interior nodes
};

ProlongationMap build_prolongation(const TraceSpace& trace, const AuxiliarySpace& aux);

/// A~~_h = I_h^t A_h I_h, symmetrized. `asymmetry` receives the relative
/// asymmetry before symmetrization when non-null.
SparseMatrix galerkin_coarse(const SparseMatrix& a, const ProlongationMap& p, double* asymmetry = nullptr);

/// Operator form of the adjoint: (I_h^t mu, v) = <mu, I_h v>_h, returned as
/// P1 nodal values (solves with the P1 mass).
Vector adjoint_prolongation(const ProlongationMap& p, const SparseMatrix& trace_gram, const AuxiliarySpace& aux,
                            const Vector& mu);

/// Nodal interpolation from level l to level l+1 of a uniform hierarchy,
/// restricted to interior nodes.
SparseMatrix p1_interpolation(const MeshHierarchy& hier, std::size_t coarse_level, const AuxiliarySpace& coarse,
                              const AuxiliarySpace& fine);

/// |v|_{1,Omega} of a P1 function given by interior nodal values.
double p1_h1_seminorm(const AuxiliarySpace& aux, const Vector& v);

}  // namespace hdgmg
