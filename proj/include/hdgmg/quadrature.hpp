#pragma once

#include <stdexcept>
#include <vector>

#include "hdgmg/mesh.hpp"

namespace hdgmg {

/// Points and weights on the reference triangle (0,0),(1,0),(0,1)
/// (weights sum to 1/2) or the reference edge [0,1] (weights sum to 1).
struct QuadratureRule {
  std::vector<Point> points;  // edge rules use points[i].x only
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

inline constexpr int kMaxQuadratureDegree = 10;

/// Collapsed Gauss rule exact for polynomials of total degree `degree`.
/// Degree 0 and 1 use the centroid.
QuadratureRule triangle_quadrature(int degree);
/// Gauss-Legendre rule on [0,1].
QuadratureRule edge_quadrature(int degree);

/// Gauss-Legendre nodes and weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hdgmg
