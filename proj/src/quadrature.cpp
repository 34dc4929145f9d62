#include "hdgmg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hdgmg {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule edge_quadrature(int degree) {
  if (degree < 0 || degree > 2 * kMaxQuadratureDegree) {
    throw std::invalid_argument("edge quadrature degree out of range: " + std::to_string(degree));
  }
  const int n = degree / 2 + 1;
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.degree = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    rule.points.push_back({0.5 * (x[i] + 1.0), 0.0});
    rule.weights.push_back(0.5 * w[i]);
  }
  return rule;
}

QuadratureRule triangle_quadrature(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree) {
    throw std::invalid_argument("triangle quadrature degree out of range: " + std::to_string(degree));
  }
  QuadratureRule rule;
  rule.degree = degree;
  if (degree <= 1) {
    rule.points.push_back({1.0 / 3.0, 1.0 / 3.0});
    rule.weights.push_back(0.5);
    rule.degree = 1;
    return rule;
  }
  // Duffy map (u,v) -> (u, (1-u) v); the Jacobian adds one degree in u.
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre(nu, xu, wu);
  gauss_legendre(nv, xv, wv);
  for (int i = 0; i < nu; ++i) {
    const double u = 0.5 * (xu[i] + 1.0);
    for (int j = 0; j < nv; ++j) {
      const double v = 0.5 * (xv[j] + 1.0);
      rule.points.push_back({u, (1.0 - u) * v});
      rule.weights.push_back(0.25 * wu[i] * wv[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace hdgmg
