#include "hdgmg/eigen_estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace hdgmg {

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(gen);
  return v;
}

ExtremeEigenvalues lanczos_extremes(Eigen::Index n, const LinearMap& apply_t, const LinearMap& apply_m,
                                    int max_steps, double tol, std::uint64_t seed) {
  ExtremeEigenvalues out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const int steps_cap = static_cast<int>(std::min<Eigen::Index>(max_steps, n));
  std::vector<Vector> basis;
  std::vector<Vector> mbasis;
  std::vector<double> alpha;
  std::vector<double> beta;

  Vector v = random_vector(n, seed);
  Vector mv;
  apply_m(v, mv);
  double nrm = std::sqrt(v.dot(mv));
  v /= nrm;
  mv /= nrm;

  Vector w;
  Vector mw;
  for (int j = 0; j < steps_cap; ++j) {
    basis.push_back(v);
    mbasis.push_back(mv);
    apply_t(v, w);
    const double a = w.dot(mv);
    alpha.push_back(a);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < basis.size(); ++i) w -= w.dot(mbasis[i]) * basis[i];
    }
    apply_m(w, mw);
    const double b = std::sqrt(std::max(0.0, w.dot(mw)));

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const auto& theta = es.eigenvalues();
    const auto& s = es.eigenvectors();
    out.min = theta[0];
    out.max = theta[m - 1];
    out.steps = m;
    const double scale = std::max({std::abs(out.min), std::abs(out.max), 1e-300});
    out.residual = std::max(std::abs(b * s(m - 1, 0)), std::abs(b * s(m - 1, m - 1))) / scale;
    if (out.residual < tol || b <= 1e-14 * scale || m == n) {
      out.converged = true;
      break;
    }
    beta.push_back(b);
    v = w / b;
    mv = mw / b;
  }
  return out;
}

PowerIterationResult power_iteration(Eigen::Index n, const LinearMap& apply_t, const LinearMap& apply_m,
                                     int max_iter, double tol, std::uint64_t seed) {
  PowerIterationResult out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  Vector x = random_vector(n, seed);
  Vector mx;
  apply_m(x, mx);
  x /= std::sqrt(x.dot(mx));
  Vector y;
  Vector my;
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply_t(x, y);
    apply_m(y, my);
    const double val = std::sqrt(std::max(0.0, y.dot(my)));
    out.iterations = it;
    out.value = val;
    if (val == 0.0) {
      out.converged = true;
      out.last_change = 0.0;
      return out;
    }
    out.last_change = std::abs(val - prev) / val;
    if (it > 1 && out.last_change < tol) {
      out.converged = true;
      return out;
    }
    prev = val;
    x = y / val;
  }
  return out;
}

Eigen::VectorXd dense_generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() == 0) return {};
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense generalized eigensolve failed");
  return es.eigenvalues();
}

Eigen::MatrixXd dense_operator(Eigen::Index n, const LinearMap& map) {
  Eigen::MatrixXd out(n, n);
  Vector e = Vector::Zero(n);
  Vector col;
  for (Eigen::Index j = 0; j < n; ++j) {
    e.setZero();
    e[j] = 1.0;
    map(e, col);
    out.col(j) = col;
  }
  return out;
}

}  // namespace hdgmg
