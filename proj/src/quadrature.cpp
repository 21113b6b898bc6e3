#include "nsolab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "nsolab/error.hpp"

namespace nsolab {

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[k] = -x;
    r.nodes[n - 1 - k] = x;
    r.weights[k] = r.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

Rule gauss_hermite(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite needs at least one node");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw ConvergenceError("Golub-Welsch eigensolve failed");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()[i];
    double v = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

std::vector<double> panel_breaks(double a, double b, double max_width, std::span<const double> extra) {
  std::vector<double> pts{a, b};
  for (double x : extra)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out{pts.front()};
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double len = pts[i + 1] - pts[i];
    if (len <= 0.0) continue;
    int m = std::max(1, int(std::ceil(len / max_width)));
    for (int j = 1; j <= m; ++j) out.push_back(j == m ? pts[i + 1] : pts[i] + len * j / m);
  }
  return out;
}

}  // namespace nsolab
