#include "nsolab/mehler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nsolab/error.hpp"
#include "nsolab/parallel.hpp"
#include "nsolab/quadrature.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

namespace {
const double kLogTail = std::log(1e16);

void require_valid(const MehlerKernel& k) {
  if (!k.valid) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "kernel at tau = (%g, %g) is outside the valid sector", k.tau.real(),
                  k.tau.imag());
    throw InvalidKernelError(buf);
  }
}

std::string tau_text(cplx t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%g, %g)", t.real(), t.imag());
  return buf;
}

// Smallest L beyond which |Psi_n| stays below 1e-16 of its maximum.
double eigenfunction_extent(const Coupling& c, int n) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double x = 0.0; x <= 60.0; x += 0.05) peak = std::max(peak, eigenfunction_log(c, n, x).log_abs);
  for (double x = 60.0; x > 0.0; x -= 0.05)
    if (eigenfunction_log(c, n, x).log_abs > peak - kLogTail) return x + 0.05;
  return 1.0;
}
}  // namespace

MehlerKernel kernel_coefficients(const Coupling& c, cplx tau) {
  MehlerKernel k;
  k.coupling = c;
  k.tau = tau;
  cplx s = c.sqrt_c();
  k.lambda_half = std::exp(-s * tau);
  k.lambda = k.lambda_half * k.lambda_half;
  cplx l2 = k.lambda * k.lambda;
  cplx one_minus = 1.0 - l2;
  k.w1 = c.quarter_c() * k.lambda_half / std::sqrt(std::numbers::pi * one_minus);
  k.w2 = s * (1.0 + l2) / (2.0 * one_minus);
  k.w3 = 2.0 * s * k.lambda / one_minus;
  k.in_sector = maximal_sector(c).contains(tau);
  double a2 = k.w2.real(), a3 = k.w3.real();
  k.signs_ok = std::isfinite(a2) && std::isfinite(a3) && a2 > 0.0 && 2.0 * a2 + a3 > 0.0 && 2.0 * a2 - a3 > 0.0;
  k.valid = tau != cplx(0.0, 0.0) && k.in_sector && k.signs_ok;
  return k;
}

cplx kernel_eval(const MehlerKernel& k, double x, double y) {
  require_valid(k);
  return k.w1 * std::exp(k.w3 * (x * y) - k.w2 * (x * x + y * y));
}

double hs_norm(const MehlerKernel& k, HsMethod method) {
  require_valid(k);
  double a2 = k.w2.real(), a3 = k.w3.real();
  if (method == HsMethod::closed_form)
    return std::sqrt(std::norm(k.w1) * std::numbers::pi / std::sqrt((2.0 * a2 - a3) * (2.0 * a2 + a3)));
  // |K|^2 as a Gaussian in y centred at a3 x/(2 a2), then in x; Gauss-Hermite in both,
  // doubling the rule until the sum settles.
  double sy = std::sqrt(2.0 * a2);
  double sx = std::sqrt((4.0 * a2 * a2 - a3 * a3) / (2.0 * a2));
  double prev = -1.0;
  for (int n = 8; n <= 256; n *= 2) {
    Rule r = gauss_hermite(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = r.nodes[i] / sx;
      double yc = a3 * x / (2.0 * a2);
      for (int j = 0; j < n; ++j) {
        double y = yc + r.nodes[j] / sy;
        double w = r.weights[i] * r.weights[j];
        sum += w * std::norm(kernel_eval(k, x, y)) *
               std::exp(r.nodes[i] * r.nodes[i] + r.nodes[j] * r.nodes[j]);
      }
    }
    sum /= sx * sy;
    if (prev > 0.0 && std::abs(sum - prev) <= 1e-13 * sum) return std::sqrt(sum);
    prev = sum;
  }
  throw QuadratureError("Hilbert-Schmidt quadrature did not converge");
}

double nystrom_half_width(const MehlerKernel& k) {
  require_valid(k);
  double a = k.mu_sum(), b = k.mu_diff();
  // min over the boundary of mu_sum (x+y)^2/2 + mu_diff (x-y)^2/2 at |x| = L is 2 L^2 rho.
  double rho = a * b / (a + b);
  double l = std::sqrt(kLogTail / (2.0 * rho));
  return std::clamp(l, 6.0, 60.0);
}

int recommended_node_count(double half_width) {
  int n = int(std::ceil(12.0 * half_width / 32.0)) * 32;
  return std::max(64, n);
}

NystromOperator nystrom_build(const MehlerKernel& k, int node_count, double half_width) {
  require_valid(k);
  if (node_count < 8) throw DomainError("Nystrom discretization needs >= 8 nodes");
  NystromOperator op;
  op.kernel = k;
  op.half_width = half_width > 0.0 ? half_width : nystrom_half_width(k);
  Rule r = gauss_legendre(node_count, -op.half_width, op.half_width);
  op.nodes = r.nodes;
  op.weights = r.weights;
  op.matrix.resize(node_count, node_count);
  for (int j = 0; j < node_count; ++j)
    for (int i = j; i < node_count; ++i) {
      cplx v = std::sqrt(r.weights[i] * r.weights[j]) * kernel_eval(k, r.nodes[i], r.nodes[j]);
      op.matrix(i, j) = op.matrix(j, i) = v;
    }
  return op;
}

double nystrom_norm(const NystromOperator& op) {
  const MatrixXc& a = op.matrix;
  const int n = int(a.rows());
  if (n % 2 != 0) return largest_singular_value(a);
  // K(-x, -y) = K(x, y) on mirrored nodes, so A splits into even and odd halves.
  const int h = n / 2;
  MatrixXc even(h, h), odd(h, h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < h; ++i) {
      even(i, j) = a(i, j) + a(i, n - 1 - j);
      odd(i, j) = a(i, j) - a(i, n - 1 - j);
    }
  return std::max(largest_singular_value(even), largest_singular_value(odd));
}

double semigroup_action_check(const MehlerKernel& k, int n, int node_count) {
  require_valid(k);
  if (n < 0 || n > 10) throw DomainError("semigroup action check supports 0 <= n <= 10");
  const Coupling& c = k.coupling;
  double l = std::max(nystrom_half_width(k), eigenfunction_extent(c, n));
  if (node_count <= 0) node_count = recommended_node_count(l);
  Rule r = gauss_legendre(node_count, -l, l);
  VectorXc psi(node_count);
  for (int i = 0; i < node_count; ++i) psi[i] = eigenfunction_eval(c, n, r.nodes[i]);
  cplx factor = std::exp(-eigenvalue(c, n) * k.tau);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < node_count; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < node_count; ++j) acc += kernel_eval(k, r.nodes[i], r.nodes[j]) * r.weights[j] * psi[j];
    cplx expect = factor * psi[i];
    num += r.weights[i] * std::norm(acc - expect);
    den += r.weights[i] * std::norm(expect);
  }
  if (!(den > 0.0) || !std::isfinite(num)) throw QuadratureError("semigroup action quadrature degenerated");
  return std::sqrt(num / den);
}

double semigroup_law_check(const Coupling& c, cplx tau1, cplx tau2, int node_count) {
  MehlerKernel k1 = kernel_coefficients(c, tau1), k2 = kernel_coefficients(c, tau2),
               k3 = kernel_coefficients(c, tau1 + tau2);
  for (const auto* k : {&k1, &k2, &k3})
    if (!k->valid) throw InvalidKernelError("kernel at tau = " + tau_text(k->tau) + " is not valid");
  double l = std::max({nystrom_half_width(k1), nystrom_half_width(k2), nystrom_half_width(k3)});
  if (node_count <= 0) node_count = recommended_node_count(l);
  NystromOperator a = nystrom_build(k1, node_count, l), b = nystrom_build(k2, node_count, l),
                  s = nystrom_build(k3, node_count, l);
  return largest_singular_value(a.matrix * b.matrix - s.matrix);
}

ScanResult edge_decay_scan(const Coupling& c, double edge_angle, const std::vector<double>& t_grid,
                           int node_count, int workers) {
  cplx dir = std::polar(1.0, edge_angle);
  if (!maximal_sector(c).contains(dir)) throw DomainError("decay direction lies outside the sector");
  if (t_grid.size() < 2) throw DomainError("decay scan needs >= 2 samples");
  for (size_t i = 0; i < t_grid.size(); ++i)
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw DomainError("decay scan grid must be positive and increasing");
  ScanResult r;
  r.tag = "edge_decay";
  r.points = parallel_map(int(t_grid.size()), workers, [&](int i) {
    ScanPoint p;
    p.parameter = t_grid[i];
    p.z = dir * t_grid[i];
    try {
      MehlerKernel k = kernel_coefficients(c, p.z);
      double l = nystrom_half_width(k);
      int nodes = node_count > 0 ? node_count : recommended_node_count(l);
      p.value = nystrom_norm(nystrom_build(k, nodes, l));
      p.reliable = true;
    } catch (const Error& e) {
      p.status = NodeStatus::error;
      p.label = e.what();
      p.value = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
  });
  std::vector<double> t, y;
  double running = std::numeric_limits<double>::quiet_NaN();
  for (auto& p : r.points) {
    if (p.status != NodeStatus::ok) continue;
    t.push_back(p.parameter);
    y.push_back(-std::log(p.value));
    if (t.size() >= 2) running = fit_slope(t, y);
    p.running_fit = running;
  }
  if (t.size() < 2) throw ConvergenceError("decay scan produced fewer than 2 usable samples");
  r.summary["fitted_exponent"] = fit_slope(t, y);
  size_t h = t.size() / 2;
  if (t.size() - h >= 2)
    r.summary["tail_fitted_exponent"] =
        fit_slope(std::vector<double>(t.begin() + h, t.end()), std::vector<double>(y.begin() + h, y.end()));
  r.summary["predicted_rate"] = (dir * eigenvalue(c, 0)).real();
  return r;
}

}  // namespace nsolab
