#include "nsolab/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nsolab/error.hpp"
#include "nsolab/quadrature.hpp"
#include "nsolab/resolvent.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct BlockProjector {
  MatrixXc q;  // block-local
  cplx center;
  double radius = 0.0;
  Eigen::VectorXd sv;
};

// Truncated eigenvalue of block n%2 nearest lambda_n.
cplx nearest_in_block(const VectorXc& values, cplx target) {
  cplx best = values[0];
  for (auto v : values)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

BlockProjector block_projector(const Coupling& c, int n, int dim, int nodes, cplx* center_out) {
  int parity = n % 2;
  if (OperatorMatrix::block_dim(dim, parity) <= n / 2)
    throw DomainError("truncation dimension too small for index " + std::to_string(n));
  VectorXc diag, off;
  parity_bands(c, dim, parity, diag, off);
  VectorXc own = eigen_decompose(parity_block(c, dim, parity), false).values;
  VectorXc other = OperatorMatrix::block_dim(dim, 1 - parity) > 0
                       ? eigen_decompose(parity_block(c, dim, 1 - parity), false).values
                       : VectorXc();
  cplx mu = nearest_in_block(own, eigenvalue(c, n));
  double gap = std::numeric_limits<double>::infinity();
  for (auto v : own)
    if (v != mu) gap = std::min(gap, std::abs(v - mu));
  for (auto v : other) gap = std::min(gap, std::abs(v - mu));
  double r = 0.5 * gap;
  for (const VectorXc* vs : {&own, &other})
    for (auto v : *vs)
      if (std::abs(std::abs(v - mu) - r) < 10.0 * r * kEps)
        throw ContourCollisionError("contour around lambda_" + std::to_string(n) + " passes through an eigenvalue");
  const int b = int(diag.size());
  BlockProjector out;
  out.center = mu;
  out.radius = r;
  out.q = MatrixXc::Zero(b, b);
  for (int k = 0; k < nodes; ++k) {
    cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    cplx z = mu + r * e;
    VectorXc d = z - diag.array();
    VectorXc lo = -off, up = -off;
    TridiagonalLU lu(lo, d, up);
    MatrixXc x = MatrixXc::Identity(b, b);
    lu.solve(x);
    out.q += (r * e / double(nodes)) * x;
  }
  out.sv = singular_values(out.q);
  if (center_out) *center_out = mu;
  return out;
}
}  // namespace

ProjectorData projector(const Coupling& c, int n, int dim, int contour_nodes) {
  if (n < 0) throw DomainError("projector index must be nonnegative");
  if (contour_nodes < 16) throw DomainError("contour needs >= 16 nodes");
  cplx mu_n, mu_2n;
  BlockProjector lo = block_projector(c, n, dim, contour_nodes, &mu_n);
  BlockProjector hi = block_projector(c, n, 2 * dim, contour_nodes, &mu_2n);
  auto eig_gap = TruncationDiagnostics::make(dim, "eigenvalue", mu_n, mu_2n);
  if (!eig_gap.agrees())
    throw UnreliableEigenvalueError("lambda_" + std::to_string(n) + " is not reliable at N = " +
                                    std::to_string(dim) + " (rel_gap " + std::to_string(eig_gap.rel_gap) + ")");
  ProjectorData p;
  p.n = n;
  p.eigenvalue = mu_n;
  p.contour = {lo.center, lo.radius, contour_nodes};
  p.norm = lo.sv[0];
  p.second_singular_ratio = lo.sv.size() > 1 ? lo.sv[1] / lo.sv[0] : 0.0;
  p.idempotency_defect = largest_singular_value(lo.q * lo.q - lo.q) / p.norm;
  p.diagnostics = TruncationDiagnostics::make(dim, "projector_norm", p.norm, hi.sv[0]);
  p.matrix = MatrixXc::Zero(dim, dim);
  int parity = n % 2;
  for (int j = 0; j < lo.q.cols(); ++j)
    for (int i = 0; i < lo.q.rows(); ++i) p.matrix(2 * i + parity, 2 * j + parity) = lo.q(i, j);
  return p;
}

InstabilityIndex kappa_contour(const Coupling& c, int n, int dim, int contour_nodes) {
  return {n, projector(c, n, dim, contour_nodes).norm, KappaMethod::contour, 0.0};
}

InstabilityIndex kappa_biorthogonal(const Coupling& c, int n, const BiorthogonalQuadrature& spec) {
  if (n < 0 || n > 20) throw DomainError("biorthogonal index supports 0 <= n <= 20");
  // Extent where |Psi_n|^2 has dropped 80 e-folds below its peak.
  double peak = -std::numeric_limits<double>::infinity();
  for (double x = 0.0; x <= 80.0; x += 0.02) peak = std::max(peak, eigenfunction_log(c, n, x).log_abs);
  double l = 80.0;
  while (l > 0.0 && eigenfunction_log(c, n, l).log_abs < peak - 40.0) l -= 0.02;
  l += 0.5;
  double oscill = std::abs(c.sqrt_c().imag()) * l + 1.0;
  auto breaks = panel_breaks(-l, l, std::min(0.5, 1.0 / oscill), std::vector<double>{0.0});
  AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  double shift = 2.0 * peak;
  auto num = integrate_adaptive(
      [&](double x) { return std::exp(2.0 * eigenfunction_log(c, n, x).log_abs - shift); }, breaks, opt);
  auto den = integrate_adaptive(
      [&](double x) {
        LogValue v = eigenfunction_log(c, n, x);
        return std::polar(std::exp(2.0 * v.log_abs - shift), 2.0 * v.phase);
      },
      breaks, opt);
  double rel = std::max(num.abs_error / num.value, den.abs_error / std::abs(den.value));
  if (!num.converged || !den.converged || rel > spec.max_rel_error)
    throw QuadratureError("biorthogonal quadrature for n = " + std::to_string(n) + " did not converge");
  if (std::log(std::abs(den.value)) + shift < std::log(1e-20))
    throw DomainError("bilinear self-pairing of Psi_" + std::to_string(n) + " vanishes");
  return {n, num.value / std::abs(den.value), KappaMethod::biorthogonal, rel};
}

double kappa_m_sum(const Coupling& c, int m, int dim) {
  if (m < 0) throw DomainError("kappa_m needs m >= 0");
  double k = 1.0;
  for (int n = 0; n <= m; ++n) k += projector(c, n, dim).norm;
  return k;
}

double restricted_resolvent_norm(const Coupling& c, int m, cplx z, int dim) {
  double smin = std::numeric_limits<double>::infinity();
  for (int parity = 0; parity < 2; ++parity) {
    int b = OperatorMatrix::block_dim(dim, parity);
    if (b == 0) continue;
    MatrixXc t = parity_block(c, dim, parity);
    EigenDecomposition ed = eigen_decompose(t, true);
    std::vector<int> picked;
    for (int n = parity; n <= m; n += 2) {
      cplx target = eigenvalue(c, n);
      int best = 0;
      for (int i = 1; i < b; ++i)
        if (std::abs(ed.values[i] - target) < std::abs(ed.values[best] - target)) best = i;
      picked.push_back(best);
    }
    int k = int(picked.size());
    if (k >= b) throw DomainError("truncation too small for the restricted resolvent");
    MatrixXc u;
    if (k == 0) {
      u = MatrixXc::Identity(b, b);
    } else {
      MatrixXc w(b, k);
      for (int i = 0; i < k; ++i) w.col(i) = ed.vectors.col(picked[i]).conjugate();
      Eigen::HouseholderQR<MatrixXc> qr(w);
      MatrixXc q = qr.householderQ() * MatrixXc::Identity(b, b);
      u = q.rightCols(b - k);
    }
    MatrixXc a = t;
    a.diagonal().array() -= z;
    MatrixXc comp = u.adjoint() * a * u;
    Eigen::VectorXd s = singular_values(comp);
    smin = std::min(smin, s[s.size() - 1]);
  }
  if (!(smin > 0.0)) throw SingularPointError("restricted operator is singular at z");
  return 1.0 / smin;
}

DecompositionBound decomposition_bound_check(const Coupling& c, int m, cplx z, int dim) {
  DecompositionBound d;
  d.lhs = resolvent_norm(c, z, dim).norm;
  d.kappa_m = kappa_m_sum(c, m, dim);
  for (int n = 0; n <= m; ++n) d.disk_sum += 1.0 / std::abs(eigenvalue(c, n) - z);
  d.restricted_norm = restricted_resolvent_norm(c, m, z, dim);
  d.rhs = d.kappa_m * (d.disk_sum + d.restricted_norm);
  return d;
}

std::vector<cplx> restricted_semigroup_spectrum(const MehlerKernel& k, int m, int node_count, int count) {
  double l = nystrom_half_width(k);
  NystromOperator op = nystrom_build(k, node_count, l);
  const int n = node_count;
  MatrixXc p = MatrixXc::Zero(n, n);
  for (int j = 0; j <= m; ++j) {
    VectorXc psi(n);
    for (int i = 0; i < n; ++i) psi[i] = std::sqrt(op.weights[i]) * eigenfunction_eval(k.coupling, j, op.nodes[i]);
    cplx pair = psi.transpose() * psi;
    p += psi * psi.transpose() / pair;
  }
  MatrixXc q = MatrixXc::Identity(n, n) - p;
  VectorXc ev = eigen_decompose(q * op.matrix * q, false).values;
  std::vector<cplx> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  v.resize(std::min<size_t>(v.size(), size_t(count)));
  return v;
}

std::vector<IndexRow> instability_table(const Coupling& c, int max_n, int dim, int contour_nodes) {
  std::vector<IndexRow> rows;
  for (int n = 0; n <= max_n; ++n) {
    ProjectorData p = projector(c, n, dim, contour_nodes);
    rows.push_back({n, p.norm, kappa_biorthogonal(c, n).kappa, p.diagnostics.rel_gap});
  }
  return rows;
}

}  // namespace nsolab
