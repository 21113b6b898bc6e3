#pragma once

#include <vector>

#include "nsolab/coupling.hpp"
#include "nsolab/linalg.hpp"
#include "nsolab/scan.hpp"

namespace nsolab {

// Kernel of exp(-H_c tau): K(x, y) = w1 exp(w3 x y - w2 (x^2 + y^2)).
struct MehlerKernel {
  Coupling coupling{1.0, 0.0};
  cplx tau;
  cplx lambda;       // exp(-2 c^{1/2} tau)
  cplx lambda_half;  // exp(-c^{1/2} tau), the branch of lambda^{1/2}
  cplx w1, w2, w3;
  bool in_sector = false;
  bool signs_ok = false;  // Re w2 > 0, Re(2 w2 +- w3) > 0
  bool valid = false;

  // Decay rates of |K| along x + y and x - y: |K| = |w1| exp(-mu_sum (x+y)^2/2 - mu_diff (x-y)^2/2).
  double mu_sum() const { return (2.0 * w2.real() - w3.real()) / 2.0; }
  double mu_diff() const { return (2.0 * w2.real() + w3.real()) / 2.0; }
};

MehlerKernel kernel_coefficients(const Coupling& c, cplx tau);
cplx kernel_eval(const MehlerKernel& k, double x, double y);

enum class HsMethod { closed_form, quadrature };
double hs_norm(const MehlerKernel& k, HsMethod method);

struct NystromOperator {
  MehlerKernel kernel;
  double half_width = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  MatrixXc matrix;  // D^{1/2} K D^{1/2}
};

// Half-width at which the Gaussian envelope of |K| has dropped below 1e-16 on the boundary.
double nystrom_half_width(const MehlerKernel& k);
int recommended_node_count(double half_width);

NystromOperator nystrom_build(const MehlerKernel& k, int node_count, double half_width = 0.0);
double nystrom_norm(const NystromOperator& op);

// Relative L2 error of A Psi_n - exp(-lambda_n tau) Psi_n on the quadrature grid.
double semigroup_action_check(const MehlerKernel& k, int n, int node_count = 0);
// Operator norm of Nys(tau1) Nys(tau2) - Nys(tau1 + tau2) on a shared grid.
double semigroup_law_check(const Coupling& c, cplx tau1, cplx tau2, int node_count = 0);

// Norms of exp(-H_c e^{i phi} t) along a ray of the sector; summary holds the fitted
// decay exponent, its tail-half refit and the predicted rate Re(e^{i phi} lambda_0).
ScanResult edge_decay_scan(const Coupling& c, double edge_angle, const std::vector<double>& t_grid,
                           int node_count = 0, int workers = 1);

}  // namespace nsolab
