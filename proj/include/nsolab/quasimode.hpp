#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nsolab/coupling.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

// WKB quasimode f = g Phi centred at x0 = alpha eta^{1/2}; requires Im(c) > 0.
struct QuasimodeParams {
  Coupling coupling{1.0, 1.0};
  double alpha = 1.0;
  double gamma = 1.0;
  double eta = 1.0;

  static QuasimodeParams make(const Coupling& c, double alpha, double gamma, double eta);

  double x0() const;
  double delta0() const { return gamma / 6.0; }
  double cutoff_radius() const;  // eta^{delta0}
  // Pseudo-eigenvalue: H Phi = (p(s) + z_eta) Phi exactly.
  cplx z_eta() const;
};

// Psi(x0 + s) = psi1 s + psi2 s^2/2 + psi3 s^3/3.
struct PhasePolynomial {
  cplx psi1, psi2, psi3;

  static PhasePolynomial from(const QuasimodeParams& q);
  cplx value(double s) const { return s * (psi1 + s * (psi2 / 2.0 + s * psi3 / 3.0)); }
  cplx derivative(double s) const { return psi1 + s * (psi2 + s * psi3); }
};

// p(s) = c1 s + c3 s^3 + c4 s^4 (the s^2 coefficient vanishes).
struct ResidualPolynomial {
  cplx c1, c3, c4;

  static ResidualPolynomial from(const QuasimodeParams& q);
  cplx value(double s) const { return s * (c1 + s * s * (c3 + s * c4)); }
};

// |Phi(x0 + s)|^2 = exp(-beta2 s^2 - beta3 s^3).
struct EnvelopeData {
  double beta2 = 0.0, beta3 = 0.0;

  static EnvelopeData from(const QuasimodeParams& q);
  double log_modulus_sq(double s) const { return -(beta2 * s * s + beta3 * s * s * s); }
  double local_min() const { return -2.0 * beta2 / (3.0 * beta3); }
};

// Mollifier step h(u) = phi(u)/(phi(u) + phi(1-u)), phi(u) = exp(-1/u), with derivatives.
struct StepValue {
  double h = 0.0, d1 = 0.0, d2 = 0.0;
};
StepValue mollifier_step(double u);

// g = 1 on |x - center| < R, 0 on |x - center| > 2R, smooth in between.
class SmoothCutoff {
 public:
  SmoothCutoff(double center, double radius);

  double value(double x) const;
  double first(double x) const;
  double second(double x) const;
  double center() const { return center_; }
  double radius() const { return radius_; }
  // Sampled sup|g'| R and sup|g''| R^2.
  double q1(int samples = 20001) const;
  double q2(int samples = 20001) const;

 private:
  StepValue at(double x) const;
  double center_, radius_;
};

SmoothCutoff build_cutoff(double delta0, double eta, double center = 0.0);

// log|f(x0 + s)| and arg f(x0 + s).
LogValue evaluate_quasimode(const QuasimodeParams& q, double s);
// (H - z_eta) f at x0 + s, assembled from g p Phi + 2 g' Psi' Phi - g'' Phi.
LogValue residual_density(const QuasimodeParams& q, double s);

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double max_rel_error = 1e-8;
  double panel_fraction = 0.25;  // panel width <= panel_fraction * beta2^{-1/2}
  int max_panels = 20000;
};

struct QuasimodeReport {
  QuasimodeParams params;
  double norm_sq = 0.0;
  double residual_norm = 0.0;
  double ratio = 0.0;
  double lower_bound = 0.0;
  std::array<double, 3> pieces{};           // ||2g'Phi'||, ||g''Phi||, sum_k |c_k| ||s^k g Phi||
  std::array<double, 4> monomial_norms{};   // ||s^k g Phi||, k = 1..4
  double quadrature_error = 0.0;            // largest relative error estimate
};

QuasimodeReport quasimode_report(const QuasimodeParams& q, const QuadratureSpec& spec = {});

// beta3 eta^{3 d0} t^3 <= beta2 eta^{2 d0} t^2 / 2 on sampled t in [0, 2].
bool domination_holds(const QuasimodeParams& q, int samples = 201);
// First grid point from which domination holds for the rest of the grid.
std::optional<double> domination_threshold(const Coupling& c, double alpha, double gamma,
                                           const std::vector<double>& eta_grid);

struct ScalingFit {
  double exponent = 0.0;                       // slope of log ||f||^2 vs log eta
  std::array<double, 3> residual_exponents{};  // slopes of log piece vs log eta
  std::array<double, 4> monomial_exponents{};  // slopes of log ||s^k g Phi||^2
  std::array<std::vector<double>, 3> local_slopes;  // consecutive-point slopes per piece
  double threshold = 0.0;
  std::vector<QuasimodeReport> reports;
};

ScalingFit scaling_fit(const Coupling& c, double alpha, double gamma, const std::vector<double>& eta_grid,
                       const QuadratureSpec& spec = {}, int workers = 1);

std::vector<double> log_spaced(double a, double b, int count);

}  // namespace nsolab
