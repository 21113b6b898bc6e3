#pragma once

#include <array>
#include <string>
#include <vector>

#include "nsolab/discretization.hpp"
#include "nsolab/scan.hpp"

namespace nsolab {

struct ResolventOptions {
  double rel_gap_tol = kDefaultRelGapTol;
  // A sample is also unreliable once sigma_min(2N) drops below
  // noise_factor * 2N * eps * sigma_max(2N): both truncations then return rounding noise.
  double noise_factor = 1.0;
  double singular_threshold = 1e-30;
  int workers = 1;
};

struct ResolventSample {
  cplx z;
  double norm = 0.0;  // 1/sigma_min at dimension 2N
  TruncationDiagnostics diagnostics;
  bool reliable = false;
  double noise_floor = 0.0;
  NodeStatus status = NodeStatus::ok;
  std::string message;
};

// Holds the parity blocks of H_N and H_2N; samples are pure and thread-safe.
class ResolventEngine {
 public:
  ResolventEngine(const Coupling& c, int n, ResolventOptions opt = {});

  ResolventSample sample(cplx z) const;
  // Never throws: collisions become +inf (reliable), failures become flagged NaN.
  ResolventSample try_sample(cplx z) const;

  const Coupling& coupling() const { return c_; }
  int dim() const { return n_; }
  const ResolventOptions& options() const { return opt_; }

 private:
  struct Level {
    int dim = 0;
    std::array<MatrixXc, 2> blocks;
  };
  // (sigma_min, sigma_max) of H - z over both parity blocks.
  std::pair<double, double> extremes(const Level& l, cplx z) const;

  Coupling c_;
  int n_;
  ResolventOptions opt_;
  Level lo_, hi_;
};

ResolventSample resolvent_norm(const Coupling& c, cplx z, int n, const ResolventOptions& opt = {});

struct Rectangle {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
};

struct Resolution {
  int nx = 0, ny = 0;
};

struct GridScan {
  Rectangle rectangle;
  Resolution resolution;
  std::vector<ResolventSample> samples;  // row-major: index = j * nx + i, row j has fixed Im
  std::vector<double> epsilons;

  cplx node(int i, int j) const;
  const ResolventSample& at(int i, int j) const { return samples[size_t(j) * resolution.nx + i]; }
};

GridScan pseudospectra_grid(const Coupling& c, const Rectangle& rect, const Resolution& res,
                            std::vector<double> epsilons, int n, const ResolventOptions& opt = {});
GridScan pseudospectra_grid(const ResolventEngine& engine, const Rectangle& rect, const Resolution& res,
                            std::vector<double> epsilons);

struct SymmetryCheck {
  double norm_z = 0.0;
  double norm_reflected = 0.0;
  double rel_difference = 0.0;
  bool reliable = false;
};

SymmetryCheck symmetry_check(const Coupling& c, cplx z, int n, const ResolventOptions& opt = {});
SymmetryCheck symmetry_check(const ResolventEngine& engine, cplx z);

// z_eta = b eta + c eta^p; summary: largest_reliable_eta, p_in_blowup_range, increasing.
ScanResult growth_curve_scan(const Coupling& c, double b, double p, const std::vector<double>& eta_grid,
                             int n, const ResolventOptions& opt = {});

enum class Edge { lower, upper };

// lower: z = eta + i eps; upper: z = c (eta - i eps)/|c|.
// summary: supremum, argsup, last_decade_max_step.
ScanResult edge_scan(const Coupling& c, Edge edge, const std::vector<double>& eta_grid, double eps, int n,
                     const ResolventOptions& opt = {});

struct ConjectureCurve {
  double b = 0.0;
  double e = 0.0;
  double residual = 0.0;  // |b E + c E^p - lambda_m|
};

// Solves b E + c E^p = lambda_m for real b > 0, E > 0.
ConjectureCurve solve_conjecture_curve(const Coupling& c, int m, double p);

// Membership of z in the region swept by |z_eta| e^{i t}, eta >= E, arg z_eta <= t <= theta - arg z_eta.
bool in_conjecture_region(const Coupling& c, const ConjectureCurve& curve, double p, cplx z);

struct ConjectureGridSpec {
  Rectangle rect{0.0, 8.0, 0.0, 8.0};
  Resolution res{17, 17};
  int curve_samples = 24;
  double eta_span = 8.0;  // curves sampled on eta in [E, E (1 + eta_span)]
  std::vector<cplx> points;  // when non-empty, only these points are sampled
};

// Data-only scan; labels: curve_lower, curve_upper, excluded_disk, omega, outside.
ScanResult conjecture_scan(const Coupling& c, int m, double p, double delta, const ConjectureGridSpec& spec,
                           int n, const ResolventOptions& opt = {});

}  // namespace nsolab
