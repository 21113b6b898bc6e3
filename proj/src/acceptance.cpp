#include "nsolab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "nsolab/discretization.hpp"
#include "nsolab/error.hpp"
#include "nsolab/mehler.hpp"
#include "nsolab/projectors.hpp"
#include "nsolab/quasimode.hpp"
#include "nsolab/region.hpp"
#include "nsolab/resolvent.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

namespace {

using std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// 1. c = 1: resolvent norm equals 1/dist(z, odd integers).
Outcome self_adjoint_oracle(const AcceptanceOptions& opt) {
  Coupling c(1.0, 0.0);
  ResolventOptions ro;
  ro.workers = opt.workers;
  GridScan g = pseudospectra_grid(c, {0.0, 8.0, -2.0, 2.0}, {21, 21}, {}, 128, ro);
  double worst = 0.0;
  int unreliable = 0;
  for (const auto& s : g.samples) {
    double k = std::max(1.0, 2.0 * std::round((s.z.real() - 1.0) / 2.0) + 1.0);
    double expect = 1.0 / std::abs(s.z - k);
    if (s.status != NodeStatus::ok) return {false, "node collided with an eigenvalue"};
    if (!s.reliable) ++unreliable;
    worst = std::max(worst, std::abs(s.norm - expect) / s.norm);
  }
  return {worst < 1e-8 && unreliable == 0,
          fmt("max rel. error %.3g over 441 nodes", worst) + ", unreliable " + std::to_string(unreliable)};
}

// 2. c = i: first five truncated eigenvalues.
Outcome truncated_spectrum(const AcceptanceOptions&) {
  Coupling c(0.0, 1.0);
  auto ev = truncated_eigenvalues(build_matrix(c, 128), 5);
  double worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    cplx exact = std::polar(1.0, pi / 4) * double(2 * n + 1);
    worst = std::max(worst, std::abs(ev[n] - exact) / std::abs(exact));
  }
  return {worst < 1e-8, fmt("max rel. error %.3g", worst)};
}

// 3. Mehler identities on interior and edge kernels.
Outcome mehler_suite(const AcceptanceOptions&) {
  std::vector<Coupling> cs{Coupling(1.0, 0.0), Coupling(0.0, 1.0), Coupling(std::polar(1.0, pi / 6))};
  double act = 0.0, law = 0.0, hs = 0.0;
  int kernels = 0;
  for (const auto& c : cs) {
    std::vector<cplx> taus{1.0, 0.5};
    Sector s = maximal_sector(c);
    if (s.closed_edges[0]) taus.push_back(std::polar(1.0, s.lower));
    if (s.closed_edges[1] && std::polar(1.0, s.upper) != cplx(1.0)) taus.push_back(std::polar(1.0, s.upper));
    for (cplx tau : taus) {
      MehlerKernel k = kernel_coefficients(c, tau);
      if (!k.valid) return {false, "kernel unexpectedly invalid"};
      ++kernels;
      for (int n = 0; n <= 5; ++n) act = std::max(act, semigroup_action_check(k, n));
      law = std::max(law, semigroup_law_check(c, tau, tau));
      double a = hs_norm(k, HsMethod::closed_form), b = hs_norm(k, HsMethod::quadrature);
      hs = std::max(hs, std::abs(a - b) / a);
    }
  }
  MehlerKernel k = kernel_coefficients(cs[0], std::log(2.0) / 2);
  double lam = k.lambda.real();
  double series = lam / (1.0 - lam * lam);
  double h = hs_norm(k, HsMethod::closed_form);
  double series_err = std::abs(h * h - series);
  double two_thirds = std::abs(series - 2.0 / 3.0);
  bool ok = act < 1e-6 && law < 1e-6 && hs < 1e-8 && series_err < 1e-10 && two_thirds < 1e-12;
  std::ostringstream os;
  os << kernels << " kernels; action " << fmt("%.2g", act) << ", law " << fmt("%.2g", law) << ", HS rel "
     << fmt("%.2g", hs) << ", |HS^2 - lambda/(1-lambda^2)| " << fmt("%.2g", series_err);
  return {ok, os.str()};
}

// 4. Random sector samples: validity and contraction.
Outcome sector_conditions(const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int invalid = 0, total = 0;
  double worst = 0.0;
  for (int ci = 0; ci < 10; ++ci) {
    double theta = u(rng) * (pi / 2) * 0.999;
    double mod = std::exp(std::log(0.25) + u(rng) * std::log(16.0));
    Coupling c(std::polar(mod, theta));
    Sector s = maximal_sector(c);
    for (int k = 0; k < 1000; ++k) {
      double a = s.lower + (s.upper - s.lower) * u(rng);
      double r = std::exp(std::log(0.5) + u(rng) * std::log(8.0));
      MehlerKernel ker = kernel_coefficients(c, std::polar(r, a));
      ++total;
      if (!ker.valid) {
        ++invalid;
        continue;
      }
      double l = nystrom_half_width(ker);
      worst = std::max(worst, nystrom_norm(nystrom_build(ker, recommended_node_count(l), l)));
    }
  }
  return {invalid == 0 && worst <= 1.0 + 1e-8,
          std::to_string(total) + " kernels, invalid " + std::to_string(invalid) +
              fmt(", max Nystrom norm %.12g", worst)};
}

// 5. Quasimode residual ratio and norm scaling.
Outcome quasimode_convergence(const AcceptanceOptions& opt) {
  Coupling c(0.0, 1.0);
  std::vector<double> ratios;
  for (double eta : {10.0, 1e2, 1e3, 1e4})
    ratios.push_back(quasimode_report(QuasimodeParams::make(c, 1.0, 1.0, eta)).ratio);
  bool decreasing = true;
  for (size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
  auto grid = log_spaced(10.0, 1e4, 7);
  double e1 = scaling_fit(c, 1.0, 1.0, grid, {}, opt.workers).exponent;
  double e2 = scaling_fit(c, 1.0, 2.0, grid, {}, opt.workers).exponent;
  std::ostringstream os;
  os << "ratios";
  for (double r : ratios) os << ' ' << fmt("%.4g", r);
  os << fmt("; exponent(gamma=1) %.4f", e1) << fmt(" vs 0, exponent(gamma=2) %.4f vs 0.25", e2);
  return {decreasing && std::abs(e1) < 0.05 && std::abs(e2 - 0.25) < 0.05, os.str()};
}

// 6. Quasimode lower bound never exceeds a reliable SVD resolvent norm.
Outcome certificate_consistency(const AcceptanceOptions&) {
  Coupling c(0.0, 1.0);
  ResolventEngine engine(c, 256);
  int reliable = 0, checked = 0;
  double worst = 0.0;
  for (double gamma : {1.0, 2.0})
    for (double eta : {10.0, 20.0, 30.0, 100.0, 1000.0}) {
      QuasimodeReport q = quasimode_report(QuasimodeParams::make(c, 1.0, gamma, eta));
      ResolventSample s = engine.try_sample(q.params.z_eta());
      ++checked;
      if (!s.reliable || s.status != NodeStatus::ok) continue;
      ++reliable;
      worst = std::max(worst, q.lower_bound / s.norm);
    }
  return {reliable > 0 && worst <= 1.0 + 1e-6,
          std::to_string(reliable) + "/" + std::to_string(checked) + " reliable samples" +
              fmt(", max lower_bound/norm %.4g", worst)};
}

// 7. Growth along z = eta + c eta^{1/2} versus boundedness along the lower edge.
Outcome dichotomy(const AcceptanceOptions& opt) {
  Coupling c(0.0, 1.0);
  ResolventOptions ro;
  ro.workers = opt.workers;
  ScanResult g = growth_curve_scan(c, 1.0, 0.5, {48, 64, 96, 128, 192, 256}, 256, ro);
  std::vector<double> eta;
  for (int k = 0; k <= 40; ++k) eta.push_back(k);
  ScanResult e1 = edge_scan(c, Edge::lower, eta, 0.3, 256, ro);
  ScanResult e2 = edge_scan(c, Edge::lower, eta, 0.3, 512, ro);
  double s1 = e1.get("supremum"), s2 = e2.get("supremum");
  double change = std::abs(s1 - s2) / s2;
  bool ok = g.get("increasing") == 1.0 && g.get("reliable_count") >= 4 && change < 0.01 &&
            e1.get("all_reliable") == 1.0 && e2.get("all_reliable") == 1.0;
  std::ostringstream os;
  os << "growth: " << int(g.get("reliable_count")) << " reliable, increasing=" << (g.get("increasing") == 1.0)
     << fmt(", max %.4g", g.get("max_reliable_norm")) << fmt("; edge sup %.6g", s1) << fmt(" -> %.6g", s2)
     << fmt(" (change %.2g)", change);
  return {ok, os.str()};
}

// 8. Resolvent symmetry about the spectral ray.
Outcome symmetry(const AcceptanceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int used = 0;
  for (cplx cc : {cplx(0.0, 1.0), cplx(1.0, 1.0)}) {
    Coupling c(cc);
    ResolventEngine engine(c, 128);
    int count = 0, attempts = 0;
    while (count < 50 && attempts < 5000) {
      ++attempts;
      cplx z = std::polar(10.0 * std::sqrt(u(rng)), u(rng) * pi / 2);
      if (numerical_range_membership(c, z) != RangeClass::interior) continue;
      SymmetryCheck s = symmetry_check(engine, z);
      if (!s.reliable) continue;
      worst = std::max(worst, s.rel_difference);
      ++count;
    }
    if (count < 50) return {false, "could not find 50 reliable points"};
    used += count;
  }
  return {worst < 1e-6, std::to_string(used) + fmt(" points (c = i, 1+i), max rel. difference %.3g", worst)};
}

// 9. Projectors and instability indices.
Outcome projector_suite(const AcceptanceOptions&) {
  double idem = 0.0, rank = 0.0, annih = 0.0, agree = 0.0;
  for (cplx cc : {cplx(0.0, 1.0), std::polar(1.0, pi / 6), cplx(1.0, 1.0)}) {
    Coupling c(cc);
    std::vector<ProjectorData> ps;
    for (int n = 0; n <= 5; ++n) {
      ProjectorData p = projector(c, n, 128);
      idem = std::max(idem, p.idempotency_defect);
      rank = std::max(rank, p.second_singular_ratio);
      double kb = kappa_biorthogonal(c, n).kappa;
      agree = std::max(agree, std::abs(p.norm - kb) / kb);
      ps.push_back(std::move(p));
    }
    for (int n = 0; n <= 3; ++n)
      for (int k = 0; k <= 3; ++k)
        if (n != k)
          annih = std::max(annih, largest_singular_value(ps[n].matrix * ps[k].matrix) / (ps[n].norm * ps[k].norm));
  }
  Coupling ci(0.0, 1.0);
  std::vector<double> kappa;
  for (int n = 0; n <= 5; ++n) kappa.push_back(projector(ci, n, 256).norm);
  bool increasing = true;
  for (int n = 1; n <= 5; ++n) increasing = increasing && kappa[n] > kappa[n - 1];
  Coupling c1(1.0, 0.0);
  double unit = 0.0;
  for (int n = 0; n <= 5; ++n) {
    unit = std::max(unit, std::abs(projector(c1, n, 64, 32).norm - 1.0));
    unit = std::max(unit, std::abs(kappa_biorthogonal(c1, n).kappa - 1.0));
  }
  bool ok = idem < 1e-8 && rank < 1e-8 && annih < 1e-8 && agree < 1e-4 && increasing && unit < 1e-10;
  std::ostringstream os;
  os << fmt("idempotency %.2g", idem) << fmt(", rank-one %.2g", rank) << fmt(", annihilation %.2g", annih)
     << fmt(", kappa agreement %.2g", agree) << ", increasing(c=i)=" << increasing
     << fmt(", |kappa-1|(c=1) %.2g", unit);
  return {ok, os.str()};
}

// 10. Constructive inclusion certificate, stable under refinement.
Outcome inclusion(const AcceptanceOptions& opt) {
  Coupling c(0.0, 1.0);
  ResolventOptions ro;
  ro.workers = opt.workers;
  ResolventEngine engine(c, 64, ro);
  InclusionRegion region = InclusionRegion::shifted_sector(c, 0.5);
  GridScan coarse = pseudospectra_grid(engine, {0.0, 6.0, 0.0, 6.0}, {41, 41}, {});
  double eps = constructive_epsilon(coarse, region);
  Certificate a = inclusion_certificate(coarse, region, eps);
  GridScan fine = pseudospectra_grid(engine, {0.0, 6.0, 0.0, 6.0}, {81, 81}, {});
  Certificate b = inclusion_certificate(fine, region, eps);
  int total = int(coarse.samples.size() + fine.samples.size());
  bool ok = a.holds && b.holds && a.reliable_nodes + b.reliable_nodes == total;
  std::ostringstream os;
  os << fmt("epsilon %.5g", eps) << "; 41x41 violations " << a.violations.size() << ", 81x81 violations "
     << b.violations.size() << ", reliable " << a.reliable_nodes + b.reliable_nodes << "/" << total;
  return {ok, os.str()};
}

// 11. Decay rate of the semigroup along the lower sector edge.
Outcome edge_decay(const AcceptanceOptions& opt) {
  Coupling c(0.0, 1.0);
  std::vector<double> t;
  for (int k = 1; k <= 20; ++k) t.push_back(k);
  ScanResult r = edge_decay_scan(c, -pi / 2, t, 0, opt.workers);
  double a = r.get("fitted_exponent"), target = eigenvalue(c, 0).imag();
  double rel = std::abs(a - target) / target;
  return {rel < 0.02, fmt("fitted %.6f", a) + fmt(" vs Im(lambda_0) %.6f", target) + fmt(" (rel %.2g)", rel)};
}

struct Entry {
  int id;
  const char* title;
  Outcome (*run)(const AcceptanceOptions&);
};

const Entry kCriteria[] = {
    {1, "self-adjoint resolvent oracle", self_adjoint_oracle},
    {2, "truncated spectrum", truncated_spectrum},
    {3, "Mehler identity suite", mehler_suite},
    {4, "sector sign conditions and contraction", sector_conditions},
    {5, "quasimode convergence and scaling", quasimode_convergence},
    {6, "certificate consistency", certificate_consistency},
    {7, "blow-up vs boundedness dichotomy", dichotomy},
    {8, "resolvent symmetry", symmetry},
    {9, "projector suite", projector_suite},
    {10, "inclusion certificate", inclusion},
    {11, "edge decay rate", edge_decay},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& e : kCriteria) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = e.run(opt);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-40s", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str());
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1fs)", r.seconds);
  return std::string(head) + " " + r.detail + tail;
}

}  // namespace nsolab
