#include "nsolab/resolvent.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsolab/error.hpp"
#include "nsolab/parallel.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool strictly_increasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}
}  // namespace

ResolventEngine::ResolventEngine(const Coupling& c, int n, ResolventOptions opt)
    : c_(c), n_(n), opt_(opt) {
  if (n < 16) throw DomainError("resolvent truncation needs N >= 16");
  lo_.dim = n;
  hi_.dim = 2 * n;
  for (int p = 0; p < 2; ++p) {
    lo_.blocks[p] = parity_block(c, n, p);
    hi_.blocks[p] = parity_block(c, 2 * n, p);
  }
}

std::pair<double, double> ResolventEngine::extremes(const Level& l, cplx z) const {
  double lo = kInf, hi = 0.0;
  for (const auto& b : l.blocks) {
    MatrixXc a = b;
    a.diagonal().array() -= z;
    Eigen::VectorXd s = singular_values(a);
    lo = std::min(lo, s[s.size() - 1]);
    hi = std::max(hi, s[0]);
  }
  return {lo, hi};
}

ResolventSample ResolventEngine::sample(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("z must be finite");
  // Exact eigenvalues are what reliable truncated eigenvalues converge to.
  double k = std::floor((std::abs(z / c_.sqrt_c()) - 1.0) / 2.0);
  for (double j = std::max(0.0, k - 1); j <= k + 2 && j < 4.0 * n_; ++j) {
    cplx lam = eigenvalue(c_, int(j));
    if (std::abs(z - lam) <= 1e-12 * std::max(1.0, std::abs(lam)))
      throw SingularPointError("z coincides with eigenvalue lambda_" + std::to_string(int(j)));
  }
  auto [s_lo, max_lo] = extremes(lo_, z);
  auto [s_hi, max_hi] = extremes(hi_, z);
  (void)max_lo;
  if (s_hi < opt_.singular_threshold || s_lo < opt_.singular_threshold)
    throw SingularPointError("sigma_min below threshold: z is numerically an eigenvalue");
  ResolventSample r;
  r.z = z;
  r.norm = 1.0 / s_hi;
  r.diagnostics = TruncationDiagnostics::make(n_, "resolvent_norm", 1.0 / s_lo, 1.0 / s_hi);
  r.noise_floor = opt_.noise_factor * hi_.dim * kEps * max_hi;
  r.reliable = r.diagnostics.agrees(opt_.rel_gap_tol) && s_hi > r.noise_floor;
  return r;
}

ResolventSample ResolventEngine::try_sample(cplx z) const {
  try {
    return sample(z);
  } catch (const SingularPointError& e) {
    ResolventSample r;
    r.z = z;
    r.norm = kInf;
    r.diagnostics = TruncationDiagnostics::make(n_, "resolvent_norm", kInf, kInf);
    r.reliable = true;
    r.status = NodeStatus::collision;
    r.message = e.what();
    return r;
  } catch (const Error& e) {
    ResolventSample r;
    r.z = z;
    r.norm = std::numeric_limits<double>::quiet_NaN();
    r.diagnostics.dim_pair = {n_, 2 * n_};
    r.diagnostics.quantity_tag = "resolvent_norm";
    r.diagnostics.rel_gap = std::numeric_limits<double>::quiet_NaN();
    r.reliable = false;
    r.status = NodeStatus::error;
    r.message = e.what();
    return r;
  }
}

ResolventSample resolvent_norm(const Coupling& c, cplx z, int n, const ResolventOptions& opt) {
  return ResolventEngine(c, n, opt).sample(z);
}

cplx GridScan::node(int i, int j) const {
  const auto& r = rectangle;
  double x = r.re_min + (r.re_max - r.re_min) * i / (resolution.nx - 1);
  double y = r.im_min + (r.im_max - r.im_min) * j / (resolution.ny - 1);
  return {x, y};
}

GridScan pseudospectra_grid(const ResolventEngine& engine, const Rectangle& rect, const Resolution& res,
                            std::vector<double> epsilons) {
  if (res.nx < 2 || res.ny < 2) throw DomainError("grid resolution must be >= 2 in each direction");
  if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min))
    throw DomainError("grid rectangle is degenerate");
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw DomainError("epsilon levels must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw DomainError("epsilon levels must be strictly decreasing");
  }
  GridScan g;
  g.rectangle = rect;
  g.resolution = res;
  g.epsilons = std::move(epsilons);
  g.samples = parallel_map(res.nx * res.ny, engine.options().workers, [&](int k) {
    return engine.try_sample(g.node(k % res.nx, k / res.nx));
  });
  return g;
}

GridScan pseudospectra_grid(const Coupling& c, const Rectangle& rect, const Resolution& res,
                            std::vector<double> epsilons, int n, const ResolventOptions& opt) {
  return pseudospectra_grid(ResolventEngine(c, n, opt), rect, res, std::move(epsilons));
}

SymmetryCheck symmetry_check(const ResolventEngine& engine, cplx z) {
  cplx w = symmetry_reflect(engine.coupling(), z);
  ResolventSample a = engine.sample(z);
  ResolventSample b = w == z ? a : engine.sample(w);
  SymmetryCheck s;
  s.norm_z = a.norm;
  s.norm_reflected = b.norm;
  s.rel_difference = std::abs(a.norm - b.norm) / std::max(a.norm, b.norm);
  s.reliable = a.reliable && b.reliable;
  return s;
}

SymmetryCheck symmetry_check(const Coupling& c, cplx z, int n, const ResolventOptions& opt) {
  return symmetry_check(ResolventEngine(c, n, opt), z);
}

static ScanPoint to_point(double parameter, const ResolventSample& s) {
  ScanPoint p;
  p.parameter = parameter;
  p.z = s.z;
  p.value = s.norm;
  p.reliable = s.reliable;
  p.rel_gap = s.diagnostics.rel_gap;
  p.status = s.status;
  p.label = s.message;
  return p;
}

static void check_grid(const std::vector<double>& grid, double min_value, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
  if (!strictly_increasing(grid)) throw DomainError(std::string(what) + " grid must be strictly increasing");
  if (grid.front() < min_value) throw DomainError(std::string(what) + " grid has values out of range");
}

ScanResult growth_curve_scan(const Coupling& c, double b, double p, const std::vector<double>& eta_grid,
                             int n, const ResolventOptions& opt) {
  if (!(b > 0.0)) throw DomainError("growth curve needs b > 0");
  check_grid(eta_grid, std::numeric_limits<double>::min(), "eta");
  ResolventEngine engine(c, n, opt);
  ScanResult r;
  r.tag = "growth_curve";
  r.points = parallel_map(int(eta_grid.size()), opt.workers, [&](int k) {
    double eta = eta_grid[k];
    return to_point(eta, engine.try_sample(b * eta + c.c() * std::pow(eta, p)));
  });
  std::vector<double> reliable;
  double largest = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : r.points)
    if (pt.reliable && pt.status == NodeStatus::ok) {
      reliable.push_back(pt.value);
      largest = pt.parameter;
    }
  r.summary["largest_reliable_eta"] = largest;
  r.summary["reliable_count"] = double(reliable.size());
  r.summary["p_in_blowup_range"] = (p > 1.0 / 3.0 && p < 3.0) ? 1.0 : 0.0;
  r.summary["increasing"] = strictly_increasing(reliable) ? 1.0 : 0.0;
  r.summary["max_reliable_norm"] = reliable.empty() ? 0.0 : *std::max_element(reliable.begin(), reliable.end());
  return r;
}

ScanResult edge_scan(const Coupling& c, Edge edge, const std::vector<double>& eta_grid, double eps, int n,
                     const ResolventOptions& opt) {
  double d = eigenvalue(c, 0).imag();
  if (!(eps >= 0.0) || !(eps < d))
    throw DomainError("edge offset must satisfy 0 <= eps < Im(lambda_0)");
  check_grid(eta_grid, 0.0, "eta");
  ResolventEngine engine(c, n, opt);
  cplx dir = c.c() / std::abs(c.c());
  ScanResult r;
  r.tag = edge == Edge::lower ? "edge_lower" : "edge_upper";
  r.points = parallel_map(int(eta_grid.size()), opt.workers, [&](int k) {
    double eta = eta_grid[k];
    cplx z = edge == Edge::lower ? cplx(eta, eps) : dir * cplx(eta, -eps);
    return to_point(eta, engine.try_sample(z));
  });
  double sup = 0.0, argsup = std::numeric_limits<double>::quiet_NaN();
  bool all_reliable = true;
  for (const auto& pt : r.points) {
    all_reliable = all_reliable && pt.reliable && pt.status == NodeStatus::ok;
    if (pt.status == NodeStatus::ok && pt.value > sup) {
      sup = pt.value;
      argsup = pt.parameter;
    }
  }
  double step = 0.0;
  size_t first = r.points.size() > 10 ? r.points.size() - 10 : 1;
  for (size_t k = std::max<size_t>(first, 1); k < r.points.size(); ++k) {
    double a = r.points[k - 1].value, b = r.points[k].value;
    step = std::max(step, std::abs(b - a) / std::max(a, b));
  }
  r.summary["supremum"] = sup;
  r.summary["argsup"] = argsup;
  r.summary["all_reliable"] = all_reliable ? 1.0 : 0.0;
  r.summary["last_decade_max_step"] = step;
  return r;
}

ConjectureCurve solve_conjecture_curve(const Coupling& c, int m, double p) {
  if (!(p > 0.0)) throw DomainError("conjecture exponent must be positive");
  if (!(c.c().imag() > 0.0)) throw RootFindError("conjecture curve needs Im(c) > 0");
  cplx lam = eigenvalue(c, m);
  // Imaginary part: Im(c) E^p = Im(lambda_m), monotone in E.
  auto f = [&](double e) { return c.c().imag() * std::pow(e, p) - lam.imag(); };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw RootFindError("no bracket for E");
  }
  boost::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto [a, bnd] = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, iters);
  double e = 0.5 * (a + bnd);
  if (!(e > 0.0)) throw RootFindError("root for E is not positive");
  ConjectureCurve cc;
  cc.e = e;
  cc.b = (lam.real() - c.c().real() * std::pow(e, p)) / e;
  if (!(cc.b > 0.0)) throw RootFindError("no admissible b > 0 for this (m, p)");
  cc.residual = std::abs(cc.b * e + c.c() * std::pow(e, p) - lam);
  return cc;
}

bool in_conjecture_region(const Coupling& c, const ConjectureCurve& cc, double p, cplx z) {
  auto zeta = [&](double eta) { return cc.b * eta + c.c() * std::pow(eta, p); };
  double r = std::abs(z);
  if (r < std::abs(zeta(cc.e))) return false;
  double hi = 2.0 * cc.e;
  while (std::abs(zeta(hi)) < r) hi *= 2.0;
  auto g = [&](double eta) { return std::abs(zeta(eta)) - r; };
  boost::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto [a, b] = boost::math::tools::toms748_solve(g, cc.e, hi, g(cc.e), g(hi), tol, iters);
  double lo_angle = std::arg(zeta(0.5 * (a + b)));
  double t = std::arg(z);
  return t >= lo_angle - 1e-12 && t <= c.theta() - lo_angle + 1e-12;
}

ScanResult conjecture_scan(const Coupling& c, int m, double p, double delta, const ConjectureGridSpec& spec,
                           int n, const ResolventOptions& opt) {
  if (!(p > 0.0 && p < 1.0 / 3.0)) throw DomainError("conjecture scan needs 0 < p < 1/3");
  if (m < 0) throw DomainError("conjecture scan needs m >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("conjecture scan needs 0 < delta < 1");
  ConjectureCurve cc = solve_conjecture_curve(c, m, p);

  struct Item {
    cplx z;
    double parameter;
    std::string label;
  };
  std::vector<Item> items;
  auto classify = [&](cplx z) -> std::string {
    for (int k = 0; k <= m; ++k)
      if (std::abs(z - eigenvalue(c, k)) < delta) return "excluded_disk";
    return in_conjecture_region(c, cc, p, z) ? "omega" : "outside";
  };
  if (!spec.points.empty()) {
    for (size_t k = 0; k < spec.points.size(); ++k) items.push_back({spec.points[k], double(k), classify(spec.points[k])});
  } else {
    if (spec.curve_samples < 2 || spec.res.nx < 2 || spec.res.ny < 2)
      throw DomainError("conjecture grid needs >= 2 samples per direction");
    for (int k = 0; k < spec.curve_samples; ++k) {
      double eta = cc.e * (1.0 + spec.eta_span * k / (spec.curve_samples - 1));
      cplx z = cc.b * eta + c.c() * std::pow(eta, p);
      items.push_back({z, eta, "curve_lower"});
      items.push_back({symmetry_reflect(c, z), eta, "curve_upper"});
    }
    const auto& r = spec.rect;
    for (int j = 0; j < spec.res.ny; ++j)
      for (int i = 0; i < spec.res.nx; ++i) {
        cplx z(r.re_min + (r.re_max - r.re_min) * i / (spec.res.nx - 1),
               r.im_min + (r.im_max - r.im_min) * j / (spec.res.ny - 1));
        items.push_back({z, double(j * spec.res.nx + i), classify(z)});
      }
  }
  ResolventEngine engine(c, n, opt);
  ScanResult out;
  out.tag = "conjecture";
  out.points = parallel_map(int(items.size()), opt.workers, [&](int k) {
    ScanPoint pt = to_point(items[k].parameter, engine.try_sample(items[k].z));
    pt.label = items[k].label;
    return pt;
  });
  out.summary["b"] = cc.b;
  out.summary["E"] = cc.e;
  out.summary["residual"] = cc.residual;
  double omega_max = 0.0, outside_max = 0.0;
  for (const auto& pt : out.points) {
    if (!pt.reliable || pt.status != NodeStatus::ok) continue;
    if (pt.label == "outside") outside_max = std::max(outside_max, pt.value);
    if (pt.label == "omega") omega_max = std::max(omega_max, pt.value);
  }
  out.summary["max_norm_outside"] = outside_max;
  out.summary["max_norm_omega"] = omega_max;
  return out;
}

}  // namespace nsolab
