#include "nsolab/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "nsolab/error.hpp"
#include "nsolab/parallel.hpp"
#include "nsolab/quadrature.hpp"
#include "nsolab/scan.hpp"

namespace nsolab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const cplx I(0.0, 1.0);

double log_abs_sq(cplx v) {
  double a = std::abs(v);
  return a == 0.0 ? kNegInf : 2.0 * std::log(a);
}
}  // namespace

QuasimodeParams QuasimodeParams::make(const Coupling& c, double alpha, double gamma, double eta) {
  if (!(c.c().imag() > 0.0)) throw DomainError("quasimodes need Im(c) > 0");
  if (!(alpha > 0.0)) throw DomainError("quasimode alpha must be positive");
  if (!(gamma >= 1.0 && gamma < 3.0)) throw DomainError("quasimode gamma must lie in [1, 3)");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("quasimode eta must be positive");
  return {c, alpha, gamma, eta};
}

double QuasimodeParams::x0() const { return alpha * std::sqrt(eta); }
double QuasimodeParams::cutoff_radius() const { return std::pow(eta, delta0()); }

cplx QuasimodeParams::z_eta() const {
  cplx c = coupling.c();
  return -I * c * std::pow(eta, 0.5 - gamma / 2) + alpha * alpha * std::pow(eta, gamma) +
         c * alpha * alpha * eta;
}

PhasePolynomial PhasePolynomial::from(const QuasimodeParams& q) {
  cplx c = q.coupling.c();
  double a = q.alpha, e = q.eta, g = q.gamma;
  return {I * a * std::pow(e, g / 2), -I * c * std::pow(e, 0.5 - g / 2),
          -(I * c / (2.0 * a)) * std::pow(e, -g / 2) * (1.0 + c * std::pow(e, 1.0 - g))};
}

ResidualPolynomial ResidualPolynomial::from(const QuasimodeParams& q) {
  cplx c = q.coupling.c();
  double a = q.alpha, e = q.eta, g = q.gamma;
  cplx k = c * std::pow(e, 1.0 - g);
  return {-(I * c / a) * std::pow(e, -g / 2) * (1.0 + k), (c * c / a) * std::pow(e, 0.5 - g) * (1.0 + k),
          (c * c / (4.0 * a * a)) * std::pow(e, -g) * (1.0 + 2.0 * k + k * k)};
}

EnvelopeData EnvelopeData::from(const QuasimodeParams& q) {
  cplx c = q.coupling.c();
  double e = q.eta, g = q.gamma;
  return {c.imag() * std::pow(e, 0.5 - g / 2),
          c.imag() * (1.0 + 2.0 * c.real() * std::pow(e, 1.0 - g)) / (3.0 * q.alpha) * std::pow(e, -g / 2)};
}

StepValue mollifier_step(double u) {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  double v = 1.0 - u;
  double q = 1.0 / u - 1.0 / v;
  double t = std::exp(-std::abs(q));
  double h = q > 0 ? t / (1.0 + t) : 1.0 / (1.0 + t);
  double hh = t / ((1.0 + t) * (1.0 + t));  // h (1 - h)
  double r = 1.0 / (u * u) + 1.0 / (v * v);
  double dr = -2.0 / (u * u * u) + 2.0 / (v * v * v);
  double d1 = hh * r;
  double d2 = d1 * (1.0 - 2.0 * h) * r + hh * dr;
  return {h, d1, d2};
}

SmoothCutoff::SmoothCutoff(double center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0)) throw DomainError("cutoff radius must be positive");
}

StepValue SmoothCutoff::at(double x) const {
  return mollifier_step((std::abs(x - center_) - radius_) / radius_);
}

double SmoothCutoff::value(double x) const { return 1.0 - at(x).h; }

double SmoothCutoff::first(double x) const {
  double sgn = x >= center_ ? 1.0 : -1.0;
  return -sgn * at(x).d1 / radius_;
}

double SmoothCutoff::second(double x) const { return -at(x).d2 / (radius_ * radius_); }

double SmoothCutoff::q1(int samples) const {
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    double x = center_ - 2.5 * radius_ + 5.0 * radius_ * k / (samples - 1);
    m = std::max(m, std::abs(first(x)));
  }
  return m * radius_;
}

double SmoothCutoff::q2(int samples) const {
  double m = 0.0;
  for (int k = 0; k < samples; ++k) {
    double x = center_ - 2.5 * radius_ + 5.0 * radius_ * k / (samples - 1);
    m = std::max(m, std::abs(second(x)));
  }
  return m * radius_ * radius_;
}

SmoothCutoff build_cutoff(double delta0, double eta, double center) {
  double r = std::pow(eta, delta0);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("cutoff radius eta^delta0 must be positive");
  return SmoothCutoff(center, r);
}

LogValue evaluate_quasimode(const QuasimodeParams& q, double s) {
  cplx psi = PhasePolynomial::from(q).value(s);
  double g = SmoothCutoff(0.0, q.cutoff_radius()).value(s);
  if (g == 0.0) return {kNegInf, -psi.imag()};
  return {-psi.real() + std::log(g), -psi.imag()};
}

LogValue residual_density(const QuasimodeParams& q, double s) {
  PhasePolynomial ph = PhasePolynomial::from(q);
  ResidualPolynomial rp = ResidualPolynomial::from(q);
  SmoothCutoff g(0.0, q.cutoff_radius());
  cplx a = g.value(s) * rp.value(s) + 2.0 * g.first(s) * ph.derivative(s) - g.second(s);
  cplx psi = ph.value(s);
  if (a == cplx(0.0, 0.0)) return {kNegInf, 0.0};
  return {std::log(std::abs(a)) - psi.real(), std::arg(a) - psi.imag()};
}

namespace {

struct LogIntegral {
  double log_value = kNegInf;
  double rel_error = 0.0;
};

// log of the integral of exp(log_density) over consecutive breakpoints.
LogIntegral integrate_log(const std::function<double(double)>& log_density, const std::vector<double>& breaks,
                          const QuadratureSpec& spec, const char* what) {
  double shift = kNegInf;
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    for (int k = 0; k <= 16; ++k) shift = std::max(shift, log_density(breaks[i] + (breaks[i + 1] - breaks[i]) * k / 16.0));
  if (shift == kNegInf) return {};
  AdaptiveOptions opt;
  opt.rel_tol = spec.rel_tol;
  opt.max_panels = spec.max_panels;
  auto r = integrate_adaptive([&](double s) { return std::exp(log_density(s) - shift); }, breaks, opt);
  if (!(r.value > 0.0))
    throw QuadratureError(std::string("quadrature for ") + what + " returned a non-positive value");
  double rel = r.abs_error / r.value;
  if (rel > spec.max_rel_error)
    throw QuadratureError(std::string("quadrature for ") + what + " has relative error estimate " +
                          std::to_string(rel));
  return {shift + std::log(r.value), rel};
}

}  // namespace

QuasimodeReport quasimode_report(const QuasimodeParams& q, const QuadratureSpec& spec) {
  PhasePolynomial ph = PhasePolynomial::from(q);
  ResidualPolynomial rp = ResidualPolynomial::from(q);
  EnvelopeData env = EnvelopeData::from(q);
  double radius = q.cutoff_radius();
  SmoothCutoff g(0.0, radius);
  double width = spec.panel_fraction / std::sqrt(env.beta2);
  std::vector<double> marks{-radius, 0.0, radius};
  auto full = panel_breaks(-2.0 * radius, 2.0 * radius, width, marks);
  auto left = panel_breaks(-2.0 * radius, -radius, width);
  auto right = panel_breaks(radius, 2.0 * radius, width);
  std::vector<double> edges = left;
  // Bridge the gap where g' = 0 with a single panel whose integrand vanishes.
  edges.insert(edges.end(), right.begin(), right.end());

  auto log_phi_sq = [&](double s) { return -2.0 * ph.value(s).real(); };
  QuasimodeReport rep;
  rep.params = q;
  double err = 0.0;
  auto run = [&](const std::function<double(double)>& f, const std::vector<double>& b, const char* what) {
    LogIntegral li = integrate_log(f, b, spec, what);
    err = std::max(err, li.rel_error);
    return li.log_value;
  };

  double log_norm_sq = run([&](double s) { return log_abs_sq(g.value(s)) + log_phi_sq(s); }, full, "norm");
  double log_res = run(
      [&](double s) {
        cplx a = g.value(s) * rp.value(s) + 2.0 * g.first(s) * ph.derivative(s) - g.second(s);
        return log_abs_sq(a) + log_phi_sq(s);
      },
      full, "residual");
  double log_p1 = run([&](double s) { return log_abs_sq(2.0 * g.first(s) * ph.derivative(s)) + log_phi_sq(s); },
                      edges, "piece 1 (g' term)");
  double log_p2 = run([&](double s) { return log_abs_sq(g.second(s)) + log_phi_sq(s); }, edges,
                      "piece 2 (g'' term)");
  std::array<double, 4> log_mono{};
  for (int k = 1; k <= 4; ++k) {
    std::string what = "monomial s^" + std::to_string(k);
    log_mono[k - 1] = run(
        [&](double s) {
          return 2.0 * k * std::log(std::abs(s)) + log_abs_sq(g.value(s)) + log_phi_sq(s);
        },
        full, what.c_str());
  }

  rep.norm_sq = std::exp(log_norm_sq);
  rep.residual_norm = std::exp(0.5 * log_res);
  rep.ratio = std::exp(0.5 * (log_res - log_norm_sq));
  rep.lower_bound = 1.0 / rep.ratio;
  rep.pieces[0] = std::exp(0.5 * log_p1);
  rep.pieces[1] = std::exp(0.5 * log_p2);
  for (int k = 0; k < 4; ++k) rep.monomial_norms[k] = std::exp(0.5 * log_mono[k]);
  rep.pieces[2] = std::abs(rp.c1) * rep.monomial_norms[0] + std::abs(rp.c3) * rep.monomial_norms[2] +
                  std::abs(rp.c4) * rep.monomial_norms[3];
  rep.quadrature_error = err;
  return rep;
}

bool domination_holds(const QuasimodeParams& q, int samples) {
  EnvelopeData env = EnvelopeData::from(q);
  double r = q.cutoff_radius();
  for (int k = 0; k < samples; ++k) {
    double t = 2.0 * k / (samples - 1);
    double lhs = env.beta3 * r * r * r * t * t * t;
    double rhs = env.beta2 * r * r * t * t / 2.0;
    if (lhs > rhs) return false;
  }
  return true;
}

std::optional<double> domination_threshold(const Coupling& c, double alpha, double gamma,
                                           const std::vector<double>& eta_grid) {
  std::optional<double> out;
  for (double eta : eta_grid) {
    bool ok = domination_holds(QuasimodeParams::make(c, alpha, gamma, eta));
    if (ok && !out) out = eta;
    if (!ok) out.reset();
  }
  return out;
}

std::vector<double> log_spaced(double a, double b, int count) {
  if (!(a > 0.0 && b > a) || count < 2) throw DomainError("log_spaced needs 0 < a < b and count >= 2");
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) v[k] = std::exp(std::log(a) + (std::log(b) - std::log(a)) * k / (count - 1));
  v.back() = b;
  return v;
}

ScalingFit scaling_fit(const Coupling& c, double alpha, double gamma, const std::vector<double>& eta_grid,
                       const QuadratureSpec& spec, int workers) {
  if (eta_grid.size() < 5) throw DomainError("scaling fit needs at least 5 eta values");
  for (size_t k = 0; k < eta_grid.size(); ++k) {
    if (!(eta_grid[k] > 0.0)) throw DomainError("scaling fit needs positive eta");
    if (k > 0 && !(eta_grid[k] > eta_grid[k - 1])) throw DomainError("eta grid must be increasing");
  }
  double step = std::log(eta_grid[1] / eta_grid[0]);
  for (size_t k = 2; k < eta_grid.size(); ++k)
    if (std::abs(std::log(eta_grid[k] / eta_grid[k - 1]) - step) > 1e-6 * std::max(1.0, step))
      throw DomainError("eta grid must be log-spaced");
  auto thr = domination_threshold(c, alpha, gamma, eta_grid);
  if (!thr || *thr != eta_grid.front())
    throw DomainError("eta grid starts below the domination threshold" +
                      (thr ? " (first valid eta " + std::to_string(*thr) + ")" : std::string()));
  ScalingFit fit;
  fit.threshold = *thr;
  fit.reports = parallel_map(int(eta_grid.size()), workers, [&](int k) {
    return quasimode_report(QuasimodeParams::make(c, alpha, gamma, eta_grid[k]), spec);
  });
  std::vector<double> x, y;
  std::array<std::vector<double>, 3> py;
  std::array<std::vector<double>, 4> my;
  for (const auto& r : fit.reports) {
    x.push_back(std::log(r.params.eta));
    y.push_back(std::log(r.norm_sq));
    for (int i = 0; i < 3; ++i) py[i].push_back(std::log(r.pieces[i]));
    for (int i = 0; i < 4; ++i) my[i].push_back(2.0 * std::log(r.monomial_norms[i]));
  }
  fit.exponent = fit_slope(x, y);
  for (int i = 0; i < 3; ++i) {
    fit.residual_exponents[i] = fit_slope(x, py[i]);
    for (size_t k = 1; k < x.size(); ++k) fit.local_slopes[i].push_back((py[i][k] - py[i][k - 1]) / (x[k] - x[k - 1]));
  }
  for (int i = 0; i < 4; ++i) fit.monomial_exponents[i] = fit_slope(x, my[i]);
  return fit;
}

}  // namespace nsolab
