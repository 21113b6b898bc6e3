#include "nsolab/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nsolab/error.hpp"

namespace nsolab {

namespace {
const double kLogMax = std::log(std::numeric_limits<double>::max());
}

cplx LogValue::value() const {
  if (log_abs == -std::numeric_limits<double>::infinity()) return 0.0;
  if (log_abs > kLogMax)
    throw OverflowError("log-magnitude " + std::to_string(log_abs) + " exceeds double range");
  return std::polar(std::exp(log_abs), phase);
}

const char* to_string(RangeClass r) {
  switch (r) {
    case RangeClass::interior: return "interior";
    case RangeClass::boundary: return "boundary";
    case RangeClass::exterior: return "exterior";
  }
  return "?";
}

cplx eigenvalue(const Coupling& c, int n) {
  if (n < 0) throw DomainError("eigenvalue index must be nonnegative");
  return c.sqrt_c() * double(2 * n + 1);
}

EigenData eigen_data(const Coupling& c, int n) { return {n, eigenvalue(c, n)}; }

LogValue hermite_log(int n, cplx w) {
  if (n < 0 || n > kMaxHermiteDegree)
    throw DomainError("Hermite degree " + std::to_string(n) + " outside [0, " +
                      std::to_string(kMaxHermiteDegree) + "]");
  cplx prev = 1.0, cur = 2.0 * w;
  double scale = 0.0;  // log of the factor divided out of (prev, cur)
  if (n == 0) return {0.0, 0.0};
  for (int k = 1; k < n; ++k) {
    cplx next = 2.0 * w * cur - 2.0 * double(k) * prev;
    prev = cur;
    cur = next;
    double m = std::abs(cur);
    if (m > 1e100) {
      prev /= m;
      cur /= m;
      scale += std::log(m);
    }
  }
  if (cur == cplx(0.0, 0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return {scale + std::log(std::abs(cur)), std::arg(cur)};
}

LogValue eigenfunction_log(const Coupling& c, int n, double x) {
  if (!std::isfinite(x)) throw DomainError("eigenfunction argument must be finite");
  LogValue h = hermite_log(n, c.quarter_c() * x);
  cplx e = -c.sqrt_c() * (x * x / 2.0);
  cplx pre = c.eighth_c();
  return {std::log(std::abs(pre)) + h.log_abs + e.real(), std::arg(pre) + h.phase + e.imag()};
}

cplx eigenfunction_eval(const Coupling& c, int n, double x) {
  return eigenfunction_log(c, n, x).value();
}

NumericalRangePoint decompose(const Coupling& c, cplx z) {
  if (c.c().imag() == 0.0)
    throw DegenerateCouplingError("z = t1 + c t2 is not unique for real c");
  NumericalRangePoint p;
  p.z = z;
  p.t2 = z.imag() / c.c().imag();
  p.t1 = z.real() - c.c().real() * p.t2;
  p.member = p.t1 >= 0.0 && p.t2 >= 0.0 && p.t1 * p.t2 >= 0.25;
  return p;
}

RangeClass numerical_range_membership(const Coupling& c, cplx z, double tol_scale) {
  NumericalRangePoint p = decompose(c, z);
  double tol = tol_scale * std::max(1.0, std::norm(z));
  double d = p.t1 * p.t2 - 0.25;
  if (p.t1 < 0.0 || p.t2 < 0.0) return RangeClass::exterior;
  if (d > tol) return RangeClass::interior;
  if (d < -tol) return RangeClass::exterior;
  return RangeClass::boundary;
}

cplx numerical_range_boundary(const Coupling& c, double t) {
  if (!(t > 0.0)) throw DomainError("boundary parameter t must be positive");
  return t + c.c() / (4.0 * t);
}

cplx symmetry_reflect(const Coupling& c, cplx z) {
  return std::polar(1.0, c.theta()) * std::conj(z);
}

Sector maximal_sector(const Coupling& c) {
  constexpr double h = std::numbers::pi / 2;
  Sector s;
  s.excludes_origin = true;
  if (c.c().imag() > 0.0) {
    s.lower = -h;
    s.upper = h - c.theta();
    s.closed_edges = {true, true};
  } else if (c.c().imag() < 0.0) {
    s.lower = -h - c.theta();
    s.upper = h;
    s.closed_edges = {true, true};
  } else {
    s.lower = -h;
    s.upper = h;
    s.closed_edges = {false, false};
  }
  return s;
}

}  // namespace nsolab
