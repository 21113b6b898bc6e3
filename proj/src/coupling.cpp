#include "nsolab/coupling.hpp"

#include <cmath>

#include "nsolab/error.hpp"

namespace nsolab {

Coupling::Coupling(cplx c) : c_(c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw DomainError("coupling must be finite");
  if (c.real() < 0.0 || std::abs(c) == 0.0)
    throw DomainError("coupling needs Re(c) >= 0 and c != 0");
  sqrt_c_ = std::sqrt(c_);
  quarter_c_ = std::sqrt(sqrt_c_);
  eighth_c_ = std::sqrt(quarter_c_);
  theta_ = std::arg(c_);
}

bool Sector::contains(cplx z, double angle_tol) const {
  if (z == cplx(0.0, 0.0)) return !excludes_origin;
  double a = std::arg(z);
  bool above = closed_edges[0] ? a >= lower - angle_tol : a > lower;
  bool below = closed_edges[1] ? a <= upper + angle_tol : a < upper;
  return above && below;
}

}  // namespace nsolab
