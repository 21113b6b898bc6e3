#pragma once

#include <array>
#include <complex>

namespace nsolab {

using cplx = std::complex<double>;

// Coupling c of H_c = -d^2/dx^2 + c x^2 with principal-branch roots.
// Accepted: Re(c) >= 0, c != 0 (so c = i is allowed).
class Coupling {
 public:
  explicit Coupling(cplx c);
  Coupling(double re, double im) : Coupling(cplx(re, im)) {}

  cplx c() const { return c_; }
  cplx sqrt_c() const { return sqrt_c_; }
  cplx quarter_c() const { return quarter_c_; }
  cplx eighth_c() const { return eighth_c_; }
  double theta() const { return theta_; }

  bool real() const { return c_.imag() == 0.0; }
  // Im(c) < 0 is served through the conjugate coupling.
  bool mirrored() const { return c_.imag() < 0.0; }
  Coupling conjugate() const { return Coupling(std::conj(c_)); }

 private:
  cplx c_, sqrt_c_, quarter_c_, eighth_c_;
  double theta_;
};

// Angular sector {lower < arg z < upper}, edges optionally included.
struct Sector {
  double lower = 0.0;
  double upper = 0.0;
  std::array<bool, 2> closed_edges{false, false};
  bool excludes_origin = true;

  bool contains(cplx z, double angle_tol = 1e-12) const;
};

}  // namespace nsolab
