#pragma once

#include <complex>

#include "nsolab/coupling.hpp"

namespace nsolab {

inline constexpr int kMaxHermiteDegree = 1000;

// A complex number stored as log-magnitude and phase.
struct LogValue {
  double log_abs = 0.0;
  double phase = 0.0;

  // Throws OverflowError when exp(log_abs) is not representable; underflow gives 0.
  cplx value() const;
};

struct EigenData {
  int n = 0;
  cplx lambda_n;
};

struct NumericalRangePoint {
  double t1 = 0.0;
  double t2 = 0.0;
  cplx z;
  bool member = false;
};

enum class RangeClass { interior, boundary, exterior };

const char* to_string(RangeClass r);

cplx eigenvalue(const Coupling& c, int n);
EigenData eigen_data(const Coupling& c, int n);

// Physicists' Hermite polynomial H_n(w) by the three-term recurrence.
LogValue hermite_log(int n, cplx w);

LogValue eigenfunction_log(const Coupling& c, int n, double x);
cplx eigenfunction_eval(const Coupling& c, int n, double x);

// z = t1 + c t2; requires Im(c) != 0.
NumericalRangePoint decompose(const Coupling& c, cplx z);
RangeClass numerical_range_membership(const Coupling& c, cplx z, double tol_scale = 1e-9);
cplx numerical_range_boundary(const Coupling& c, double t);

cplx symmetry_reflect(const Coupling& c, cplx z);

Sector maximal_sector(const Coupling& c);

}  // namespace nsolab
