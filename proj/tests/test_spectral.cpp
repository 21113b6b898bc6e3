#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nsolab/error.hpp"
#include "nsolab/quadrature.hpp"
#include "nsolab/spectral.hpp"

using namespace nsolab;
using std::numbers::pi;

namespace {

// Explicit physicists' Hermite polynomials.
cplx hermite_explicit(int n, cplx w) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * w;
    case 2: return 4.0 * w * w - 2.0;
    case 3: return 8.0 * w * w * w - 12.0 * w;
    case 4: return 16.0 * std::pow(w, 4) - 48.0 * w * w + 12.0;
    default: return 32.0 * std::pow(w, 5) - 160.0 * std::pow(w, 3) + 120.0 * w;
  }
}

std::vector<Coupling> couplings() {
  return {Coupling(0.0, 1.0), Coupling(1.0, 1.0), Coupling(std::polar(1.0, pi / 6)), Coupling(2.0, 0.5),
          Coupling(0.3, 3.0)};
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("coupling validation") {
    CHECK_THROWS_AS(Coupling(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(Coupling(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Coupling(std::nan(""), 1.0), DomainError);
    CHECK_NOTHROW(Coupling(0.0, 1.0));
    Coupling c(0.0, 1.0);
    CHECK(std::abs(c.sqrt_c() - std::polar(1.0, pi / 4)) < 1e-15);
    CHECK(std::abs(c.quarter_c() - std::polar(1.0, pi / 8)) < 1e-15);
    CHECK(std::abs(c.eighth_c() - std::polar(1.0, pi / 16)) < 1e-15);
    CHECK(c.theta() == doctest::Approx(pi / 2));
  }

  TEST_CASE("eigenvalues follow sqrt(c)(2n+1)") {
    Coupling ci(0.0, 1.0);
    for (int n = 0; n < 5; ++n)
      CHECK(std::abs(eigenvalue(ci, n) - std::polar(1.0, pi / 4) * double(2 * n + 1)) < 1e-14 * (2 * n + 1));
    Coupling c1(1.0, 0.0);
    for (int n = 0; n < 10; ++n) CHECK(eigenvalue(c1, n) == cplx(2 * n + 1));
    CHECK(eigen_data(ci, 3).n == 3);
    CHECK_THROWS_AS(eigenvalue(ci, -1), DomainError);
  }

  TEST_CASE("hermite recurrence matches explicit polynomials") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
      cplx w(u(rng), u(rng));
      for (int n = 0; n <= 5; ++n) {
        cplx h = hermite_log(n, w).value(), e = hermite_explicit(n, w);
        CHECK(std::abs(h - e) <= 1e-12 * std::max(1.0, std::abs(e)));
      }
    }
  }

  TEST_CASE("hermite of high degree stays finite in log form") {
    LogValue h = hermite_log(kMaxHermiteDegree, cplx(30.0, 5.0));
    CHECK(std::isfinite(h.log_abs));
    CHECK(h.log_abs > 700.0);
    CHECK_THROWS_AS(h.value(), OverflowError);
    CHECK_THROWS_AS(hermite_log(kMaxHermiteDegree + 1, 1.0), DomainError);
  }

  TEST_CASE("log value underflow gives zero") {
    LogValue v{-1e4, 0.3};
    CHECK(v.value() == cplx(0.0));
    LogValue z{-std::numeric_limits<double>::infinity(), 0.0};
    CHECK(z.value() == cplx(0.0));
  }

  TEST_CASE("eigenfunctions solve the differential equation") {
    const double h = 1e-3;
    for (const auto& c : couplings())
      for (int n : {0, 1, 4}) {
        cplx lam = eigenvalue(c, n);
        for (double x : {-1.3, 0.2, 0.9, 2.1}) {
          cplx f = eigenfunction_eval(c, n, x);
          cplx d2 = (eigenfunction_eval(c, n, x + h) - 2.0 * f + eigenfunction_eval(c, n, x - h)) / (h * h);
          cplx res = -d2 + c.c() * x * x * f - lam * f;
          double scale = std::abs(lam * f) + std::abs(c.c() * x * x * f);
          CHECK(std::abs(res) < 1e-5 * scale);
        }
      }
  }

  TEST_CASE("eigenfunction phase convention at the origin") {
    Coupling c(0.0, 1.0);
    CHECK(std::abs(eigenfunction_eval(c, 0, 0.0) - std::polar(1.0, pi / 16)) < 1e-15);
  }

  TEST_CASE("bilinear biorthogonality") {
    Rule r = gauss_legendre(400, -14.0, 14.0);
    for (const auto& c : couplings()) {
      for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
          cplx pair = 0.0;
          double nn = 0.0, mm = 0.0;
          for (size_t k = 0; k < r.nodes.size(); ++k) {
            cplx a = eigenfunction_eval(c, n, r.nodes[k]), b = eigenfunction_eval(c, m, r.nodes[k]);
            pair += r.weights[k] * a * b;
            nn += r.weights[k] * std::norm(a);
            mm += r.weights[k] * std::norm(b);
          }
          if (n != m) CHECK(std::abs(pair) < 1e-12 * std::sqrt(nn * mm));
          else CHECK(std::abs(pair) > 1e-3 * nn);
        }
    }
  }

  TEST_CASE("spectrum lies inside the numerical range") {
    for (const auto& c : couplings())
      for (int n = 0; n <= 20; ++n) CHECK(numerical_range_membership(c, eigenvalue(c, n)) == RangeClass::interior);
  }

  TEST_CASE("boundary curve classifies as boundary") {
    for (const auto& c : couplings())
      for (int k = 0; k <= 60; ++k) {
        double t = std::pow(10.0, -3.0 + 6.0 * k / 60.0);
        CHECK(numerical_range_membership(c, numerical_range_boundary(c, t)) == RangeClass::boundary);
      }
  }

  TEST_CASE("membership of simple points") {
    Coupling c(0.0, 1.0);
    CHECK(numerical_range_membership(c, {-1.0, 0.0}) == RangeClass::exterior);
    CHECK(numerical_range_membership(c, {1.0, -1.0}) == RangeClass::exterior);
    CHECK(numerical_range_membership(c, {3.0, 3.0}) == RangeClass::interior);
    CHECK(numerical_range_membership(c, {0.1, 0.1}) == RangeClass::exterior);
    NumericalRangePoint p = decompose(c, {2.0, 3.0});
    CHECK(p.t1 == doctest::Approx(2.0));
    CHECK(p.t2 == doctest::Approx(3.0));
    CHECK(p.member);
    CHECK_THROWS_AS(decompose(Coupling(1.0, 0.0), {1.0, 0.0}), DegenerateCouplingError);
  }

  TEST_CASE("symmetry reflection is an involution") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (const auto& c : couplings())
      for (int k = 0; k < 100; ++k) {
        cplx z(u(rng), u(rng));
        cplx back = symmetry_reflect(c, symmetry_reflect(c, z));
        CHECK(std::abs(back - z) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z));
      }
    Coupling ci(0.0, 1.0);
    CHECK(std::abs(symmetry_reflect(ci, {1.0, 0.0}) - cplx(0.0, 1.0)) < 1e-15);
  }

  TEST_CASE("maximal sector") {
    Sector s = maximal_sector(Coupling(0.0, 1.0));
    CHECK(s.lower == doctest::Approx(-pi / 2));
    CHECK(s.upper == doctest::Approx(0.0));
    CHECK(s.closed_edges[0]);
    CHECK(s.contains(cplx(0.0, -1.0)));
    CHECK(s.contains(1.0));
    CHECK_FALSE(s.contains(cplx(1.0, 0.01)));
    CHECK_FALSE(s.contains(0.0));

    Sector r = maximal_sector(Coupling(1.0, 0.0));
    CHECK_FALSE(r.closed_edges[0]);
    CHECK_FALSE(r.contains(cplx(0.0, 1.0)));
    CHECK(r.contains(cplx(1e-3, 1.0)));

    Coupling c(std::polar(1.0, pi / 6));
    Sector t = maximal_sector(c);
    CHECK(t.upper == doctest::Approx(pi / 3));

    Sector m = maximal_sector(Coupling(1.0, -1.0));
    CHECK(m.lower == doctest::Approx(-pi / 4));
    CHECK(m.upper == doctest::Approx(pi / 2));
  }

  TEST_CASE("reference values") {
    CHECK(eigenvalue(Coupling(1.0, 0.0), 2) == cplx(5.0));
    CHECK(std::abs(eigenvalue(Coupling(0.0, 1.0), 0) - cplx(std::sqrt(0.5), std::sqrt(0.5))) < 1e-15);
    CHECK(std::abs(eigenvalue(Coupling(1.0, 1.0), 1) - 3.0 * std::sqrt(cplx(1.0, 1.0))) < 1e-14);

    CHECK(eigenfunction_eval(Coupling(1.0, 0.0), 0, 0.0) == cplx(1.0));
    CHECK(std::abs(eigenfunction_eval(Coupling(1.0, 0.0), 1, 1.0) - 2.0 * std::exp(-0.5)) < 1e-15);
    cplx f = eigenfunction_eval(Coupling(0.0, 1.0), 0, 2.0);
    CHECK(std::abs(f - std::polar(1.0, pi / 16) * std::exp(-2.0 * std::polar(1.0, pi / 4))) < 1e-15);
    CHECK(std::abs(f) == doctest::Approx(std::exp(-std::sqrt(2.0))));

    Coupling ci(0.0, 1.0);
    CHECK(numerical_range_membership(ci, {0.5, 0.5}) == RangeClass::boundary);
    CHECK(numerical_range_membership(ci, {1.0, 1.0}) == RangeClass::interior);
    CHECK(numerical_range_membership(ci, {0.1, 0.1}) == RangeClass::exterior);

    CHECK(numerical_range_boundary(Coupling(1.0, 0.0), 0.5) == cplx(1.0));
    CHECK(std::abs(numerical_range_boundary(ci, 1.0) - cplx(1.0, 0.25)) < 1e-15);
    CHECK(std::abs(numerical_range_boundary(ci, 0.5) - cplx(0.5, 0.5)) < 1e-15);

    cplx axis = std::polar(1.0, pi / 4);
    CHECK(std::abs(symmetry_reflect(ci, axis) - axis) < 1e-15);
    CHECK(std::abs(symmetry_reflect(ci, {2.0, 1.0}) - cplx(1.0, 2.0)) < 1e-15);
  }
}
