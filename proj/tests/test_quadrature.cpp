#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nsolab/quadrature.hpp"

using namespace nsolab;

TEST_SUITE("quadrature") {
  TEST_CASE("gauss-legendre is exact for degree 2n-1") {
    Rule r = gauss_legendre(10);
    double s = 0.0, w = 0.0;
    for (size_t k = 0; k < r.nodes.size(); ++k) {
      s += r.weights[k] * std::pow(r.nodes[k], 18);
      w += r.weights[k];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));

    Rule ab = gauss_legendre(8, 1.0, 3.0);
    double t = 0.0;
    for (size_t k = 0; k < ab.nodes.size(); ++k) t += ab.weights[k] * std::pow(ab.nodes[k], 15);
    CHECK(t == doctest::Approx((std::pow(3.0, 16) - 1.0) / 16.0).epsilon(1e-14));
  }

  TEST_CASE("gauss-hermite moments") {
    Rule r = gauss_hermite(20);
    for (int k = 0; k <= 19; ++k) {
      double s = 0.0;
      for (size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * std::pow(r.nodes[j], 2 * k);
      double exact = std::tgamma(k + 0.5);
      CHECK(s == doctest::Approx(exact).epsilon(1e-10));
    }
  }

  TEST_CASE("adaptive integration of smooth and peaked integrands") {
    std::vector<double> b{0.0, std::numbers::pi};
    auto r = integrate_adaptive([](double x) { return std::sin(x); }, b);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));

    std::vector<double> g{-10.0, 0.0, 10.0};
    auto q = integrate_adaptive([](double x) { return std::exp(-x * x); }, g);
    CHECK(q.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));

    std::vector<double> p{-1.0, 1.0};
    auto z = integrate_adaptive([](double x) { return std::complex<double>(1.0 / (1e-4 + x * x), x); }, p);
    CHECK(z.value.real() == doctest::Approx(2.0 * std::atan(100.0) * 100.0).epsilon(1e-11));
    CHECK(std::abs(z.value.imag()) < 1e-12);
  }

  TEST_CASE("panel budget is honoured") {
    std::vector<double> b{0.0, 1.0};
    AdaptiveOptions opt;
    opt.max_panels = 3;
    auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, b, opt);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 3);
  }
}
