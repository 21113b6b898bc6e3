#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nsolab/error.hpp"
#include "nsolab/mehler.hpp"
#include "nsolab/quadrature.hpp"
#include "nsolab/spectral.hpp"

using namespace nsolab;
using std::numbers::pi;

namespace {

struct Sample {
  Coupling c;
  cplx tau;
};

// Random couplings in the open first quadrant and times inside their sectors.
std::vector<Sample> random_kernels(int couplings, int per, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Sample> out;
  for (int i = 0; i < couplings; ++i) {
    Coupling c(std::polar(std::exp(std::log(0.25) + u(rng) * std::log(16.0)), u(rng) * 0.999 * pi / 2));
    Sector s = maximal_sector(c);
    for (int k = 0; k < per; ++k) {
      double a = s.lower + (s.upper - s.lower) * u(rng);
      double r = std::exp(std::log(0.5) + u(rng) * std::log(8.0));
      out.push_back({c, std::polar(r, a)});
    }
  }
  return out;
}

// Spectral sum  sum_n exp(-lambda_n tau) Psi_n(x) Psi_n(y) / int Psi_n^2.
cplx kernel_series(const Coupling& c, cplx tau, double x, double y, int terms) {
  Rule r = gauss_legendre(600, -16.0, 16.0);
  cplx sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    cplx pair = 0.0;
    for (size_t k = 0; k < r.nodes.size(); ++k) {
      cplx v = eigenfunction_eval(c, n, r.nodes[k]);
      pair += r.weights[k] * v * v;
    }
    sum += std::exp(-eigenvalue(c, n) * tau) * eigenfunction_eval(c, n, x) * eigenfunction_eval(c, n, y) / pair;
  }
  return sum;
}

}  // namespace

TEST_SUITE("mehler") {
  TEST_CASE("real coupling reproduces the classical Mehler formula") {
    Coupling c(1.0, 0.0);
    for (double tau : {0.3, 1.0}) {
      MehlerKernel k = kernel_coefficients(c, tau);
      REQUIRE(k.valid);
      for (double x : {-1.0, 0.0, 0.7})
        for (double y : {-0.4, 1.2}) {
          double sh = std::sinh(2 * tau), ch = std::cosh(2 * tau);
          double expect = std::exp(-((x * x + y * y) * ch - 2 * x * y) / (2 * sh)) / std::sqrt(2 * pi * sh);
          CHECK(std::abs(kernel_eval(k, x, y) - expect) < 1e-14 * std::max(1.0, expect));
        }
    }
  }

  TEST_CASE("complex coupling matches the eigenfunction expansion") {
    for (cplx cc : {cplx(0.0, 1.0), std::polar(1.0, pi / 6)}) {
      Coupling c(cc);
      MehlerKernel k = kernel_coefficients(c, 1.0);
      for (double x : {-0.8, 0.3})
        for (double y : {0.0, 1.1}) {
          cplx series = kernel_series(c, 1.0, x, y, 30);
          CHECK(std::abs(kernel_eval(k, x, y) - series) < 1e-12);
        }
    }
  }

  TEST_CASE("coefficient identity") {
    for (const auto& s : random_kernels(10, 10, 31)) {
      MehlerKernel k = kernel_coefficients(s.c, s.tau);
      REQUIRE(k.valid);
      cplx lhs = k.w1 * k.w1 * pi * (1.0 - k.lambda * k.lambda);
      cplx rhs = s.c.sqrt_c() * k.lambda;
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    }
  }

  TEST_CASE("sign conditions hold inside the sector and fail just outside") {
    for (const auto& s : random_kernels(10, 1000, 41)) {
      MehlerKernel k = kernel_coefficients(s.c, s.tau);
      if (!k.valid) FAIL("invalid kernel inside the sector");
    }
    for (cplx cc : {cplx(0.0, 1.0), std::polar(1.0, pi / 6), cplx(1.0, 1.0)}) {
      Coupling c(cc);
      bool failed = false;
      for (double r : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        MehlerKernel k = kernel_coefficients(c, std::polar(r, pi / 2 - c.theta() + 0.05));
        CHECK_FALSE(k.in_sector);
        failed = failed || !k.valid;
      }
      CHECK(failed);
    }
  }

  TEST_CASE("invalid kernels refuse evaluation") {
    MehlerKernel k = kernel_coefficients(Coupling(1.0, 0.0), cplx(0.0, -1.0));
    CHECK_FALSE(k.valid);
    CHECK_THROWS_AS(kernel_eval(k, 0.0, 0.0), InvalidKernelError);
    CHECK_THROWS_AS(nystrom_build(k, 64), InvalidKernelError);
    CHECK_THROWS_AS(hs_norm(k, HsMethod::closed_form), InvalidKernelError);
  }

  TEST_CASE("Hilbert-Schmidt norm") {
    MehlerKernel k = kernel_coefficients(Coupling(1.0, 0.0), std::log(2.0) / 2.0);
    CHECK(std::abs(k.lambda - 0.5) < 1e-15);
    double h = hs_norm(k, HsMethod::closed_form);
    CHECK(std::abs(h * h - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(hs_norm(k, HsMethod::quadrature) - h) < 1e-10 * h);
    for (const auto& s : random_kernels(5, 10, 51)) {
      MehlerKernel q = kernel_coefficients(s.c, s.tau);
      double a = hs_norm(q, HsMethod::closed_form), b = hs_norm(q, HsMethod::quadrature);
      CHECK(std::abs(a - b) < 1e-8 * a);
    }
  }

  TEST_CASE("Nystrom discretization of the semigroup") {
    Coupling c(1.0, 0.0);
    MehlerKernel k = kernel_coefficients(c, std::log(2.0) / 2.0);
    NystromOperator op = nystrom_build(k, 64);
    CHECK(nystrom_norm(op) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(op.matrix.squaredNorm() == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(op.nodes.size() == 64);
    CHECK(recommended_node_count(10.0) >= 64);
    CHECK(recommended_node_count(60.0) % 32 == 0);
  }

  TEST_CASE("contraction on random kernels") {
    for (const auto& s : random_kernels(4, 50, 61)) {
      MehlerKernel k = kernel_coefficients(s.c, s.tau);
      double l = nystrom_half_width(k);
      CHECK(nystrom_norm(nystrom_build(k, recommended_node_count(l), l)) <= 1.0 + 1e-8);
    }
  }

  TEST_CASE("Nystrom eigenvalues follow the spectral mapping") {
    Coupling c(0.0, 1.0);
    MehlerKernel k = kernel_coefficients(c, 1.0);
    NystromOperator op = nystrom_build(k, 160);
    VectorXc ev = eigen_decompose(op.matrix, false).values;
    std::vector<cplx> v(ev.data(), ev.data() + ev.size());
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    for (int n = 0; n <= 5; ++n) {
      cplx expect = std::exp(-eigenvalue(c, n));
      CHECK(std::abs(v[n] - expect) < 1e-6 * std::abs(expect) + 1e-12);
    }
  }

  TEST_CASE("action and semigroup law checks") {
    for (cplx cc : {cplx(1.0, 0.0), cplx(0.0, 1.0), std::polar(1.0, pi / 6)}) {
      Coupling c(cc);
      for (cplx tau : {cplx(1.0), cplx(0.5)}) {
        MehlerKernel k = kernel_coefficients(c, tau);
        for (int n = 0; n <= 5; ++n) CHECK(semigroup_action_check(k, n) < 1e-9);
        CHECK(semigroup_law_check(c, tau, tau) < 1e-8);
      }
    }
    Coupling ci(0.0, 1.0);
    MehlerKernel edge = kernel_coefficients(ci, cplx(0.0, -1.0));
    CHECK(edge.valid);
    CHECK(semigroup_action_check(edge, 3) < 1e-9);
  }

  TEST_CASE("decay along sector directions") {
    std::vector<double> t;
    for (int k = 1; k <= 10; ++k) t.push_back(k);
    ScanResult r = edge_decay_scan(Coupling(1.0, 0.0), 0.0, t);
    CHECK(r.get("fitted_exponent") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.get("predicted_rate") == doctest::Approx(1.0));
    ScanResult e = edge_decay_scan(Coupling(0.0, 1.0), -pi / 2, t);
    CHECK(std::abs(e.get("tail_fitted_exponent") - std::sqrt(0.5)) < 1e-3);
    CHECK(std::abs(e.get("fitted_exponent") - std::sqrt(0.5)) < 0.02 * std::sqrt(0.5));
    CHECK(std::isnan(e.points.front().running_fit));
    CHECK_THROWS_AS(edge_decay_scan(Coupling(0.0, 1.0), 0.3, t), DomainError);
  }

  TEST_CASE("reference kernels") {
    MehlerKernel k = kernel_coefficients(Coupling(1.0, 0.0), std::log(2.0) / 2.0);
    CHECK(std::abs(k.lambda - 0.5) < 1e-15);
    CHECK(std::abs(k.w2 - 5.0 / 6.0) < 1e-14);
    CHECK(std::abs(k.w3 - 4.0 / 3.0) < 1e-14);
    CHECK(std::abs(k.w1 - std::sqrt(2.0 / (3.0 * pi))) < 1e-14);
    CHECK(std::abs(kernel_eval(k, 0.0, 0.0) - std::sqrt(2.0 / (3.0 * pi))) < 1e-14);
    CHECK_FALSE(kernel_coefficients(Coupling(1.0, 0.0), cplx(0.0, 0.7)).valid);
    for (double t : {0.3, 1.0, 4.0}) CHECK(kernel_coefficients(Coupling(0.0, 1.0), cplx(0.0, -t)).valid);

    MehlerKernel q = kernel_coefficients(Coupling(0.3, 1.2), cplx(0.8, -0.2));
    for (double x : {-1.0, 0.4})
      for (double y : {0.1, 2.0}) CHECK(kernel_eval(q, x, y) == kernel_eval(q, y, x));

    double tau = 8.0;
    MehlerKernel big = kernel_coefficients(Coupling(1.0, 0.0), tau);
    for (double x : {0.0, 0.5, -1.0}) {
      double ground = std::exp(-tau) / std::sqrt(pi) * std::exp(-x * x);
      CHECK(std::abs(kernel_eval(big, x, x) - ground) < 10.0 * std::exp(-tau) * std::abs(big.lambda));
    }
    MehlerKernel edge = kernel_coefficients(Coupling(0.0, 1.0), cplx(0.0, -1.0));
    CHECK(std::isfinite(hs_norm(edge, HsMethod::closed_form)));
  }

  TEST_CASE("Nystrom reference checks") {
    Coupling ci(0.0, 1.0);
    MehlerKernel k = kernel_coefficients(ci, 1.0);
    double a = nystrom_norm(nystrom_build(k, 64)), b = nystrom_norm(nystrom_build(k, 128));
    CHECK(std::abs(a - b) < 1e-8 * b);
    for (cplx tau : {cplx(1.0), cplx(0.0, -1.0), cplx(2.0, -1.0)}) {
      MehlerKernel q = kernel_coefficients(ci, tau);
      CHECK(std::abs(nystrom_build(q, 64).matrix.norm() - hs_norm(q, HsMethod::closed_form)) <
            1e-6 * hs_norm(q, HsMethod::closed_form));
    }
    MehlerKernel narrow = kernel_coefficients(ci, 0.5);
    double l = nystrom_half_width(narrow);
    CHECK(std::abs(nystrom_build(narrow, recommended_node_count(l), l).matrix.norm() -
                   hs_norm(narrow, HsMethod::closed_form)) < 1e-6 * hs_norm(narrow, HsMethod::closed_form));
  }

  TEST_CASE("reference action and law errors") {
    Coupling c1(1.0, 0.0), ci(0.0, 1.0);
    CHECK(semigroup_action_check(kernel_coefficients(c1, 1.0), 0) < 1e-10);
    CHECK(semigroup_action_check(kernel_coefficients(ci, 1.0), 0) < 1e-8);
    CHECK(semigroup_action_check(kernel_coefficients(ci, cplx(0.0, -1.0)), 2) < 1e-6);
    CHECK(semigroup_law_check(c1, 0.5, 0.5, 64) < 1e-8);
    CHECK(semigroup_law_check(ci, 0.5, 0.25) < 1e-8);
    CHECK(semigroup_law_check(ci, 0.5, cplx(0.0, -0.5)) < 1e-6);
  }

  TEST_CASE("edges decay at the same rate") {
    std::vector<double> t;
    for (int k = 1; k <= 20; ++k) t.push_back(k);
    Coupling ci(0.0, 1.0);
    double lo = edge_decay_scan(ci, -pi / 2, t).get("fitted_exponent");
    double up = edge_decay_scan(ci, 0.0, t).get("fitted_exponent");
    CHECK(std::abs(lo - std::sqrt(0.5)) < 0.02 * std::sqrt(0.5));
    CHECK(std::abs(up - lo) < 0.02 * lo);
  }
}
