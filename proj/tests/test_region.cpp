#include <doctest.h>

#include <numbers>

#include "nsolab/error.hpp"
#include "nsolab/quasimode.hpp"
#include "nsolab/region.hpp"
#include "nsolab/spectral.hpp"

using namespace nsolab;
using std::numbers::pi;

TEST_SUITE("region") {
  TEST_CASE("shifted sector geometry") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c, 0.5);
    CHECK(std::abs(r.apex - 0.5 * c.sqrt_c()) < 1e-15);
    CHECK(region_contains(r, r.apex));
    CHECK(region_contains(r, r.apex + 3.0));
    CHECK(region_contains(r, r.apex + cplx(0.0, 3.0)));
    CHECK(region_contains(r, r.apex + cplx(1.0, 1.0)));
    CHECK_FALSE(region_contains(r, r.apex + cplx(-0.1, 1.0)));
    CHECK_FALSE(region_contains(r, r.apex + cplx(1.0, -0.1)));
    for (int n = 0; n < 10; ++n) CHECK(region_contains(r, eigenvalue(c, n)));
    CHECK_FALSE(r.describe().empty());
  }

  TEST_CASE("sector plus disks geometry") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::sector_plus_disks(c, 1, 0.5);
    REQUIRE(r.disk_centers.size() == 2);
    CHECK(region_contains(r, eigenvalue(c, 0) + 0.4));
    CHECK(region_contains(r, eigenvalue(c, 1) + cplx(0.0, 0.4)));
    CHECK(region_contains(r, eigenvalue(c, 2)));
    CHECK_FALSE(region_contains(r, eigenvalue(c, 0) + 0.6));
    CHECK_THROWS_AS(InclusionRegion::sector_plus_disks(c, -1, 0.5), DomainError);
  }

  TEST_CASE("constructive certificate holds and refines") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c, 0.5);
    ResolventEngine e(c, 32);
    GridScan coarse = pseudospectra_grid(e, {0.0, 6.0, 0.0, 6.0}, {21, 21}, {});
    double eps = constructive_epsilon(coarse, r);
    CHECK(eps > 0.0);
    Certificate a = inclusion_certificate(coarse, r, eps);
    CHECK(a.holds);
    CHECK(a.violations.empty());
    CHECK(a.flagged_nodes > 0);
    GridScan fine = pseudospectra_grid(e, {0.0, 6.0, 0.0, 6.0}, {41, 41}, {});
    CHECK(inclusion_certificate(fine, r, eps).holds);
  }

  TEST_CASE("inclusion is monotone in epsilon") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c, 0.5);
    GridScan g = pseudospectra_grid(c, {0.0, 6.0, 0.0, 6.0}, {9, 9}, {}, 32);
    for (double big : {2.0, 1.0, 0.5})
      if (inclusion_certificate(g, r, big).holds)
        for (double small : {0.25, 0.1, 0.01}) CHECK(inclusion_certificate(g, r, small).holds);
    Certificate v = inclusion_certificate(g, r, 10.0);
    CHECK_FALSE(v.holds);
    CHECK_FALSE(v.violations.empty());
  }

  TEST_CASE("certificate needs reliable nodes") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c, 0.5);
    GridScan g = pseudospectra_grid(c, {60.0, 61.0, 60.0, 61.0}, {2, 2}, {}, 16);
    CHECK_THROWS_AS(inclusion_certificate(g, r, 0.1), DomainError);
  }

  TEST_CASE("large-eta quasimodes exceed the certified level inside the region") {
    Coupling c(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c, 0.5);
    GridScan g = pseudospectra_grid(c, {0.0, 6.0, 0.0, 6.0}, {13, 13}, {}, 32);
    double eps = constructive_epsilon(g, r);
    QuasimodeReport q = quasimode_report(QuasimodeParams::make(c, 1.0, 2.0, 3e8));
    CHECK(q.lower_bound > 1.0 / eps);
    CHECK(region_contains(r, q.params.z_eta()));
  }

  TEST_CASE("reference memberships") {
    Coupling ci(0.0, 1.0);
    InclusionRegion s = InclusionRegion::shifted_sector(ci, 0.5);
    CHECK(region_contains(s, eigenvalue(ci, 0)));
    CHECK_FALSE(region_contains(s, 0.1));
    InclusionRegion d = InclusionRegion::sector_plus_disks(ci, 1, 0.3);
    CHECK(region_contains(d, eigenvalue(ci, 1) + 0.2 * std::polar(1.0, pi / 3)));
  }

  TEST_CASE("self-adjoint certificate") {
    Coupling c1(1.0, 0.0);
    InclusionRegion r = InclusionRegion::shifted_sector(c1, 0.5);
    GridScan g = pseudospectra_grid(c1, {0.0, 8.0, -1.0, 1.0}, {9, 5}, {}, 32);
    CHECK(inclusion_certificate(g, r, 0.4).holds);
  }

  TEST_CASE("large epsilon leaks out near the real axis") {
    Coupling ci(0.0, 1.0);
    InclusionRegion r = InclusionRegion::shifted_sector(ci, 0.5);
    GridScan g = pseudospectra_grid(ci, {0.0, 6.0, 0.0, 6.0}, {13, 13}, {}, 32);
    Certificate c = inclusion_certificate(g, r, 10.0);
    CHECK_FALSE(c.holds);
    bool near_axis = false;
    for (const auto& v : c.violations) near_axis = near_axis || v.z.imag() < 0.5;
    CHECK(near_axis);
  }
}
