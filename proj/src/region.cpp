#include "nsolab/region.hpp"

#include <cmath>
#include <cstdio>

#include "nsolab/error.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

static void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("region delta must lie in (0, 1)");
}

InclusionRegion InclusionRegion::shifted_sector(const Coupling& c, double delta) {
  check_delta(delta);
  InclusionRegion r;
  r.kind = RegionKind::shifted_sector;
  r.coupling = c;
  r.delta = delta;
  r.lower_angle = std::min(0.0, c.theta());
  r.upper_angle = std::max(0.0, c.theta());
  r.apex = delta * c.sqrt_c();
  return r;
}

InclusionRegion InclusionRegion::sector_plus_disks(const Coupling& c, int m, double delta) {
  check_delta(delta);
  if (m < 0) throw DomainError("region index m must be nonnegative");
  InclusionRegion r = shifted_sector(c, delta);
  r.kind = RegionKind::sector_plus_disks;
  r.m = m;
  r.apex = eigenvalue(c, m + 1) - delta * std::polar(1.0, c.theta() / 2.0);
  for (int n = 0; n <= m; ++n) r.disk_centers.push_back(eigenvalue(c, n));
  r.disk_radius = delta;
  return r;
}

std::string InclusionRegion::describe() const {
  char buf[256];
  if (kind == RegionKind::shifted_sector)
    std::snprintf(buf, sizeof buf, "shifted_sector(delta=%.17g, apex=(%.17g,%.17g), angles=[%.17g,%.17g])", delta,
                  apex.real(), apex.imag(), lower_angle, upper_angle);
  else
    std::snprintf(buf, sizeof buf,
                  "sector_plus_disks(m=%d, delta=%.17g, apex=(%.17g,%.17g), angles=[%.17g,%.17g])", m, delta,
                  apex.real(), apex.imag(), lower_angle, upper_angle);
  return buf;
}

bool region_contains(const InclusionRegion& r, cplx z, double angle_tol) {
  for (auto c : r.disk_centers)
    if (std::abs(z - c) < r.disk_radius) return true;
  cplx w = z - r.apex;
  if (w == cplx(0.0, 0.0)) return true;
  double a = std::arg(w);
  return a >= r.lower_angle - angle_tol && a <= r.upper_angle + angle_tol;
}

Certificate inclusion_certificate(const GridScan& grid, const InclusionRegion& r, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("certificate epsilon must be positive");
  Certificate cert;
  cert.epsilon = epsilon;
  for (const auto& s : grid.samples) {
    if (!s.reliable) continue;
    ++cert.reliable_nodes;
    if (s.norm >= 1.0 / epsilon) {
      ++cert.flagged_nodes;
      if (!region_contains(r, s.z)) cert.violations.push_back(s);
    }
  }
  if (cert.reliable_nodes == 0) throw DomainError("grid has no reliable nodes");
  cert.holds = cert.violations.empty();
  return cert;
}

double constructive_epsilon(const GridScan& grid, const InclusionRegion& r, double safety) {
  double worst = 0.0;
  int reliable = 0;
  for (const auto& s : grid.samples) {
    if (!s.reliable) continue;
    ++reliable;
    if (!region_contains(r, s.z)) worst = std::max(worst, s.norm);
  }
  if (reliable == 0) throw DomainError("grid has no reliable nodes");
  if (worst == 0.0) throw DomainError("no reliable node lies outside the region");
  return safety / worst;
}

}  // namespace nsolab
