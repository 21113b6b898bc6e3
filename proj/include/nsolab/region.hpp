#pragma once

#include <string>
#include <vector>

#include "nsolab/resolvent.hpp"

namespace nsolab {

enum class RegionKind { shifted_sector, sector_plus_disks };

// shifted_sector: closed sector 0 <= arg(z - apex) <= theta with apex delta c^{1/2}.
// sector_plus_disks: the same sector with apex lambda_{m+1} - delta e^{i theta/2},
// plus open disks |z - lambda_n| < delta for n <= m.
struct InclusionRegion {
  RegionKind kind = RegionKind::shifted_sector;
  Coupling coupling{1.0, 0.0};
  int m = 0;
  double delta = 0.5;
  double lower_angle = 0.0;
  double upper_angle = 0.0;
  cplx apex;
  std::vector<cplx> disk_centers;
  double disk_radius = 0.0;

  static InclusionRegion shifted_sector(const Coupling& c, double delta);
  static InclusionRegion sector_plus_disks(const Coupling& c, int m, double delta);
  std::string describe() const;
};

bool region_contains(const InclusionRegion& r, cplx z, double angle_tol = 1e-12);

struct Certificate {
  double epsilon = 0.0;
  bool holds = false;
  int reliable_nodes = 0;
  int flagged_nodes = 0;  // reliable nodes with norm >= 1/epsilon
  std::vector<ResolventSample> violations;
};

// Holds iff every reliable node with norm >= 1/epsilon lies in the region.
Certificate inclusion_certificate(const GridScan& grid, const InclusionRegion& r, double epsilon);
// safety / max{norm at reliable nodes outside the region}.
double constructive_epsilon(const GridScan& grid, const InclusionRegion& r, double safety = 0.9);

}  // namespace nsolab
