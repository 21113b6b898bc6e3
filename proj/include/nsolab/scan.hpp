#pragma once

#include <map>
#include <string>
#include <vector>

#include "nsolab/coupling.hpp"

namespace nsolab {

enum class NodeStatus { ok, collision, error };

const char* to_string(NodeStatus s);

struct ScanPoint {
  double parameter = 0.0;
  cplx z;
  double value = 0.0;
  bool reliable = false;
  double rel_gap = 0.0;
  double running_fit = 0.0;  // scans that fit a rate report the fit over samples so far
  NodeStatus status = NodeStatus::ok;
  std::string label;
};

// Tagged table of sampled points plus named summary numbers.
struct ScanResult {
  std::string tag;
  std::vector<ScanPoint> points;
  std::map<std::string, double> summary;

  double get(const std::string& key) const;
};

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nsolab
