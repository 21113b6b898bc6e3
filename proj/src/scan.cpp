#include "nsolab/scan.hpp"

#include "nsolab/error.hpp"

namespace nsolab {

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::ok: return "ok";
    case NodeStatus::collision: return "collision";
    case NodeStatus::error: return "error";
  }
  return "?";
}

double ScanResult::get(const std::string& key) const {
  auto it = summary.find(key);
  if (it == summary.end()) throw DomainError("scan summary has no entry '" + key + "'");
  return it->second;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs >= 2 matching points");
  double n = double(x.size()), sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("slope fit needs distinct abscissae");
  return sxy / sxx;
}

}  // namespace nsolab
