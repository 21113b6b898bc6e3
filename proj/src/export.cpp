#include "nsolab/export.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

namespace nsolab {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

static std::string csv_text(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
  return s;
}

static json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_grid_csv(std::ostream& os, const GridScan& g) {
  os << "re,im,norm,reliable,relgap\n";
  for (const auto& s : g.samples)
    os << format_number(s.z.real()) << ',' << format_number(s.z.imag()) << ',' << format_number(s.norm) << ','
       << (s.reliable ? 1 : 0) << ',' << format_number(s.diagnostics.rel_gap) << '\n';
}

void write_contour_json(std::ostream& os, const GridScan& g) {
  json j;
  j["epsilons"] = g.epsilons;
  j["nx"] = g.resolution.nx;
  j["ny"] = g.resolution.ny;
  json nodes = json::array();
  for (const auto& s : g.samples) nodes.push_back({s.z.real(), s.z.imag(), json_number(s.norm)});
  j["nodes"] = std::move(nodes);
  os << j.dump() << '\n';
}

void write_scan_csv(std::ostream& os, const ScanResult& s) {
  os << "parameter,re,im,value,reliable,relgap,status,label\n";
  for (const auto& p : s.points)
    os << format_number(p.parameter) << ',' << format_number(p.z.real()) << ',' << format_number(p.z.imag()) << ','
       << format_number(p.value) << ',' << (p.reliable ? 1 : 0) << ',' << format_number(p.rel_gap) << ','
       << to_string(p.status) << ',' << csv_text(p.label) << '\n';
}

void write_decay_csv(std::ostream& os, const ScanResult& s) {
  os << "t,norm,fitted_exponent_so_far\n";
  for (const auto& p : s.points)
    os << format_number(p.parameter) << ',' << format_number(p.value) << ',' << format_number(p.running_fit) << '\n';
}

void write_quasimode_csv(std::ostream& os, const std::vector<QuasimodeReport>& reports) {
  os << "eta,norm_sq,residual,ratio,lower_bound,piece1,piece2,piece3\n";
  for (const auto& r : reports)
    os << format_number(r.params.eta) << ',' << format_number(r.norm_sq) << ',' << format_number(r.residual_norm)
       << ',' << format_number(r.ratio) << ',' << format_number(r.lower_bound) << ',' << format_number(r.pieces[0])
       << ',' << format_number(r.pieces[1]) << ',' << format_number(r.pieces[2]) << '\n';
}

void write_index_csv(std::ostream& os, const std::vector<IndexRow>& rows) {
  os << "n,kappa_contour,kappa_biorthogonal,relgap\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_number(r.kappa_contour) << ',' << format_number(r.kappa_biorthogonal) << ','
       << format_number(r.rel_gap) << '\n';
}

void write_certificate_json(std::ostream& os, const Certificate& cert, const InclusionRegion& region) {
  json j;
  j["epsilon"] = cert.epsilon;
  j["region"] = region.describe();
  j["holds"] = cert.holds;
  j["reliable_nodes"] = cert.reliable_nodes;
  j["flagged_nodes"] = cert.flagged_nodes;
  json v = json::array();
  for (const auto& s : cert.violations)
    v.push_back({{"re", s.z.real()}, {"im", s.z.imag()}, {"norm", json_number(s.norm)},
                 {"relgap", json_number(s.diagnostics.rel_gap)}});
  j["violations"] = std::move(v);
  os << j.dump(2) << '\n';
}

}  // namespace nsolab
