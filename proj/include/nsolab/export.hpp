#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nsolab/projectors.hpp"
#include "nsolab/quasimode.hpp"
#include "nsolab/region.hpp"
#include "nsolab/resolvent.hpp"

namespace nsolab {

// Round-trip decimal text; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

void write_grid_csv(std::ostream& os, const GridScan& g);             // re,im,norm,reliable,relgap
void write_contour_json(std::ostream& os, const GridScan& g);         // {epsilons, nodes:[[re,im,norm]]}
void write_scan_csv(std::ostream& os, const ScanResult& s);           // parameter,re,im,value,reliable,relgap,status,label
void write_decay_csv(std::ostream& os, const ScanResult& s);          // t,norm,fitted_exponent_so_far
void write_quasimode_csv(std::ostream& os, const std::vector<QuasimodeReport>& reports);
void write_index_csv(std::ostream& os, const std::vector<IndexRow>& rows);
void write_certificate_json(std::ostream& os, const Certificate& cert, const InclusionRegion& region);

}  // namespace nsolab
