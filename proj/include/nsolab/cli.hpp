#pragma once

#include <iosfwd>

namespace nsolab {

// Entry point of the nso-lab tool. Returns 0 on success, 1 on validation failure, 2 on usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsolab
