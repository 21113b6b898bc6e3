#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "nsolab/acceptance.hpp"

int main(int argc, char** argv) {
  nsolab::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  if (const char* w = std::getenv("NSO_WORKERS")) opt.workers = std::max(1, std::atoi(w));
  int failed = 0;
  nsolab::run_acceptance(opt, [&](const nsolab::CriterionResult& r) {
    std::printf("%s\n", nsolab::format_result_line(r).c_str());
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  });
  std::printf("%s\n", failed == 0 ? "all criteria passed" : "some criteria failed");
  return failed == 0 ? 0 : 1;
}
