// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits non-zero if any criterion fails.
#include <cstdio>

#include "rmpsim/verify.hpp"

int main() {
  const auto results = rmpsim::verify::run_suite("all");
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %d %-28s measured %.3e  tolerance %.3e  (%s)\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured,
                r.tolerance, r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria pass"
                          : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
