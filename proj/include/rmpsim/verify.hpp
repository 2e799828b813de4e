#pragma once

#include "rmpsim/oracle.hpp"
#include "rmpsim/scenario.hpp"

namespace rmpsim {
namespace verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;   // the quantity compared against the tolerance
  double tolerance = 0.0;
  std::string detail;
};

// The nine acceptance checks. Each is self-contained and deterministic.
CriterionResult controller_equivalence();      // 1: RMP tree vs closed form
CriterionResult collision_free();              // 2: barrier keeps d > d_s
CriterionResult centralized_stability();       // 3: Lyapunov + convergence
CriterionResult decentralized_stability();     // 4: partial-flow Lyapunov
CriterionResult partial_flow_equivalence();    // 5: constant-metric match
CriterionResult degree_normalization();        // 6: both controllers settle
CriterionResult formation_contrast();          // 7: 1-d vs product edges
CriterionResult curvature_correctness();       // 8: analytic vs FD terms
CriterionResult restructuring_invariance();    // 9: grouped vs flat trees

/// suite in {curvature, equivalence, lyapunov, collision, all}. Throws
/// std::invalid_argument on an unknown suite name.
std::vector<CriterionResult> run_suite(const std::string& suite);

std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace verify
}  // namespace rmpsim
