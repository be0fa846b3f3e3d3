#pragma once

#include <string>
#include <vector>

namespace qcolor {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast invariant suite: encoding ground-state correspondence on all graphs
// up to 4 nodes, one-hot diagonal identity, synthesis-vs-exponential
// equivalence, fast-path equivalence, gradient cross-checks, and the
// uniform-state prob_valid identity. Designed to finish within a minute.
std::vector<VerifyCheck> verify_suite();

bool all_passed(const std::vector<VerifyCheck>& checks);
std::string verify_table(const std::vector<VerifyCheck>& checks);

}  // namespace qcolor
