#pragma once

// The twelve acceptance criteria at their stated tolerances. Each criterion
// is a set of parts; it passes when every part does.

#include <string>
#include <vector>

#include "opkit/report.hpp"

namespace opkit {

struct CriterionOutcome {
  int id = 0;
  std::string title;
  std::vector<Check> parts;
  bool passed = false;
  std::string note;
};

struct AcceptanceOptions {
  unsigned long long seed = 20240917ULL;
  bool parallel = true;
};

/// Results sorted by id regardless of completion order.
std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  7 multiplier model  law=2.1e-16/1e-10 ..." style summary line.
std::string summary_line(const CriterionOutcome& c);

}  // namespace opkit
