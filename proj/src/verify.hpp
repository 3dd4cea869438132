#pragma once

#include <string>
#include <vector>

namespace qtomo {

struct CheckResult {
  std::string name;
  bool passed;
  double measured;   // worst deviation (or the reported score)
  double tolerance;  // 0 for report-only entries
  std::string detail;
};

struct VerifyOptions {
  std::vector<double> qs{0.5, 0.7, 0.9};
};

// Runs every invariant suite; report-only entries (tolerance 0) never fail.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);
std::string verification_report_text(const std::vector<CheckResult>& results);
std::string verification_report_json(const std::vector<CheckResult>& results);

}  // namespace qtomo
