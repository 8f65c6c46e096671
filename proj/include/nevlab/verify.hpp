#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nevlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;

  /// "PASS 1 fmt_exactness: ... (0.41 s)"
  std::string line() const;
};

struct VerifyOptions {
  int threads = 0;
  std::uint64_t seed = 7;
};

/// Acceptance criteria 1..10. A criterion passes only within its time limit.
CriterionResult run_criterion(int id, const VerifyOptions& opt);

/// "all", a criterion name ("fmt", "wronskian", "nochka", "divisor", "jacobi",
/// "bm-flat", "bm-disc", "ldl", "smt", "determinism") or a comma list of
/// ids. InvalidInput otherwise.
std::vector<int> suite_ids(const std::string& suite);

const char* criterion_name(int id);

}  // namespace nevlab
