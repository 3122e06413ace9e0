#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace nncolor {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240501;
  /// Directory holding lzz_c0.json.
  std::string fixture_dir;
  /// Criteria to run; empty runs all twelve.
  std::set<int> only;
};

/// c0 recorded by the calibration tool. Throws std::runtime_error when the fixture is missing.
double load_lzz_c0(const std::string& fixture_dir);

/// Runs the acceptance criteria in order; `on_result` sees each result as it completes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 name: detail (1.2 s)"
std::string format_result(const CriterionResult& r);

}  // namespace nncolor
