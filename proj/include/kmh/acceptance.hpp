#pragma once

// The acceptance suite: ten end-to-end checks with time limits, shared by the CLI and the
// acceptance test binary.

#include "kmh/presets.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmh {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;  ///< short summary, or the first failed check
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  /// Run only the criteria whose id or name matches (empty = all).
  std::vector<std::string> only;
  /// Replaces bundled presets by name (used to check that broken inputs fail loudly).
  std::map<std::string, Preset> presetOverrides;
  /// Called with each result as soon as it is available.
  std::function<void(const CriterionResult&)> onResult;
};

/// Criterion names in order: sl3-example, right-angled, affine-sl2, rank2-classification,
/// endomorphisms, algebra-oracles, coxeter-oracles, generalized-weights, dihedral, weighted.
const std::vector<std::string>& criterion_names();

/// Runs criterion `id` (1-based). Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// "PASS  3 affine-sl2  0.41 s / 10 s  <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace kmh
