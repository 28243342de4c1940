#pragma once

#include <cstdint>
#include <vector>

#include "rei/footprint.hpp"
#include "rei/instance.hpp"
#include "rei/regex.hpp"

namespace rei {

struct SolveCaps {
  /// Maximum distinct footprints retained across all strata. Checked when a
  /// stratum is sealed, so runs degrade at deterministic points.
  std::uint64_t max_footprints = 10000000;
  /// Wall-clock budget in seconds; 0 disables the clock. Unlike the
  /// footprint cap, hitting it mid-stratum is inherently timing-dependent,
  /// but the degraded answer is still the deterministic fallback regex.
  double max_seconds = 0.0;
  int workers = 1;
  /// When nonzero, every Nth retained footprint is copied into
  /// SolveResult::samples together with its witness regex.
  std::uint64_t audit_stride = 0;
};

struct Solution {
  Regex regex = Regex::empty_set();
  std::int64_t cost = 0;
  /// True when the search completed and proved no cheaper precise regex
  /// exists; false when a resource cap forced the anytime fallback.
  bool minimal = false;
};

struct AuditSample {
  Regex regex = Regex::empty_set();
  Footprint footprint;
};

struct SolveStats {
  std::uint64_t retained_footprints = 0;
  std::uint64_t candidates = 0;
  std::uint64_t strata_sealed = 0;
  bool cap_hit = false;
  double wall_seconds = 0.0;
};

struct SolveResult {
  Solution solution;
  SolveStats stats;
  std::vector<AuditSample> samples;
};

/// Exact inference by cost-stratified bottom-up enumeration with footprint
/// deduplication. The returned regex is always precise (re-verified through
/// the derivative matcher); minimal=true additionally certifies that every
/// cheaper expression over the instance's operator set was covered.
/// Throws InfeasibleError when P and N overlap, DataError on malformed
/// instances (bad alphabet, example strings outside it).
SolveResult solve(const Instance& inst, const SolveCaps& caps = {});

/// Cost of the union-of-positives solution under the instance's cost
/// function; every instance is solvable at or below this cost.
std::int64_t trivial_cost_bound(const Instance& inst);

}  // namespace rei
