#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rei/instance.hpp"

namespace rei::testing {

/// A pinned solver check: the instance, the bound its answer must meet, and
/// an independently written reference regex that must verify precise at the
/// stated cost.
struct SolveVector {
  std::string name;
  Instance inst;
  std::int64_t max_cost = 0;
  bool exact = false;  // answer cost must equal max_cost, not just stay under
  std::string reference;
  std::int64_t reference_cost = 0;
  double budget_seconds = 0.0;
};

/// The six frozen single-instance checks used by the acceptance gate.
std::vector<SolveVector> solve_vectors();

/// 100 seeded small instances (le <= 3, |P|,|N| <= 3, uniform costs; first
/// half reduced operators, second half full) for cross-checking the solver
/// against the naive enumerator.
std::vector<Instance> oracle_instances();

}  // namespace rei::testing
