#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rei/regex.hpp"

namespace rei {

/// One inference problem's example strings. P must be disjoint from N and
/// each list must be duplicate-free; order is significant (it fixes the
/// footprint packing order and the trivial-solution shape).
struct PNSet {
  std::vector<std::string> pos;
  std::vector<std::string> neg;

  bool operator==(const PNSet&) const = default;
};

/// A gold or solver-produced answer attached to an instance.
struct SolutionRecord {
  std::string regex;      // canonical printed form
  std::int64_t cost = 0;  // under the instance's cost function
  /// Present for solver output: true when the search completed, false when
  /// a resource cap forced an anytime answer.
  std::optional<bool> minimal;

  bool operator==(const SolutionRecord&) const = default;
};

/// A full inference problem: example strings plus the cost function and the
/// operator set that answers are drawn from.
struct Instance {
  std::string id;
  std::string sigma = "01";
  PNSet pn;
  OperatorSet ops = OperatorSet::reduced();
  CostFunction costs;
  std::optional<SolutionRecord> solution;
  /// Per-instance failure note (e.g., written by the solve command when an
  /// instance is rejected); instances with errors carry no solution.
  std::optional<std::string> error;

  bool operator==(const Instance&) const = default;
};

}  // namespace rei
