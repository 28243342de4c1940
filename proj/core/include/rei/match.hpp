#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rei/regex.hpp"

namespace rei {

/// True iff the empty string is in L(r).
bool nullable(const Regex& r);

/// Brzozowski derivative: L(result) = { w | aw in L(r) }. Applies local
/// language-preserving simplifications so iterated derivatives stay small.
Regex derivative(const Regex& r, char a);

/// Membership test: folds derivative over w, then checks nullability.
bool matches(const Regex& r, std::string_view w);

/// Test oracle computed by direct set recursion over the language clauses,
/// entirely independent of the derivative code: returns L(r) intersected
/// with all strings over sigma of length <= max_len, sorted by length then
/// lexicographically. Throws ResourceLimitError when |sigma|^(max_len+1)
/// exceeds string_cap.
std::vector<std::string> bounded_language(const Regex& r, std::string_view sigma,
                                          std::size_t max_len,
                                          std::uint64_t string_cap = 1u << 20);

}  // namespace rei
