#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rei/instance.hpp"
#include "rei/scoring.hpp"

namespace rei {

/// Instance files are JSON Lines: one object per line with fields id,
/// sigma, pos, neg, ops, costs, and optionally solution or error (see
/// docs/FORMATS.md). Readers validate every invariant (alphabet sanity,
/// string membership, in-set duplicates, cost positivity, stored solutions
/// parsing/precision/cost agreement) and throw DataError with a 1-based
/// line number. A P/N overlap is not a read error; the solver reports it
/// per instance.
void write_instances(const std::string& path, const std::vector<Instance>& instances);
std::vector<Instance> read_instances(const std::string& path);

/// Prediction files are `id TAB regex-text` lines. Duplicate ids are
/// DataErrors on read; regex text is not validated here.
void write_predictions(const std::string& path, const std::vector<Prediction>& preds);
std::vector<Prediction> read_predictions(const std::string& path);

/// Token encoding of one instance: [CLS], each positive as [POS] + its
/// symbols (binary literals as ZERO/ONE, the empty string as 'e'),
/// negatives with [NEG], one [COST_X] + decimal digit tokens per relevant
/// operator in the order A ? * . + ~ & -, then [BOR] and, when a solution
/// is present, its regex characters (again ZERO/ONE for binary literals)
/// and [EOR].
std::vector<std::string> encode_tokens(const Instance& inst);

/// Inverse of encode_tokens for binary-alphabet instances. The id is not
/// part of the encoding and comes back empty; the operator set is inferred
/// from the cost tokens present (the reduced set or the full set);
/// operators outside it get kDisabledOpCost.
Instance decode_tokens(const std::vector<std::string>& tokens);

/// Splits by solution equivalence: instances sharing PN content stay
/// together, and groups sharing any canonical solution regex are merged,
/// so no test solution ever appears in training. Components are shuffled
/// with the seed and assigned greedily to test until it holds about
/// ratio * |instances|. Throws InfeasibleError when 0 < ratio < 1 but
/// everything is one component; outputs preserve input order.
std::pair<std::vector<Instance>, std::vector<Instance>>
split_train_test(const std::vector<Instance>& instances, double ratio, std::uint64_t seed);

}  // namespace rei
