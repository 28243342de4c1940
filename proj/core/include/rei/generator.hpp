#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rei/instance.hpp"
#include "rei/rng.hpp"

namespace rei {

/// Parameters for drawing one PN-set.
struct GenParams {
  enum class Scheme {
    kUniform,      // uniform over all strings of length <= le
    kLengthFirst,  // length uniform on 0..le, then uniform at that length
  };
  Scheme scheme = Scheme::kUniform;
  std::string sigma = "01";
  int le = 0;  // maximum string length
  int p = 1;   // |P|
  int n = 1;   // |N|
  std::uint64_t seed = 0;
};

/// Number of strings over sigma with length <= le, saturated at 2^62.
std::uint64_t universe_size(std::size_t sigma_size, int le);

/// One draw from the uniform-over-universe distribution.
std::string sample_string_uniform(SplitMix64& rng, std::string_view sigma, int le);

/// One draw from the length-first distribution.
std::string sample_string_length_first(SplitMix64& rng, std::string_view sigma, int le);

/// Draws a PN-set: p distinct positives then n distinct negatives, all
/// mutually distinct (rejection sampling from the scheme's distribution,
/// single RNG stream). Throws InfeasibleError when p + n exceeds the number
/// of available strings, DataError on bad parameters.
PNSet gen_pn(const GenParams& params);

/// Uniform costs in 1..49 for the atom and every operator in ops; operators
/// outside ops get kDisabledOpCost and consume no randomness. Fields are
/// drawn in declaration order (atom, ?, *, ~, ., &, +, -).
CostFunction gen_cost(OperatorSet ops, std::uint64_t seed);

/// Dataset description, parsed from a key = value text. Recognised keys:
/// pn_sets, mix (even|type1|type2), ops (reduced|full), costs
/// (uniform|random), sigma, le_min_type1, le_max_type1, le_min_type2,
/// le_max_type2, p_min, p_max, n_min, n_max, seed, id_prefix. Lines that
/// are empty or start with # are skipped; unknown keys are errors.
struct Recipe {
  std::uint64_t pn_sets = 1;
  enum class Mix { kEven, kType1Only, kType2Only };
  Mix mix = Mix::kEven;
  OperatorSet ops = OperatorSet::reduced();
  bool random_costs = false;  // false: uniform costs only
  std::string sigma = "01";
  int le_min_type1 = 0, le_max_type1 = 7;
  int le_min_type2 = 0, le_max_type2 = 10;
  int p_min = 1, p_max = 10;
  int n_min = 1, n_max = 10;
  std::uint64_t seed = 0;
  std::string id_prefix = "inst";
};

Recipe parse_recipe(const std::string& text);

/// All instances for a recipe under the given master seed. Each PN-set t
/// draws from its own substream; even mix alternates type1/type2 starting
/// with type1. Size triples (le, p, n) are redrawn until feasible. With
/// random costs every PN-set yields 20 instances: variant 0 keeps uniform
/// costs and variants 1..19 draw via gen_cost. Ids are
/// "<prefix>-<t:06>" or "<prefix>-<t:06>-<v:02>".
std::vector<Instance> gen_dataset(const Recipe& recipe, std::uint64_t seed);

}  // namespace rei
