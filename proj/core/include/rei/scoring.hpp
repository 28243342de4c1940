#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rei/instance.hpp"

namespace rei {

/// One prediction line: the regex text is kept verbatim (it may fail to
/// parse; scoring treats that as an invalid prediction, never an error).
struct Prediction {
  std::string id;
  std::string regex;
};

/// Exact ratio with machine-word parts. den == 0 encodes "undefined"
/// (empty denominator set); value() maps that to 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 0;
  double value() const { return den == 0 ? 0.0 : double(num) / double(den); }
  bool defined() const { return den != 0; }
};

/// Exact rational with arbitrary-precision parts rendered as decimal
/// strings (sums of per-instance fractions do not fit machine words).
struct BigRatio {
  std::string num = "0";
  std::string den = "1";
  double approx = 0.0;
};

/// All metrics over one prediction set. String-level ratios are micro
/// averages (strings pooled across instances); the _macro variants average
/// per-instance fractions and skip instances with an empty denominator.
struct ScoreReport {
  std::int64_t total = 0;             // gold instances
  Ratio compile_ratio;                // parsed predictions / total
  std::int64_t precise_count = 0;     // Prec: absolute count
  Ratio precise_ratio;                // Prec%
  Ratio positive_ratio;               // P%: accepted positives / all positives
  Ratio negative_ratio;               // N%: rejected negatives / all negatives
  Ratio pn_ratio;                     // PN%: both pooled
  std::optional<BigRatio> positive_ratio_macro;
  std::optional<BigRatio> negative_ratio_macro;
  std::optional<BigRatio> pn_ratio_macro;
  std::int64_t minimal_count = 0;     // Min: precise and cost <= gold cost
  Ratio minimal_ratio_precise;        // Min%P: over precise predictions
  Ratio minimal_ratio_global;         // Min%G: over all instances
  std::optional<BigRatio> cost_ratio; // mean cost(pred)/cost(gold) over precise; absent if none
};

/// Scores predictions against gold instances (all of which must carry
/// solutions). Unknown or duplicate prediction ids are DataErrors; a
/// missing prediction counts as invalid for its instance. Invalid
/// predictions (unparseable under the instance's alphabet and operator
/// set) count every string of their instance as misclassified.
ScoreReport score(const std::vector<Prediction>& preds, const std::vector<Instance>& gold);

/// The ranking metric: global minimal ratio (Min%G).
Ratio leaderboard_key(const ScoreReport& report);

/// One-row human table, columns CR Prec Prec% P% N% PN% Min Min%P Min%G
/// Cost Ratio; undefined entries render as "-".
std::string render_table(const ScoreReport& report);

/// Full report as a JSON object with exact numerator/denominator pairs;
/// undefined ratios are null.
std::string render_json(const ScoreReport& report);

}  // namespace rei
