#include "rei/baselines.hpp"

#include <cstddef>
#include <unordered_set>

#include "rei/error.hpp"
#include "rei/match.hpp"

namespace rei {

Regex string_regex(std::string_view w) {
  if (w.empty()) return Regex::epsilon();
  Regex r = Regex::literal(w.back());
  for (std::size_t i = w.size() - 1; i-- > 0;) {
    r = Regex::concat(Regex::literal(w[i]), r);
  }
  return r;
}

Regex trivial(const Instance& inst) {
  const auto& pos = inst.pn.pos;
  if (pos.empty()) return Regex::empty_set();
  Regex r = string_regex(pos.back());
  for (std::size_t i = pos.size() - 1; i-- > 0;) {
    r = Regex::alternation(string_regex(pos[i]), r);
  }
  return r;
}

TrainCorpus TrainCorpus::build(const std::vector<Instance>& train) {
  TrainCorpus corpus;
  std::unordered_set<std::string> seen;
  for (const Instance& inst : train) {
    if (!inst.solution) {
      throw DataError("training instance \"" + inst.id + "\" has no solution");
    }
    Regex gold = Regex::empty_set();
    try {
      gold = parse(inst.solution->regex, inst.sigma, inst.ops);
    } catch (const ParseError& e) {
      throw DataError("training instance \"" + inst.id +
                      "\" has an unparseable solution: " + e.what());
    }
    for (const std::string& w : inst.pn.pos) {
      if (!matches(gold, w)) {
        throw DataError("training instance \"" + inst.id +
                        "\" has an imprecise solution: rejects \"" + w + "\"");
      }
    }
    for (const std::string& w : inst.pn.neg) {
      if (matches(gold, w)) {
        throw DataError("training instance \"" + inst.id +
                        "\" has an imprecise solution: accepts \"" + w + "\"");
      }
    }
    Item item{inst.pn, gold, print(gold)};
    if (seen.insert(item.printed).second) corpus.distinct_.push_back(item);
    corpus.items_.push_back(std::move(item));
  }
  if (corpus.items_.empty()) throw DataError("training corpus is empty");
  return corpus;
}

namespace {

// Returns true when (score_a, cost_a, printed_a) beats b under the shared
// tie-break order: higher score, then lower cost, then smaller text.
bool beats(std::int64_t score_a, std::int64_t cost_a, const std::string& printed_a,
           std::int64_t score_b, std::int64_t cost_b, const std::string& printed_b) {
  if (score_a != score_b) return score_a > score_b;
  if (cost_a != cost_b) return cost_a < cost_b;
  return printed_a < printed_b;
}

}  // namespace

Regex pn_retrieval(const Instance& inst, const TrainCorpus& corpus) {
  std::unordered_set<std::string> pos(inst.pn.pos.begin(), inst.pn.pos.end());
  std::unordered_set<std::string> neg(inst.pn.neg.begin(), inst.pn.neg.end());
  const TrainCorpus::Item* best = nullptr;
  std::int64_t best_score = 0;
  std::int64_t best_cost = 0;
  for (const auto& item : corpus.items()) {
    std::int64_t score = 0;
    for (const std::string& w : item.pn.pos) score += pos.count(w);
    for (const std::string& w : item.pn.neg) score += neg.count(w);
    std::int64_t c = cost(item.gold, inst.costs);
    if (best == nullptr ||
        beats(score, c, item.printed, best_score, best_cost, best->printed)) {
      best = &item;
      best_score = score;
      best_cost = c;
    }
  }
  return best->gold;
}

Regex re_retrieval(const Instance& inst, const TrainCorpus& corpus) {
  const TrainCorpus::Item* best = nullptr;
  std::int64_t best_score = 0;
  std::int64_t best_cost = 0;
  for (const auto& item : corpus.distinct()) {
    std::int64_t score = 0;
    for (const std::string& w : inst.pn.pos) score += matches(item.gold, w);
    for (const std::string& w : inst.pn.neg) score += !matches(item.gold, w);
    std::int64_t c = cost(item.gold, inst.costs);
    if (best == nullptr ||
        beats(score, c, item.printed, best_score, best_cost, best->printed)) {
      best = &item;
      best_score = score;
      best_cost = c;
    }
  }
  return best->gold;
}

}  // namespace rei
