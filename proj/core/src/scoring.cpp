#include "rei/scoring.hpp"

#include <cstdio>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "rei/error.hpp"
#include "rei/match.hpp"

namespace rei {

namespace {

using Rational = boost::multiprecision::cpp_rational;

BigRatio to_big(const Rational& q) {
  BigRatio out;
  out.num = numerator(q).str();
  out.den = denominator(q).str();
  out.approx = q.convert_to<double>();
  return out;
}

}  // namespace

ScoreReport score(const std::vector<Prediction>& preds, const std::vector<Instance>& gold) {
  if (gold.empty()) throw DataError("gold instance set is empty");
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const Prediction& p : preds) {
    if (!by_id.emplace(p.id, &p).second) {
      throw DataError("duplicate prediction id \"" + p.id + "\"");
    }
  }
  std::unordered_map<std::string, const Instance*> gold_ids;
  for (const Instance& inst : gold) {
    if (!inst.solution) {
      throw DataError("gold instance \"" + inst.id + "\" has no solution");
    }
    if (!gold_ids.emplace(inst.id, &inst).second) {
      throw DataError("duplicate gold instance id \"" + inst.id + "\"");
    }
  }
  for (const Prediction& p : preds) {
    if (!gold_ids.count(p.id)) {
      throw DataError("prediction id \"" + p.id + "\" matches no gold instance");
    }
  }

  ScoreReport r;
  r.total = std::int64_t(gold.size());
  std::int64_t pos_total = 0, pos_correct = 0;
  std::int64_t neg_total = 0, neg_correct = 0;
  Rational pos_macro = 0, neg_macro = 0, pn_macro = 0, cost_sum = 0;
  std::int64_t pos_macro_n = 0, neg_macro_n = 0, pn_macro_n = 0;

  for (const Instance& inst : gold) {
    const std::int64_t np = std::int64_t(inst.pn.pos.size());
    const std::int64_t nn = std::int64_t(inst.pn.neg.size());
    pos_total += np;
    neg_total += nn;

    std::optional<Regex> pred;
    auto it = by_id.find(inst.id);
    if (it != by_id.end()) {
      try {
        pred = parse(it->second->regex, inst.sigma, inst.ops);
      } catch (const ParseError&) {
        pred.reset();
      }
    }

    std::int64_t pc = 0, nc = 0;
    if (pred) {
      r.compile_ratio.num += 1;
      for (const std::string& w : inst.pn.pos) pc += matches(*pred, w);
      for (const std::string& w : inst.pn.neg) nc += !matches(*pred, w);
    }
    pos_correct += pc;
    neg_correct += nc;

    if (np > 0) {
      pos_macro += Rational(pc, np);
      ++pos_macro_n;
    }
    if (nn > 0) {
      neg_macro += Rational(nc, nn);
      ++neg_macro_n;
    }
    if (np + nn > 0) {
      pn_macro += Rational(pc + nc, np + nn);
      ++pn_macro_n;
    }

    const bool precise = pred && pc == np && nc == nn;
    if (precise) {
      r.precise_count += 1;
      const std::int64_t pred_cost = cost(*pred, inst.costs);
      const std::int64_t gold_cost = inst.solution->cost;
      cost_sum += Rational(pred_cost, gold_cost);
      if (pred_cost <= gold_cost) r.minimal_count += 1;
    }
  }

  r.compile_ratio.den = r.total;
  r.precise_ratio = {r.precise_count, r.total};
  r.positive_ratio = {pos_correct, pos_total};
  r.negative_ratio = {neg_correct, neg_total};
  r.pn_ratio = {pos_correct + neg_correct, pos_total + neg_total};
  if (pos_macro_n > 0) r.positive_ratio_macro = to_big(pos_macro / pos_macro_n);
  if (neg_macro_n > 0) r.negative_ratio_macro = to_big(neg_macro / neg_macro_n);
  if (pn_macro_n > 0) r.pn_ratio_macro = to_big(pn_macro / pn_macro_n);
  r.minimal_ratio_precise = {r.minimal_count, r.precise_count};
  r.minimal_ratio_global = {r.minimal_count, r.total};
  if (r.precise_count > 0) r.cost_ratio = to_big(cost_sum / r.precise_count);
  return r;
}

Ratio leaderboard_key(const ScoreReport& report) { return report.minimal_ratio_global; }

namespace {

std::string pct(const Ratio& q) {
  if (!q.defined()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * q.value());
  return buf;
}

nlohmann::ordered_json ratio_json(const Ratio& q) {
  if (!q.defined()) return nullptr;
  return nlohmann::ordered_json{{"num", q.num}, {"den", q.den}, {"value", q.value()}};
}

nlohmann::ordered_json big_json(const std::optional<BigRatio>& q) {
  if (!q) return nullptr;
  return nlohmann::ordered_json{{"num", q->num}, {"den", q->den}, {"value", q->approx}};
}

}  // namespace

std::string render_table(const ScoreReport& r) {
  std::string cost_col = "-";
  if (r.cost_ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", r.cost_ratio->approx);
    cost_col = buf;
  }
  std::string head = "CR\tPrec\tPrec%\tP%\tN%\tPN%\tMin\tMin%P\tMin%G\tCost Ratio\n";
  std::string row = pct(r.compile_ratio) + "\t" + std::to_string(r.precise_count) + "\t" +
                    pct(r.precise_ratio) + "\t" + pct(r.positive_ratio) + "\t" +
                    pct(r.negative_ratio) + "\t" + pct(r.pn_ratio) + "\t" +
                    std::to_string(r.minimal_count) + "\t" + pct(r.minimal_ratio_precise) + "\t" +
                    pct(r.minimal_ratio_global) + "\t" + cost_col + "\n";
  return head + row;
}

std::string render_json(const ScoreReport& r) {
  nlohmann::ordered_json j;
  j["total"] = r.total;
  j["compile_ratio"] = ratio_json(r.compile_ratio);
  j["precise_count"] = r.precise_count;
  j["precise_ratio"] = ratio_json(r.precise_ratio);
  j["positive_ratio"] = ratio_json(r.positive_ratio);
  j["negative_ratio"] = ratio_json(r.negative_ratio);
  j["pn_ratio"] = ratio_json(r.pn_ratio);
  j["positive_ratio_macro"] = big_json(r.positive_ratio_macro);
  j["negative_ratio_macro"] = big_json(r.negative_ratio_macro);
  j["pn_ratio_macro"] = big_json(r.pn_ratio_macro);
  j["minimal_count"] = r.minimal_count;
  j["minimal_ratio_precise"] = ratio_json(r.minimal_ratio_precise);
  j["minimal_ratio_global"] = ratio_json(r.minimal_ratio_global);
  j["cost_ratio"] = big_json(r.cost_ratio);
  return j.dump(2) + "\n";
}

}  // namespace rei
