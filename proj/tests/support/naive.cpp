#include "support/naive.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rei/match.hpp"

namespace rei::testing {

namespace {

struct NNode {
  Op op;
  char sym;
  std::uint32_t l, r;
};

constexpr Op kUnary[] = {Op::Option, Op::Star, Op::Complement};
constexpr Op kBinary[] = {Op::Concat, Op::Intersect, Op::Union, Op::Minus};

class Enumerator {
 public:
  Enumerator(OperatorSet ops, std::string_view sigma, CostFunction cf, std::uint64_t node_cap)
      : ops_(ops), sigma_(sigma), cf_(cf), node_cap_(node_cap) {}

  // visitor(regex, cost) -> keep going?
  void run(std::int64_t cost_cap, const std::function<bool(const Regex&, std::int64_t)>& visitor) {
    std::set<std::int64_t> agenda;
    agenda.insert(cf_.atom);
    while (!agenda.empty()) {
      std::int64_t k = *agenda.begin();
      agenda.erase(agenda.begin());
      if (k > cost_cap) return;
      std::uint32_t begin = static_cast<std::uint32_t>(arena_.size());
      if (!build_level(k, visitor)) return;
      std::uint32_t end = static_cast<std::uint32_t>(arena_.size());
      if (begin == end) continue;
      levels_[k] = {begin, end};
      for (Op u : kUnary)
        if (ops_.contains(u)) agenda.insert(k + cf_.of(u));
      for (Op b : kBinary)
        if (ops_.contains(b))
          for (const auto& [lk, range] : levels_) agenda.insert(k + lk + cf_.of(b));
    }
  }

 private:
  Regex rebuild(std::uint32_t id) const {
    const NNode& n = arena_[id];
    if (is_leaf(n.op)) return Regex::make(n.op, n.sym, nullptr, nullptr);
    Regex l = rebuild(n.l);
    if (is_unary(n.op)) return Regex::make(n.op, 0, &l, nullptr);
    Regex r = rebuild(n.r);
    return Regex::make(n.op, 0, &l, &r);
  }

  bool emit(NNode node, std::int64_t k, const std::function<bool(const Regex&, std::int64_t)>& visitor) {
    if (arena_.size() >= node_cap_)
      throw std::runtime_error("naive enumeration exceeded the node cap");
    arena_.push_back(node);
    return visitor(rebuild(static_cast<std::uint32_t>(arena_.size() - 1)), k);
  }

  bool build_level(std::int64_t k, const std::function<bool(const Regex&, std::int64_t)>& visitor) {
    if (k == cf_.atom) {
      if (ops_.contains(Op::EmptySet) && !emit({Op::EmptySet, 0, 0, 0}, k, visitor)) return false;
      if (ops_.contains(Op::Epsilon) && !emit({Op::Epsilon, 0, 0, 0}, k, visitor)) return false;
      if (ops_.contains(Op::Literal))
        for (char c : sigma_)
          if (!emit({Op::Literal, c, 0, 0}, k, visitor)) return false;
    }
    for (Op u : kUnary) {
      if (!ops_.contains(u)) continue;
      auto it = levels_.find(k - cf_.of(u));
      if (it == levels_.end()) continue;
      for (std::uint32_t i = it->second.first; i < it->second.second; ++i)
        if (!emit({u, 0, i, 0}, k, visitor)) return false;
    }
    for (Op b : kBinary) {
      if (!ops_.contains(b)) continue;
      for (const auto& [lk, lrange] : levels_) {
        std::int64_t rk = k - cf_.of(b) - lk;
        if (rk < cf_.atom) continue;
        auto it = levels_.find(rk);
        if (it == levels_.end()) continue;
        for (std::uint32_t i = lrange.first; i < lrange.second; ++i)
          for (std::uint32_t j = it->second.first; j < it->second.second; ++j)
            if (!emit({b, 0, i, j}, k, visitor)) return false;
      }
    }
    return true;
  }

  OperatorSet ops_;
  std::string sigma_;
  CostFunction cf_;
  std::uint64_t node_cap_;
  std::vector<NNode> arena_;
  std::map<std::int64_t, std::pair<std::uint32_t, std::uint32_t>> levels_;
};

}  // namespace

NaiveOutcome naive_min_precise(const Instance& inst, std::int64_t cost_cap,
                               std::uint64_t node_cap) {
  NaiveOutcome out;
  Enumerator en(inst.ops, inst.sigma, inst.costs, node_cap);
  en.run(cost_cap, [&](const Regex& r, std::int64_t k) {
    ++out.enumerated;
    for (const std::string& w : inst.pn.pos)
      if (!matches(r, w)) return true;
    for (const std::string& w : inst.pn.neg)
      if (matches(r, w)) return true;
    out.found = true;
    out.cost = k;
    out.printed = print(r);
    return false;
  });
  return out;
}

void enumerate_uniform(OperatorSet ops, std::string_view sigma, int max_cost,
                       const std::function<bool(const Regex&)>& fn) {
  Enumerator en(ops, sigma, CostFunction::uniform(), 1u << 30);
  en.run(max_cost, [&](const Regex& r, std::int64_t) { return fn(r); });
}

}  // namespace rei::testing
