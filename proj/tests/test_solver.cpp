#include <string>
#include <vector>

#include "doctest.h"
#include "rei/baselines.hpp"
#include "rei/footprint.hpp"
#include "rei/match.hpp"
#include "rei/solver.hpp"
#include "support/naive.hpp"
#include "support/vectors.hpp"

using namespace rei;
using rei::testing::naive_min_precise;

namespace {

Instance make_inst(std::vector<std::string> pos, std::vector<std::string> neg,
                   OperatorSet ops = OperatorSet::reduced()) {
  Instance inst;
  inst.pn.pos = std::move(pos);
  inst.pn.neg = std::move(neg);
  inst.ops = ops;
  return inst;
}

void check_precise(const Regex& r, const Instance& inst) {
  for (const auto& w : inst.pn.pos) CHECK(matches(r, w));
  for (const auto& w : inst.pn.neg) CHECK_FALSE(matches(r, w));
}

}  // namespace

TEST_CASE("solve rejects overlapping and malformed instances") {
  CHECK_THROWS_AS(solve(make_inst({"0", "1"}, {"1"})), InfeasibleError);
  Instance bad_sigma = make_inst({"0"}, {"1"});
  bad_sigma.sigma = "00";
  CHECK_THROWS_AS(solve(bad_sigma), DataError);
  Instance stray = make_inst({"2"}, {"1"});
  CHECK_THROWS_AS(solve(stray), DataError);
}

TEST_CASE("empty positive set yields the cheapest all-rejecting expression") {
  // N covers e, 0 and 1, so the empty-set leaf is the only cost-1 answer
  Instance full = make_inst({}, {"", "0", "1"}, OperatorSet::full());
  SolveResult r = solve(full);
  CHECK(print(r.solution.regex) == "E");
  CHECK(r.solution.cost == 1);
  CHECK(r.solution.minimal);

  // no empty-set constructor: the search must find a nonempty language
  // avoiding N
  Instance reduced = make_inst({}, {""});
  r = solve(reduced);
  CHECK(print(r.solution.regex) == "0");
  CHECK(r.solution.cost == 1);
  CHECK(r.solution.minimal);

  Instance deeper = make_inst({}, {"", "0", "1"});
  r = solve(deeper);
  CHECK(print(r.solution.regex) == "(0.0)");
  CHECK(r.solution.cost == 3);
  CHECK(r.solution.minimal);
}

TEST_CASE("answers are the lexicographically least canonical form of their stratum") {
  SolveResult r = solve(make_inst({"0", "1"}, {""}));
  CHECK(print(r.solution.regex) == "(0+1)");
  CHECK(r.solution.cost == 3);

  r = solve(make_inst({"00"}, {"", "0"}));
  CHECK(print(r.solution.regex) == "(0.0)");
  CHECK(r.solution.cost == 3);
}

TEST_CASE("resource caps degrade to the precise fallback with minimal=false") {
  Instance inst = make_inst({"0101"}, {"1000100"});
  SolveCaps caps;
  caps.max_footprints = 1;
  SolveResult r = solve(inst, caps);
  CHECK(r.stats.cap_hit);
  CHECK_FALSE(r.solution.minimal);
  check_precise(r.solution.regex, inst);
  CHECK(r.solution.cost == trivial_cost_bound(inst));

  SolveCaps clock;
  clock.max_seconds = 1e-9;
  r = solve(inst, clock);
  CHECK(r.stats.cap_hit);
  CHECK_FALSE(r.solution.minimal);
  check_precise(r.solution.regex, inst);
}

TEST_CASE("audit samples pair every Nth retained footprint with its witness") {
  Instance inst = make_inst({"01", "0"}, {"", "11"});
  SolveCaps caps;
  caps.audit_stride = 1;
  SolveResult r = solve(inst, caps);
  CHECK(r.samples.size() == r.stats.retained_footprints);
  FootprintShape shape(inst.pn);
  for (const AuditSample& s : r.samples) {
    CHECK(s.footprint == footprint_of(s.regex, shape));
  }

  caps.audit_stride = 4;
  SolveResult quarter = solve(inst, caps);
  CHECK(quarter.samples.size() == r.stats.retained_footprints / 4);
}

TEST_CASE("worker count never changes the answer") {
  auto insts = rei::testing::oracle_instances();
  for (std::size_t t = 0; t < insts.size(); t += 17) {
    SolveCaps seq;
    SolveCaps par;
    par.workers = 3;
    SolveResult a = solve(insts[t], seq);
    SolveResult b = solve(insts[t], par);
    CHECK(print(a.solution.regex) == print(b.solution.regex));
    CHECK(a.solution.cost == b.solution.cost);
    CHECK(a.solution.minimal == b.solution.minimal);
    CHECK(a.stats.retained_footprints == b.stats.retained_footprints);
  }
}

TEST_CASE("solver cost matches the no-dedup enumerator on small instances") {
  // the full 100-instance sweep runs in the acceptance gate
  auto insts = rei::testing::oracle_instances();
  for (std::size_t t = 0; t < insts.size(); t += 9) {
    SolveResult r = solve(insts[t]);
    REQUIRE(r.solution.minimal);
    auto naive = naive_min_precise(insts[t], r.solution.cost);
    CHECK(naive.found);
    CHECK(naive.cost == r.solution.cost);
    check_precise(r.solution.regex, insts[t]);
  }
}

TEST_CASE("trivial_cost_bound prices the union of positives") {
  Instance inst = make_inst({"11", "0000", "000"}, {"", "1", "101"});
  CHECK(trivial_cost_bound(inst) == cost(trivial(inst), inst.costs));
  CHECK(trivial_cost_bound(inst) == 17);
}
