#include <string>

#include "doctest.h"
#include "rei/regex.hpp"
#include "rei/rng.hpp"
#include "support/astgen.hpp"

using namespace rei;

namespace {

std::string reprint(const std::string& text, OperatorSet ops = OperatorSet::full()) {
  return print(parse(text, "01", ops));
}

}  // namespace

TEST_CASE("printer emits the fully parenthesized canonical form") {
  CHECK(reprint("((0.1)*)") == "((0.1)*)");
  CHECK(reprint("e") == "e");
  CHECK(reprint("E") == "E");
  CHECK(reprint("0") == "0");
  CHECK(reprint("(((0)))") == "0");
  CHECK(print(Regex::alternation(Regex::literal('0'), Regex::epsilon())) == "(0+e)");
}

TEST_CASE("binary operators are left-associative") {
  CHECK(reprint("0.1.0") == "((0.1).0)");
  CHECK(reprint("0+1+0") == "((0+1)+0)");
  CHECK(reprint("0-1-0") == "((0-1)-0)");
  CHECK(reprint("0&1&0") == "((0&1)&0)");
}

TEST_CASE("precedence: postfix, complement, concat, intersect, minus, union") {
  CHECK(reprint("0.1+1") == "((0.1)+1)");
  CHECK(reprint("0+1.1") == "(0+(1.1))");
  CHECK(reprint("0.1&1-0+1") == "((((0.1)&1)-0)+1)");
  CHECK(reprint("~0.1") == "((~0).1)");
  CHECK(reprint("~0*") == "(~(0*))");
  CHECK(reprint("~~0") == "(~(~0))");
  CHECK(reprint("0?*") == "((0?)*)");
  CHECK(reprint("0??") == "((0?)?)");
  CHECK(reprint("0&1+1&0") == "((0&1)+(1&0))");
  CHECK(reprint("0-1+1") == "((0-1)+1)");
  CHECK(reprint("0-1&1") == "(0-(1&1))");
}

TEST_CASE("parse rejects malformed text with the offending position") {
  auto pos_of = [](const std::string& text) {
    try {
      parse(text, "01", OperatorSet::full());
    } catch (const ParseError& e) {
      return static_cast<long long>(e.position());
    }
    return -1LL;
  };
  CHECK(pos_of("x") == 0);
  CHECK(pos_of("0+x") == 2);
  CHECK(pos_of("01") == 1);    // adjacent atoms: no implicit concatenation
  CHECK(pos_of("0~1") == 1);   // complement is prefix-only
  CHECK(pos_of("") >= 0);
  CHECK(pos_of("(0.1") >= 0);
  CHECK(pos_of("0.") >= 0);
  CHECK(pos_of(")0") == 0);
  CHECK(pos_of("()") >= 0);
}

TEST_CASE("parse enforces the alphabet and the operator set") {
  CHECK_THROWS_AS(parse("2", "01", OperatorSet::full()), ParseError);
  CHECK_NOTHROW(parse("2", "012", OperatorSet::full()));
  CHECK_THROWS_AS(parse("(~0)", "01", OperatorSet::reduced()), ParseError);
  CHECK_THROWS_AS(parse("E", "01", OperatorSet::reduced()), ParseError);
  CHECK_THROWS_AS(parse("(0&1)", "01", OperatorSet::reduced()), ParseError);
  CHECK_THROWS_AS(parse("(0-1)", "01", OperatorSet::reduced()), ParseError);
  CHECK_NOTHROW(parse("((0?).((1*)+e))", "01", OperatorSet::reduced()));
}

TEST_CASE("cost sums per-constructor weights; parentheses are free") {
  CHECK(cost(parse("((0.1)*)", "01", OperatorSet::full()), CostFunction::uniform()) == 4);
  CHECK(cost(parse("e", "01", OperatorSet::full()), CostFunction::uniform()) == 1);

  CostFunction wa{20, 8, 3, kDisabledOpCost, 45, kDisabledOpCost, 38, kDisabledOpCost};
  CHECK(cost(parse("(0.((1.(0*))*))", "01", OperatorSet::full()), wa) == 156);

  CostFunction wb{1, 36, 20, 10, 38, 12, 1, 30};
  CHECK(cost(parse("(0+((~1).1))", "01", OperatorSet::full()), wb) == 52);
}

TEST_CASE("operators_used reports exactly the constructors present") {
  OperatorSet used = operators_used(parse("(0+((~1).1))", "01", OperatorSet::full()));
  CHECK(used.contains(Op::Literal));
  CHECK(used.contains(Op::Union));
  CHECK(used.contains(Op::Complement));
  CHECK(used.contains(Op::Concat));
  CHECK_FALSE(used.contains(Op::Star));
  CHECK_FALSE(used.contains(Op::Option));
  CHECK_FALSE(used.contains(Op::Epsilon));
  CHECK_FALSE(used.contains(Op::EmptySet));
  CHECK(used.is_subset_of(OperatorSet::full()));
  CHECK_FALSE(used.is_subset_of(OperatorSet::reduced()));
}

TEST_CASE("operator set names round-trip") {
  CHECK(operator_set_name(operator_set_from_name("reduced")) == "reduced");
  CHECK(operator_set_name(operator_set_from_name("full")) == "full");
  CHECK_THROWS_AS(operator_set_from_name("all"), DataError);
  CHECK_THROWS_AS(operator_set_name(OperatorSet::none()), DataError);
}

TEST_CASE("structural equality distinguishes shape and symbols") {
  CHECK(parse("(0.1)", "01", OperatorSet::full()) == parse("0.1", "01", OperatorSet::full()));
  CHECK(parse("(0.1)", "01", OperatorSet::full()) != parse("(1.0)", "01", OperatorSet::full()));
  CHECK(parse("(0?)", "01", OperatorSet::full()) != parse("(0*)", "01", OperatorSet::full()));
}

TEST_CASE("parse(print(r)) == r on random expressions") {
  for (OperatorSet ops : {OperatorSet::reduced(), OperatorSet::full()}) {
    SplitMix64 rng(ops == OperatorSet::full() ? 11 : 12);
    for (int i = 0; i < 10000; ++i) {
      Regex r = rei::testing::random_regex(rng, ops, "01", 8);
      std::string text = print(r);
      Regex back = parse(text, "01", ops);
      CHECK(back == r);
      CHECK(print(back) == text);
    }
  }
}

TEST_CASE("node_count matches uniform cost") {
  SplitMix64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Regex r = rei::testing::random_regex(rng, OperatorSet::full(), "01", 6);
    CHECK(std::int64_t(node_count(r)) == cost(r, CostFunction::uniform()));
  }
}
