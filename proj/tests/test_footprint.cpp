#include <string>
#include <vector>

#include "doctest.h"
#include "rei/baselines.hpp"
#include "rei/footprint.hpp"
#include "rei/match.hpp"
#include "rei/regex.hpp"
#include "rei/rng.hpp"
#include "support/astgen.hpp"

using namespace rei;

namespace {

Regex rx(const std::string& text) { return parse(text, "01", OperatorSet::full()); }

PNSet pn(std::vector<std::string> pos, std::vector<std::string> neg) {
  PNSet s;
  s.pos = std::move(pos);
  s.neg = std::move(neg);
  return s;
}

std::string random_string(SplitMix64& rng, std::size_t max_len) {
  std::string w(rng.next_below(max_len + 1), '0');
  for (char& c : w) c = "01"[rng.next_below(2)];
  return w;
}

// Distinct strings, split between pos and neg.
PNSet random_pn(SplitMix64& rng, std::size_t count, std::size_t max_len) {
  PNSet s;
  std::vector<std::string> seen;
  while (seen.size() < count) {
    std::string w = random_string(rng, max_len);
    bool dup = false;
    for (const auto& v : seen) dup = dup || v == w;
    if (!dup) seen.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    (i % 2 == 0 ? s.pos : s.neg).push_back(seen[i]);
  return s;
}

}  // namespace

TEST_CASE("shape packs one upper triangle per string, positives first") {
  FootprintShape shape(pn({"01"}, {"1"}));
  CHECK(shape.string_count() == 2);
  CHECK(shape.pos_count() == 1);
  CHECK(shape.string_at(0) == "01");
  CHECK(shape.string_at(1) == "1");
  CHECK(shape.total_bits() == 9);  // 6 intervals of "01" + 3 of "1"
  CHECK(shape.words() == 1);

  CHECK(shape.bit_index(0, 0, 0) == 0);
  CHECK(shape.bit_index(0, 0, 1) == 1);
  CHECK(shape.bit_index(0, 0, 2) == 2);
  CHECK(shape.bit_index(0, 1, 1) == 3);
  CHECK(shape.bit_index(0, 1, 2) == 4);
  CHECK(shape.bit_index(0, 2, 2) == 5);
  CHECK(shape.bit_index(1, 0, 0) == 6);
  CHECK(shape.bit_index(1, 0, 1) == 7);
  CHECK(shape.bit_index(1, 1, 1) == 8);
  CHECK(shape.full_bit(0) == 2);
  CHECK(shape.full_bit(1) == 7);

  CHECK(shape.triangle_mask() == std::vector<std::uint64_t>{0x1FF});
  // (0,0), (1,1), (2,2) of "01" and (0,0), (1,1) of "1"
  CHECK(shape.identity_mask() == std::vector<std::uint64_t>{(1u << 0) | (1u << 3) | (1u << 5) |
                                                            (1u << 6) | (1u << 8)});
  CHECK(shape.full_mask() == std::vector<std::uint64_t>{(1u << 2) | (1u << 7)});
  CHECK(shape.pos_full_mask() == std::vector<std::uint64_t>{1u << 2});
}

TEST_CASE("footprints of leaf expressions") {
  FootprintShape shape(pn({"01"}, {"1"}));
  CHECK(footprint_of(rx("0"), shape).words == std::vector<std::uint64_t>{1u << 1});
  CHECK(footprint_of(rx("1"), shape).words == std::vector<std::uint64_t>{(1u << 4) | (1u << 7)});
  CHECK(footprint_of(rx("e"), shape).words == shape.identity_mask());
  CHECK(footprint_of(rx("E"), shape).words == std::vector<std::uint64_t>{0});
  CHECK(footprint_of(rx("(~E)"), shape).words == shape.triangle_mask());
}

TEST_CASE("every footprint bit equals a matches() call on the substring") {
  SplitMix64 rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    PNSet s = random_pn(rng, 1 + rng.next_below(4), 5);
    FootprintShape shape(s);
    Regex r = rei::testing::random_regex(rng, OperatorSet::full(), "01", 4);
    Footprint fp = footprint_of(r, shape);
    for (std::size_t si = 0; si < shape.string_count(); ++si) {
      const std::string& w = shape.string_at(si);
      for (std::size_t i = 0; i <= w.size(); ++i)
        for (std::size_t j = i; j <= w.size(); ++j) {
          bool bit = fp.get(shape.bit_index(si, i, j));
          bool want = matches(r, std::string_view(w).substr(i, j - i));
          if (bit != want) {
            CAPTURE(print(r));
            CAPTURE(w);
            CAPTURE(i);
            CAPTURE(j);
          }
          REQUIRE(bit == want);
        }
    }
  }
}

TEST_CASE("kernels agree with footprints of the combined expressions") {
  SplitMix64 rng(22);
  for (int iter = 0; iter < 200; ++iter) {
    PNSet s = random_pn(rng, 1 + rng.next_below(3), 6);
    FootprintShape shape(s);
    Regex a = rei::testing::random_regex(rng, OperatorSet::full(), "01", 3);
    Regex b = rei::testing::random_regex(rng, OperatorSet::full(), "01", 3);
    Footprint fa = footprint_of(a, shape);
    Footprint fb = footprint_of(b, shape);
    for (Op op : {Op::Option, Op::Star, Op::Complement}) {
      Regex combined = Regex::make(op, 0, &a, nullptr);
      CHECK(fp_combine(op, shape, fa, nullptr) == footprint_of(combined, shape));
    }
    for (Op op : {Op::Concat, Op::Intersect, Op::Union, Op::Minus}) {
      Regex combined = Regex::make(op, 0, &a, &b);
      CHECK(fp_combine(op, shape, fa, &fb) == footprint_of(combined, shape));
    }
  }
}

TEST_CASE("row-cached concatenation matches the packed kernel") {
  SplitMix64 rng(23);
  for (int iter = 0; iter < 500; ++iter) {
    // long strings force multi-word footprints and word-crossing rows
    PNSet s = random_pn(rng, 1 + rng.next_below(4), 3 + rng.next_below(14));
    FootprintShape shape(s);
    const std::size_t W = shape.words();
    std::vector<std::uint64_t> a(W), b(W);
    for (std::size_t w = 0; w < W; ++w) {
      a[w] = rng.next() & shape.triangle_mask()[w];
      b[w] = rng.next() & shape.triangle_mask()[w];
    }
    std::vector<std::uint64_t> packed(W, 0), streamed(W, 0xFEEDFACEFEEDFACEull);
    fp_concat(shape, a.data(), b.data(), packed.data());

    std::vector<std::uint64_t> rows_a(shape.row_words()), rows_b(shape.row_words());
    fp_unpack(shape, a.data(), rows_a.data());
    fp_unpack(shape, b.data(), rows_b.data());
    fp_concat_rows(shape, rows_a.data(), rows_b.data(), streamed.data());
    CHECK(packed == streamed);
  }
}

TEST_CASE("fp_precise accepts exactly the positive whole-string rows") {
  Instance inst;
  inst.pn = pn({"01", "0"}, {"", "11"});
  FootprintShape shape(inst.pn);
  CHECK(fp_precise(shape, footprint_of(trivial(inst), shape)));
  CHECK_FALSE(fp_precise(shape, footprint_of(rx("E"), shape)));
  CHECK_FALSE(fp_precise(shape, footprint_of(rx("(~E)"), shape)));

  Instance none;
  none.pn = pn({}, {"0"});
  FootprintShape shape2(none.pn);
  CHECK(fp_precise(shape2, footprint_of(rx("E"), shape2)));
  CHECK(fp_precise(shape2, footprint_of(rx("1"), shape2)));
  CHECK_FALSE(fp_precise(shape2, footprint_of(rx("0"), shape2)));
}
