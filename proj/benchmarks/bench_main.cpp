#include <cstdint>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "rei/footprint.hpp"
#include "rei/match.hpp"
#include "rei/regex.hpp"
#include "rei/solver.hpp"

namespace {

using namespace rei;

PNSet multi_string_pn() {
  PNSet pn;
  pn.pos = {"10", "000", "1101110", "1000000", "1110110", "010"};
  pn.neg = {"000110", "0110", "01101000"};
  return pn;
}

Instance instance_of(PNSet pn, OperatorSet ops) {
  Instance inst;
  inst.pn = std::move(pn);
  inst.ops = ops;
  return inst;
}

void BM_Matches(benchmark::State& state) {
  const Regex r = parse("(((1.(0*))*).((0.(1?))*))", "01", OperatorSet::reduced());
  const std::string w = "110100010110100010";
  for (auto _ : state) {
    benchmark::DoNotOptimize(matches(r, w));
  }
}
BENCHMARK(BM_Matches);

void BM_BoundedLanguage(benchmark::State& state) {
  const Regex r = parse("(((0.1)+(1.(0?)))*)", "01", OperatorSet::reduced());
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounded_language(r, "01", 10));
  }
}
BENCHMARK(BM_BoundedLanguage);

void BM_FootprintStar(benchmark::State& state) {
  const FootprintShape shape(multi_string_pn());
  const Footprint a = footprint_of(parse("(0.(1?))", "01", OperatorSet::reduced()), shape);
  std::vector<std::uint64_t> out(shape.words());
  for (auto _ : state) {
    fp_star(shape, a.words.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FootprintStar);

void BM_FootprintConcatPacked(benchmark::State& state) {
  const FootprintShape shape(multi_string_pn());
  const Footprint a = footprint_of(parse("((1.(0*))*)", "01", OperatorSet::reduced()), shape);
  const Footprint b = footprint_of(parse("((0.(1?))*)", "01", OperatorSet::reduced()), shape);
  std::vector<std::uint64_t> out(shape.words());
  for (auto _ : state) {
    fp_concat(shape, a.words.data(), b.words.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FootprintConcatPacked);

// The solver's batched form: operands pre-expanded to row words, output
// packed on the fly. One iteration here equals one candidate in a
// concatenation job after its operands were unpacked once.
void BM_FootprintConcatRows(benchmark::State& state) {
  const FootprintShape shape(multi_string_pn());
  const Footprint a = footprint_of(parse("((1.(0*))*)", "01", OperatorSet::reduced()), shape);
  const Footprint b = footprint_of(parse("((0.(1?))*)", "01", OperatorSet::reduced()), shape);
  std::vector<std::uint64_t> rows_a(shape.row_words()), rows_b(shape.row_words());
  fp_unpack(shape, a.words.data(), rows_a.data());
  fp_unpack(shape, b.words.data(), rows_b.data());
  std::vector<std::uint64_t> out(shape.words());
  for (auto _ : state) {
    fp_concat_rows(shape, rows_a.data(), rows_b.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FootprintConcatRows);

void BM_SolveSinglePair(benchmark::State& state) {
  PNSet pn;
  pn.pos = {"0101"};
  pn.neg = {"1000100"};
  const Instance inst = instance_of(pn, OperatorSet::reduced());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst));
  }
}
BENCHMARK(BM_SolveSinglePair);

void BM_SolveFullOps(benchmark::State& state) {
  PNSet pn;
  pn.pos = {"11", "0000", "000"};
  pn.neg = {"", "1", "101"};
  const Instance inst = instance_of(pn, OperatorSet::full());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst));
  }
}
BENCHMARK(BM_SolveFullOps);

void BM_SolveMultiString(benchmark::State& state) {
  const Instance inst = instance_of(multi_string_pn(), OperatorSet::reduced());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst));
  }
}
BENCHMARK(BM_SolveMultiString);

}  // namespace

BENCHMARK_MAIN();