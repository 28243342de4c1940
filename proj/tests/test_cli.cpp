#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rei/dataset.hpp"
#include "rei/digest.hpp"
#include "rei/scoring.hpp"
#include "support/proc.hpp"

using namespace rei;
using rei::testing::make_temp_dir;

using rei::testing::run_cmd;
using rei::testing::RunResult;
using rei::testing::slurp_file;
using rei::testing::spit_file;

namespace {

const std::string kCli = REI_CLI_PATH;
const std::string kFixtureDir = REI_FIXTURE_DIR;

std::string q(const std::string& arg) { return rei::testing::quoted(arg); }

RunResult rei_run(const std::string& args) { return run_cmd(q(kCli) + " " + args); }

const char* kSmokeRecipe =
    "# four small binary PN-sets\n"
    "pn_sets = 4\n"
    "le_max_type1 = 3\n"
    "le_max_type2 = 3\n"
    "p_max = 3\n"
    "n_max = 3\n"
    "seed = 5\n"
    "id_prefix = smoke\n";

Instance pn_only(std::string id, std::vector<std::string> pos, std::vector<std::string> neg) {
  Instance inst;
  inst.id = std::move(id);
  inst.pn.pos = std::move(pos);
  inst.pn.neg = std::move(neg);
  return inst;
}

}  // namespace

TEST_CASE("version and usage errors") {
  RunResult ver = rei_run("--version");
  CHECK(ver.exit_code == 0);
  CHECK(ver.output.find("0.1.0") != std::string::npos);

  CHECK(rei_run("").exit_code == 2);
  CHECK(rei_run("gen").exit_code == 2);             // missing --recipe/--out
  CHECK(rei_run("frobnicate").exit_code == 2);
  CHECK(rei_run("solve --in x").exit_code == 2);    // missing --out
  CHECK(rei_run("baseline --kind bogus --in x --out y").exit_code == 2);
}

TEST_CASE("gen writes instances plus a digest manifest") {
  std::string dir = make_temp_dir("rei-cli");
  std::string recipe = dir + "/smoke.recipe";
  spit_file(recipe, kSmokeRecipe);
  std::string out = dir + "/corpus.jsonl";
  RunResult r = rei_run("gen --recipe " + q(recipe) + " --out " + q(out));
  REQUIRE(r.exit_code == 0);

  std::vector<Instance> instances = read_instances(out);
  REQUIRE(instances.size() == 4);
  CHECK(instances[0].id == "smoke-000000");
  CHECK(instances[3].id == "smoke-000003");

  nlohmann::json m = nlohmann::json::parse(slurp_file(out + ".manifest.json"));
  CHECK(m["subcommand"] == "gen");
  CHECK(m["version"] == "0.1.0");
  CHECK(m["params"]["seed"] == 5);
  CHECK(m["params"]["ops"] == "reduced");
  CHECK(m["params"]["costs"] == "uniform");
  CHECK(m["params"]["instances"] == 4);
  CHECK(m["inputs"][recipe] == sha256_file(recipe));
  CHECK(m["outputs"][out] == sha256_file(out));
  CHECK(m["wall_seconds"].get<double>() >= 0.0);

  // same seed, three spellings: recipe value, flag, environment variable
  std::string out2 = dir + "/corpus2.jsonl";
  REQUIRE(rei_run("gen --recipe " + q(recipe) + " --out " + q(out2) + " --seed 5")
              .exit_code == 0);
  CHECK(slurp_file(out2) == slurp_file(out));
  std::string out3 = dir + "/corpus3.jsonl";
  REQUIRE(run_cmd("REI_SEED=5 " + q(kCli) + " gen --recipe " + q(recipe) + " --out " +
                  q(out3))
              .exit_code == 0);
  CHECK(slurp_file(out3) == slurp_file(out));

  std::string out4 = dir + "/corpus4.jsonl";
  RunResult rc = rei_run("gen --recipe " + q(recipe) + " --out " + q(out4) +
                         " --ops full --costs random");
  REQUIRE(rc.exit_code == 0);
  std::vector<Instance> randomized = read_instances(out4);
  CHECK(randomized.size() == 80);  // 4 PN-sets x 20 cost variants
  CHECK(randomized[0].id == "smoke-000000-00");
  CHECK(randomized[0].ops == OperatorSet::full());
}

TEST_CASE("solve records solutions, reports overlap instances via exit 3") {
  std::string dir = make_temp_dir("rei-cli");
  std::string in = dir + "/in.jsonl";
  write_instances(in, {pn_only("g1", {"01"}, {""}), pn_only("g2", {"1"}, {"0"}),
                       pn_only("bad", {"0"}, {"0"})});
  std::string out = dir + "/solved.jsonl";
  RunResult r = rei_run("solve --in " + q(in) + " --out " + q(out));
  CHECK(r.exit_code == 3);

  std::vector<Instance> solved = read_instances(out);
  REQUIRE(solved.size() == 3);
  REQUIRE(solved[0].solution.has_value());
  CHECK(solved[0].solution->regex == "(0.1)");
  CHECK(solved[0].solution->minimal == true);
  REQUIRE(solved[1].solution.has_value());
  CHECK(solved[1].solution->regex == "1");
  CHECK(solved[1].solution->cost == 1);
  CHECK_FALSE(solved[2].solution.has_value());
  REQUIRE(solved[2].error.has_value());
  CHECK(solved[2].error->find("overlap") != std::string::npos);

  nlohmann::json m = nlohmann::json::parse(slurp_file(out + ".manifest.json"));
  CHECK(m["subcommand"] == "solve");
  CHECK(m["inputs"][in] == sha256_file(in));

  // byte-determinism across repeat runs and worker counts
  std::string again = dir + "/solved2.jsonl";
  CHECK(rei_run("solve --in " + q(in) + " --out " + q(again)).exit_code == 3);
  CHECK(slurp_file(again) == slurp_file(out));
  std::string threaded = dir + "/solved3.jsonl";
  CHECK(rei_run("solve --in " + q(in) + " --out " + q(threaded) + " --workers 2")
            .exit_code == 3);
  CHECK(slurp_file(threaded) == slurp_file(out));
}

TEST_CASE("a tiny footprint cap degrades solve to exit 4") {
  std::string dir = make_temp_dir("rei-cli");
  std::string in = dir + "/in.jsonl";
  write_instances(in, {pn_only("g1", {"01"}, {""})});
  std::string out = dir + "/solved.jsonl";
  RunResult r = rei_run("solve --in " + q(in) + " --out " + q(out) +
                        " --caps-footprints 1");
  CHECK(r.exit_code == 4);
  // read_instances revalidates the stored solution against P and N, so a
  // successful read means the fallback answer is still precise
  std::vector<Instance> solved = read_instances(out);
  REQUIRE(solved[0].solution.has_value());
  CHECK(solved[0].solution->minimal == false);
}

TEST_CASE("solve propagates unreadable inputs as exit 3") {
  std::string dir = make_temp_dir("rei-cli");
  RunResult r = rei_run("solve --in " + q(dir + "/missing.jsonl") + " --out " +
                        q(dir + "/out.jsonl"));
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("cannot open") != std::string::npos);
}

TEST_CASE("baseline and score match the in-process library") {
  std::string dir = make_temp_dir("rei-cli");
  std::string in = dir + "/in.jsonl";
  write_instances(in, {pn_only("g1", {"01"}, {""}), pn_only("g2", {"1"}, {"0"})});
  std::string gold = dir + "/gold.jsonl";
  REQUIRE(rei_run("solve --in " + q(in) + " --out " + q(gold)).exit_code == 0);

  CHECK(rei_run("baseline --kind pn_retrieval --in " + q(gold) + " --out " +
                q(dir + "/x.tsv"))
            .exit_code == 2);  // retrieval without --train

  std::string pred = dir + "/trivial.tsv";
  REQUIRE(rei_run("baseline --kind trivial --in " + q(gold) + " --out " + q(pred))
              .exit_code == 0);
  std::vector<Prediction> preds = read_predictions(pred);
  REQUIRE(preds.size() == 2);
  CHECK(preds[0].id == "g1");

  std::string report = dir + "/report.json";
  RunResult sc = rei_run("score --pred " + q(pred) + " --gold " + q(gold) + " --out " +
                         q(report));
  REQUIRE(sc.exit_code == 0);
  ScoreReport expected = score(preds, read_instances(gold));
  CHECK(sc.output == render_table(expected));
  CHECK(slurp_file(report) == render_json(expected));
  nlohmann::json m = nlohmann::json::parse(slurp_file(report + ".manifest.json"));
  CHECK(m["subcommand"] == "score");
  CHECK(m["inputs"].size() == 2);

  std::string rpred = dir + "/retrieved.tsv";
  REQUIRE(rei_run("baseline --kind re_retrieval --in " + q(gold) + " --train " +
                  q(gold) + " --out " + q(rpred))
              .exit_code == 0);
  // training on the test set itself must retrieve precise answers
  ScoreReport self = score(read_predictions(rpred), read_instances(gold));
  CHECK(self.precise_count == 2);
}

TEST_CASE("encode emits one token line per instance") {
  std::string dir = make_temp_dir("rei-cli");
  std::string out = dir + "/tokens.txt";
  RunResult r = rei_run("encode --in " + q(kFixtureDir + "/showcase.jsonl") + " --out " +
                        q(out));
  REQUIRE(r.exit_code == 0);
  CHECK(slurp_file(out) ==
        "[CLS] [POS] ONE ONE [POS] ZERO ZERO ZERO ZERO [POS] ZERO ZERO ZERO "
        "[NEG] e [NEG] ONE [NEG] ONE ZERO ONE "
        "[COST_A] 1 [COST_?] 1 [COST_*] 1 [COST_.] 1 [COST_+] 1 "
        "[BOR] ( ZERO * ) . ( ZERO + ( ONE . ONE ) ) [EOR]\n");
}

TEST_CASE("split honors the component structure or refuses") {
  std::string dir = make_temp_dir("rei-cli");

  auto with_solution = [](Instance inst, const std::string& rx) {
    inst.solution = SolutionRecord{rx, cost(parse(rx, inst.sigma, inst.ops), inst.costs),
                                   std::nullopt};
    return inst;
  };
  std::string in = dir + "/solved.jsonl";
  write_instances(in, {
                          with_solution(pn_only("i1", {"0"}, {"1"}), "0"),
                          with_solution(pn_only("i2", {"0"}, {"1"}), "(0*)"),
                          with_solution(pn_only("i3", {"0", "00"}, {"1"}), "(0*)"),
                          with_solution(pn_only("i4", {"1"}, {"0"}), "1"),
                      });
  std::string train = dir + "/train.jsonl", test = dir + "/test.jsonl";
  RunResult r = rei_run("split --in " + q(in) + " --train-out " + q(train) +
                        " --test-out " + q(test) + " --ratio 0.25 --seed 3");
  REQUIRE(r.exit_code == 0);
  std::vector<Instance> tr = read_instances(train), te = read_instances(test);
  CHECK(tr.size() + te.size() == 4);
  CHECK(!te.empty());
  nlohmann::json m = nlohmann::json::parse(slurp_file(train + ".manifest.json"));
  CHECK(m["subcommand"] == "split");
  CHECK(m["outputs"].size() == 2);

  std::string linked = dir + "/linked.jsonl";
  write_instances(linked, {
                              with_solution(pn_only("i1", {"0"}, {"1"}), "0"),
                              with_solution(pn_only("i2", {"0"}, {"1"}), "(0*)"),
                          });
  RunResult bad = rei_run("split --in " + q(linked) + " --train-out " + q(train) +
                          " --test-out " + q(test) + " --ratio 0.5 --seed 1");
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("infeasible") != std::string::npos);
}