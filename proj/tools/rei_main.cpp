// Command-line front end: every subcommand reads/writes files, emits a
// manifest next to its primary output, and keeps all randomness behind one
// explicit seed so artifacts can be regenerated byte-for-byte.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rei/baselines.hpp"
#include "rei/dataset.hpp"
#include "rei/digest.hpp"
#include "rei/error.hpp"
#include "rei/generator.hpp"
#include "rei/instance.hpp"
#include "rei/scoring.hpp"
#include "rei/solver.hpp"
#include "rei/version.hpp"

namespace {

using nlohmann::ordered_json;

// Exit codes shared by all subcommands.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kDataError = 3;
constexpr int kCapDegraded = 4;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_manifest(const std::string& anchor, const char* subcommand, ordered_json params,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, double wall_seconds) {
  ordered_json m;
  m["subcommand"] = subcommand;
  m["version"] = rei::kVersion;
  m["params"] = std::move(params);
  ordered_json in = ordered_json::object();
  for (const std::string& p : inputs) in[p] = rei::sha256_file(p);
  m["inputs"] = std::move(in);
  ordered_json out = ordered_json::object();
  for (const std::string& p : outputs) out[p] = rei::sha256_file(p);
  m["outputs"] = std::move(out);
  m["wall_seconds"] = wall_seconds;
  const std::string path = anchor + ".manifest.json";
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << m.dump(2) << "\n").flush()) {
    throw rei::DataError("cannot write manifest \"" + path + "\"");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rei::DataError("cannot open \"" + path + "\" for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct GenArgs {
  std::string recipe;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string ops;
  std::string costs;
  unsigned workers = 1;
};

int cmd_gen(const GenArgs& a) {
  Timer timer;
  rei::Recipe recipe = rei::parse_recipe(slurp(a.recipe));
  if (!a.ops.empty()) recipe.ops = rei::operator_set_from_name(a.ops);
  if (!a.costs.empty()) {
    if (a.costs == "uniform") recipe.random_costs = false;
    else if (a.costs == "random") recipe.random_costs = true;
    else throw rei::DataError("--costs must be uniform or random");
  }
  const std::uint64_t seed = a.seed_set ? a.seed : recipe.seed;
  std::vector<rei::Instance> instances = rei::gen_dataset(recipe, seed);
  rei::write_instances(a.out, instances);
  ordered_json params{{"recipe", a.recipe},
                      {"seed", seed},
                      {"ops", rei::operator_set_name(recipe.ops)},
                      {"costs", recipe.random_costs ? "random" : "uniform"},
                      {"instances", instances.size()}};
  write_manifest(a.out, "gen", std::move(params), {a.recipe}, {a.out}, timer.seconds());
  return kOk;
}

struct SolveArgs {
  std::string in;
  std::string out;
  std::int64_t caps_footprints = 10000000;
  double caps_seconds = 0.0;
  unsigned workers = 1;
};

int cmd_solve(const SolveArgs& a) {
  Timer timer;
  std::vector<rei::Instance> instances = rei::read_instances(a.in);
  rei::SolveCaps caps;
  caps.max_footprints = a.caps_footprints;
  caps.max_seconds = a.caps_seconds;
  caps.workers = a.workers;
  bool any_error = false;
  bool any_degraded = false;
  for (rei::Instance& inst : instances) {
    try {
      rei::SolveResult res = rei::solve(inst, caps);
      inst.solution = rei::SolutionRecord{rei::print(res.solution.regex), res.solution.cost,
                                          res.solution.minimal};
      inst.error.reset();
      if (!res.solution.minimal) any_degraded = true;
    } catch (const rei::InfeasibleError& e) {
      inst.solution.reset();
      inst.error = e.what();
      any_error = true;
    } catch (const rei::DataError& e) {
      inst.solution.reset();
      inst.error = e.what();
      any_error = true;
    }
  }
  rei::write_instances(a.out, instances);
  ordered_json params{{"caps_footprints", a.caps_footprints},
                      {"caps_seconds", a.caps_seconds},
                      {"workers", a.workers},
                      {"instances", instances.size()}};
  write_manifest(a.out, "solve", std::move(params), {a.in}, {a.out}, timer.seconds());
  if (any_error) return kDataError;
  return any_degraded ? kCapDegraded : kOk;
}

struct BaselineArgs {
  std::string kind;
  std::string in;
  std::string train;
  std::string out;
  unsigned workers = 1;
};

int cmd_baseline(const BaselineArgs& a) {
  Timer timer;
  std::vector<rei::Instance> test = rei::read_instances(a.in);
  std::vector<rei::Prediction> preds;
  preds.reserve(test.size());
  std::vector<std::string> inputs{a.in};
  if (a.kind == "trivial") {
    for (const rei::Instance& inst : test) {
      preds.push_back({inst.id, rei::print(rei::trivial(inst))});
    }
  } else {
    rei::TrainCorpus corpus = rei::TrainCorpus::build(rei::read_instances(a.train));
    inputs.push_back(a.train);
    for (const rei::Instance& inst : test) {
      rei::Regex r = a.kind == "pn_retrieval" ? rei::pn_retrieval(inst, corpus)
                                              : rei::re_retrieval(inst, corpus);
      preds.push_back({inst.id, rei::print(r)});
    }
  }
  rei::write_predictions(a.out, preds);
  ordered_json params{{"kind", a.kind}, {"predictions", preds.size()}};
  write_manifest(a.out, "baseline", std::move(params), inputs, {a.out}, timer.seconds());
  return kOk;
}

struct ScoreArgs {
  std::string pred;
  std::string gold;
  std::string out;
  unsigned workers = 1;
};

int cmd_score(const ScoreArgs& a) {
  Timer timer;
  rei::ScoreReport report =
      rei::score(rei::read_predictions(a.pred), rei::read_instances(a.gold));
  std::cout << rei::render_table(report);
  std::ofstream f(a.out, std::ios::binary);
  if (!f || !(f << rei::render_json(report)).flush()) {
    throw rei::DataError("cannot write report \"" + a.out + "\"");
  }
  ordered_json params{{"pred", a.pred}, {"gold", a.gold}};
  write_manifest(a.out, "score", std::move(params), {a.pred, a.gold}, {a.out}, timer.seconds());
  return kOk;
}

struct EncodeArgs {
  std::string in;
  std::string out;
  unsigned workers = 1;
};

int cmd_encode(const EncodeArgs& a) {
  Timer timer;
  std::vector<rei::Instance> instances = rei::read_instances(a.in);
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw rei::DataError("cannot open \"" + a.out + "\" for writing");
  for (const rei::Instance& inst : instances) {
    std::vector<std::string> tokens = rei::encode_tokens(inst);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) f << ' ';
      f << tokens[i];
    }
    f << '\n';
  }
  if (!f.flush()) throw rei::DataError("failed writing \"" + a.out + "\"");
  ordered_json params{{"instances", instances.size()}};
  write_manifest(a.out, "encode", std::move(params), {a.in}, {a.out}, timer.seconds());
  return kOk;
}

struct SplitArgs {
  std::string in;
  std::string train_out;
  std::string test_out;
  double ratio = 0.1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

int cmd_split(const SplitArgs& a) {
  Timer timer;
  std::vector<rei::Instance> instances = rei::read_instances(a.in);
  auto [train, test] = rei::split_train_test(instances, a.ratio, a.seed);
  rei::write_instances(a.train_out, train);
  rei::write_instances(a.test_out, test);
  ordered_json params{{"ratio", a.ratio},
                      {"seed", a.seed},
                      {"train_instances", train.size()},
                      {"test_instances", test.size()}};
  write_manifest(a.train_out, "split", std::move(params), {a.in}, {a.train_out, a.test_out},
                 timer.seconds());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regular expression inference toolkit"};
  app.set_version_flag("--version", rei::kVersion);
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance file from a recipe");
  gen_cmd->add_option("--recipe", gen.recipe, "recipe file (key = value lines)")
      ->required()
      ->envname("REI_RECIPE");
  gen_cmd->add_option("--out", gen.out, "output instance file")->required()->envname("REI_OUT");
  CLI::Option* seed_opt =
      gen_cmd->add_option("--seed", gen.seed, "master seed (overrides the recipe seed)")
          ->envname("REI_SEED");
  gen_cmd->add_option("--ops", gen.ops, "override the recipe operator set (reduced|full)")
      ->envname("REI_OPS");
  gen_cmd->add_option("--costs", gen.costs, "override the recipe cost mode (uniform|random)")
      ->envname("REI_COSTS");
  gen_cmd->add_option("--workers", gen.workers, "worker threads (generation is sequential)")
      ->envname("REI_WORKERS");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve every instance in a file");
  solve_cmd->add_option("--in", solve.in, "input instance file")->required()->envname("REI_IN");
  solve_cmd->add_option("--out", solve.out, "output instance file with solutions")
      ->required()
      ->envname("REI_OUT");
  solve_cmd
      ->add_option("--caps-footprints", solve.caps_footprints,
                   "abort the search once this many footprints are retained")
      ->envname("REI_CAPS_FOOTPRINTS");
  solve_cmd
      ->add_option("--caps-seconds", solve.caps_seconds,
                   "wall-clock budget per instance in seconds (0 = unlimited)")
      ->envname("REI_CAPS_SECONDS");
  solve_cmd->add_option("--workers", solve.workers, "worker threads for the search")
      ->envname("REI_WORKERS");

  BaselineArgs baseline;
  CLI::App* baseline_cmd = app.add_subcommand("baseline", "produce baseline predictions");
  baseline_cmd
      ->add_option("--kind", baseline.kind, "trivial, pn_retrieval or re_retrieval")
      ->required()
      ->check(CLI::IsMember({"trivial", "pn_retrieval", "re_retrieval"}));
  baseline_cmd->add_option("--in", baseline.in, "test instance file")
      ->required()
      ->envname("REI_IN");
  baseline_cmd->add_option("--train", baseline.train,
                           "training instance file (retrieval kinds only)");
  baseline_cmd->add_option("--out", baseline.out, "output prediction file")
      ->required()
      ->envname("REI_OUT");
  baseline_cmd->add_option("--workers", baseline.workers, "worker threads (baselines are sequential)")
      ->envname("REI_WORKERS");

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "score predictions against gold instances");
  score_cmd->add_option("--pred", score.pred, "prediction file")->required();
  score_cmd->add_option("--gold", score.gold, "gold instance file")->required();
  score_cmd->add_option("--out", score.out, "output JSON report")->required()->envname("REI_OUT");
  score_cmd->add_option("--workers", score.workers, "worker threads (scoring is sequential)")
      ->envname("REI_WORKERS");

  EncodeArgs encode;
  CLI::App* encode_cmd = app.add_subcommand("encode", "emit the token encoding of instances");
  encode_cmd->add_option("--in", encode.in, "input instance file")->required()->envname("REI_IN");
  encode_cmd->add_option("--out", encode.out, "output token file (one line per instance)")
      ->required()
      ->envname("REI_OUT");
  encode_cmd->add_option("--workers", encode.workers, "worker threads (encoding is sequential)")
      ->envname("REI_WORKERS");

  SplitArgs split;
  CLI::App* split_cmd = app.add_subcommand("split", "split instances into train and test");
  split_cmd->add_option("--in", split.in, "input instance file")->required()->envname("REI_IN");
  split_cmd->add_option("--train-out", split.train_out, "output training file")->required();
  split_cmd->add_option("--test-out", split.test_out, "output test file")->required();
  split_cmd->add_option("--ratio", split.ratio, "test fraction in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  split_cmd->add_option("--seed", split.seed, "shuffle seed")->envname("REI_SEED");
  split_cmd->add_option("--workers", split.workers, "worker threads (splitting is sequential)")
      ->envname("REI_WORKERS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  gen.seed_set = seed_opt->count() > 0;

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (baseline_cmd->parsed()) {
      if (baseline.kind != "trivial" && baseline.train.empty()) {
        std::cerr << "baseline: --train is required for retrieval kinds\n";
        return kUsage;
      }
      return cmd_baseline(baseline);
    }
    if (score_cmd->parsed()) return cmd_score(score);
    if (encode_cmd->parsed()) return cmd_encode(encode);
    if (split_cmd->parsed()) return cmd_split(split);
  } catch (const rei::DataError& e) {
    if (e.line() > 0) {
      std::cerr << "data error (line " << e.line() << "): " << e.what() << "\n";
    } else {
      std::cerr << "data error: " << e.what() << "\n";
    }
    return kDataError;
  } catch (const rei::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kDataError;
  } catch (const rei::ParseError& e) {
    std::cerr << "regex syntax error: " << e.what() << "\n";
    return kDataError;
  } catch (const rei::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kCapDegraded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
