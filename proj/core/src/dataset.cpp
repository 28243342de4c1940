#include "rei/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "rei/error.hpp"
#include "rei/match.hpp"
#include "rei/rng.hpp"

namespace rei {

namespace {

using json = nlohmann::ordered_json;

// Cost object keys in on-disk order, aligned with CostFunction fields.
struct CostKey {
  const char* key;
  std::int64_t CostFunction::* field;
  Op op;
};
constexpr CostKey kCostKeys[] = {
    {"a", &CostFunction::atom, Op::Literal},
    {"?", &CostFunction::option, Op::Option},
    {"*", &CostFunction::star, Op::Star},
    {"~", &CostFunction::complement, Op::Complement},
    {".", &CostFunction::concat, Op::Concat},
    {"&", &CostFunction::intersect, Op::Intersect},
    {"+", &CostFunction::alternation, Op::Union},
    {"-", &CostFunction::minus, Op::Minus},
};

json instance_to_json(const Instance& inst) {
  json j;
  j["id"] = inst.id;
  j["sigma"] = inst.sigma;
  j["pos"] = inst.pn.pos;
  j["neg"] = inst.pn.neg;
  j["ops"] = operator_set_name(inst.ops);
  json costs;
  for (const CostKey& ck : kCostKeys) costs[ck.key] = inst.costs.*(ck.field);
  j["costs"] = std::move(costs);
  if (inst.solution) {
    json s;
    s["regex"] = inst.solution->regex;
    s["cost"] = inst.solution->cost;
    if (inst.solution->minimal) s["minimal"] = *inst.solution->minimal;
    j["solution"] = std::move(s);
  }
  if (inst.error) j["error"] = *inst.error;
  return j;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw DataError(what, line_no);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                std::size_t line_no, const char* where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) fail(line_no, std::string("unknown ") + where + " key \"" + item.key() + "\"");
  }
}

std::string get_string(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    fail(line_no, std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> get_string_set(const json& j, const char* key, const std::string& sigma,
                                        std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    fail(line_no, std::string("field \"") + key + "\" must be an array of strings");
  }
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const json& item : *it) {
    if (!item.is_string()) fail(line_no, std::string("field \"") + key + "\" must hold strings");
    std::string w = item.get<std::string>();
    for (char c : w) {
      if (sigma.find(c) == std::string::npos) {
        fail(line_no, "string \"" + w + "\" in \"" + key + "\" uses characters outside sigma");
      }
    }
    if (!seen.insert(w).second) fail(line_no, "duplicate string \"" + w + "\" in \"" + key + "\"");
    out.push_back(std::move(w));
  }
  return out;
}

Instance instance_from_json(const json& j, std::size_t line_no) {
  if (!j.is_object()) fail(line_no, "instance record must be a JSON object");
  check_keys(j, {"id", "sigma", "pos", "neg", "ops", "costs", "solution", "error"}, line_no,
             "instance");
  Instance inst;
  inst.id = get_string(j, "id", line_no);
  inst.sigma = get_string(j, "sigma", line_no);
  if (inst.sigma.empty()) fail(line_no, "sigma is empty");
  constexpr std::string_view kReserved = "eE?*~.&-+()";
  for (std::size_t i = 0; i < inst.sigma.size(); ++i) {
    if (kReserved.find(inst.sigma[i]) != std::string_view::npos) {
      fail(line_no, "sigma contains the reserved character '" + std::string(1, inst.sigma[i]) + "'");
    }
    for (std::size_t k = i + 1; k < inst.sigma.size(); ++k) {
      if (inst.sigma[i] == inst.sigma[k]) fail(line_no, "sigma has repeated characters");
    }
  }
  inst.pn.pos = get_string_set(j, "pos", inst.sigma, line_no);
  inst.pn.neg = get_string_set(j, "neg", inst.sigma, line_no);
  try {
    inst.ops = operator_set_from_name(get_string(j, "ops", line_no));
  } catch (const DataError& e) {
    fail(line_no, e.what());
  }
  auto cit = j.find("costs");
  if (cit == j.end() || !cit->is_object()) fail(line_no, "field \"costs\" must be an object");
  if (cit->size() != std::size(kCostKeys)) fail(line_no, "field \"costs\" must have exactly 8 keys");
  for (const CostKey& ck : kCostKeys) {
    auto vit = cit->find(ck.key);
    if (vit == cit->end() || !vit->is_number_integer()) {
      fail(line_no, std::string("cost \"") + ck.key + "\" must be an integer");
    }
    std::int64_t v = vit->get<std::int64_t>();
    if (v < 1) fail(line_no, std::string("cost \"") + ck.key + "\" must be positive");
    inst.costs.*(ck.field) = v;
  }
  if (j.count("solution") && j.count("error")) {
    fail(line_no, "instance carries both a solution and an error");
  }
  if (auto sit = j.find("solution"); sit != j.end()) {
    if (!sit->is_object()) fail(line_no, "field \"solution\" must be an object");
    check_keys(*sit, {"regex", "cost", "minimal"}, line_no, "solution");
    SolutionRecord sol;
    sol.regex = get_string(*sit, "regex", line_no);
    auto cost_it = sit->find("cost");
    if (cost_it == sit->end() || !cost_it->is_number_integer()) {
      fail(line_no, "solution cost must be an integer");
    }
    sol.cost = cost_it->get<std::int64_t>();
    if (auto mit = sit->find("minimal"); mit != sit->end()) {
      if (!mit->is_boolean()) fail(line_no, "solution minimal flag must be a boolean");
      sol.minimal = mit->get<bool>();
    }
    Regex r = Regex::empty_set();
    try {
      r = parse(sol.regex, inst.sigma, inst.ops);
    } catch (const ParseError& e) {
      fail(line_no, "stored solution does not parse: " + std::string(e.what()));
    }
    if (cost(r, inst.costs) != sol.cost) {
      fail(line_no, "stored solution cost " + std::to_string(sol.cost) +
                        " does not match the recomputed cost " +
                        std::to_string(cost(r, inst.costs)));
    }
    for (const std::string& w : inst.pn.pos) {
      if (!matches(r, w)) fail(line_no, "stored solution rejects the positive \"" + w + "\"");
    }
    for (const std::string& w : inst.pn.neg) {
      if (matches(r, w)) fail(line_no, "stored solution accepts the negative \"" + w + "\"");
    }
    inst.solution = std::move(sol);
  }
  if (auto eit = j.find("error"); eit != j.end()) {
    if (!eit->is_string()) fail(line_no, "field \"error\" must be a string");
    inst.error = eit->get<std::string>();
  }
  return inst;
}

}  // namespace

void write_instances(const std::string& path, const std::vector<Instance>& instances) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open \"" + path + "\" for writing");
  for (const Instance& inst : instances) {
    out << instance_to_json(inst).dump() << '\n';
  }
  if (!out.flush()) throw DataError("failed writing \"" + path + "\"");
}

std::vector<Instance> read_instances(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open \"" + path + "\" for reading");
  std::vector<Instance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) fail(line_no, "empty line");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    out.push_back(instance_from_json(j, line_no));
  }
  return out;
}

void write_predictions(const std::string& path, const std::vector<Prediction>& preds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open \"" + path + "\" for writing");
  for (const Prediction& p : preds) {
    out << p.id << '\t' << p.regex << '\n';
  }
  if (!out.flush()) throw DataError("failed writing \"" + path + "\"");
}

std::vector<Prediction> read_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open \"" + path + "\" for reading");
  std::vector<Prediction> out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) fail(line_no, "prediction line has no tab separator");
    Prediction p{line.substr(0, tab), line.substr(tab + 1)};
    if (p.id.empty()) fail(line_no, "prediction id is empty");
    if (!ids.insert(p.id).second) fail(line_no, "duplicate prediction id \"" + p.id + "\"");
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// Cost token emission order ([COST_A] first, then the operators).
struct TokenKey {
  const char* token;
  std::int64_t CostFunction::* field;
  Op op;
};
constexpr TokenKey kTokenKeys[] = {
    {"[COST_A]", &CostFunction::atom, Op::Literal},
    {"[COST_?]", &CostFunction::option, Op::Option},
    {"[COST_*]", &CostFunction::star, Op::Star},
    {"[COST_.]", &CostFunction::concat, Op::Concat},
    {"[COST_+]", &CostFunction::alternation, Op::Union},
    {"[COST_~]", &CostFunction::complement, Op::Complement},
    {"[COST_&]", &CostFunction::intersect, Op::Intersect},
    {"[COST_-]", &CostFunction::minus, Op::Minus},
};

void push_symbols(std::vector<std::string>& tokens, const std::string& w) {
  if (w.empty()) {
    tokens.emplace_back("e");
    return;
  }
  for (char c : w) {
    if (c == '0') tokens.emplace_back("ZERO");
    else if (c == '1') tokens.emplace_back("ONE");
    else tokens.emplace_back(1, c);
  }
}

}  // namespace

std::vector<std::string> encode_tokens(const Instance& inst) {
  std::vector<std::string> tokens;
  tokens.emplace_back("[CLS]");
  for (const std::string& w : inst.pn.pos) {
    tokens.emplace_back("[POS]");
    push_symbols(tokens, w);
  }
  for (const std::string& w : inst.pn.neg) {
    tokens.emplace_back("[NEG]");
    push_symbols(tokens, w);
  }
  for (const TokenKey& tk : kTokenKeys) {
    if (tk.op != Op::Literal && !inst.ops.contains(tk.op)) continue;
    tokens.emplace_back(tk.token);
    for (char d : std::to_string(inst.costs.*(tk.field))) tokens.emplace_back(1, d);
  }
  tokens.emplace_back("[BOR]");
  if (inst.solution) {
    for (char c : inst.solution->regex) {
      if (c == '0') tokens.emplace_back("ZERO");
      else if (c == '1') tokens.emplace_back("ONE");
      else tokens.emplace_back(1, c);
    }
    tokens.emplace_back("[EOR]");
  }
  return tokens;
}

namespace {

[[noreturn]] void bad_token(std::size_t index, const std::string& what) {
  throw DataError("token " + std::to_string(index + 1) + ": " + what);
}

}  // namespace

Instance decode_tokens(const std::vector<std::string>& tokens) {
  std::size_t i = 0;
  auto peek = [&]() -> const std::string& {
    static const std::string kEnd;
    return i < tokens.size() ? tokens[i] : kEnd;
  };
  auto expect = [&](const char* tok) {
    if (peek() != tok) bad_token(i, std::string("expected ") + tok);
    ++i;
  };

  Instance inst;
  inst.id.clear();
  inst.sigma = "01";
  expect("[CLS]");

  auto read_group = [&]() {
    std::vector<std::string> symbols;
    while (i < tokens.size() && tokens[i][0] != '[') symbols.push_back(tokens[i++]);
    if (symbols.size() == 1 && symbols[0] == "e") return std::string();
    std::string w;
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      if (symbols[k] == "ZERO") w += '0';
      else if (symbols[k] == "ONE") w += '1';
      else bad_token(i - symbols.size() + k, "expected ZERO, ONE or a lone e");
    }
    return w;
  };
  while (peek() == "[POS]") {
    ++i;
    inst.pn.pos.push_back(read_group());
  }
  while (peek() == "[NEG]") {
    ++i;
    inst.pn.neg.push_back(read_group());
  }

  inst.costs = CostFunction{};
  for (const TokenKey& tk : kTokenKeys) inst.costs.*(tk.field) = kDisabledOpCost;
  std::uint32_t seen = 0;
  std::size_t next_key = 0;
  while (peek().rfind("[COST_", 0) == 0) {
    const std::string tok = tokens[i];
    std::size_t k = next_key;
    while (k < std::size(kTokenKeys) && tok != kTokenKeys[k].token) ++k;
    if (k == std::size(kTokenKeys)) bad_token(i, "unknown or out-of-order cost token " + tok);
    ++i;
    std::string digits;
    while (i < tokens.size() && tokens[i].size() == 1 && tokens[i][0] >= '0' && tokens[i][0] <= '9') {
      digits += tokens[i++];
    }
    if (digits.empty()) bad_token(i, "cost token without digits");
    if (digits.size() > 1 && digits[0] == '0') bad_token(i - digits.size(), "cost has a leading zero");
    if (digits.size() > 12) bad_token(i - digits.size(), "cost value out of range");
    inst.costs.*(kTokenKeys[k].field) = std::stoll(digits);
    seen |= 1u << k;
    next_key = k + 1;
  }
  if (seen == 0x1Fu) {
    inst.ops = OperatorSet::reduced();
  } else if (seen == 0xFFu) {
    inst.ops = OperatorSet::full();
  } else {
    bad_token(i, "cost tokens match neither the reduced nor the full operator set");
  }

  expect("[BOR]");
  if (i == tokens.size()) return inst;

  std::string text;
  while (i < tokens.size() && tokens[i] != "[EOR]") {
    const std::string& tok = tokens[i];
    if (tok == "ZERO") text += '0';
    else if (tok == "ONE") text += '1';
    else if (tok.size() == 1 && std::string_view("eE?*~.&-+()").find(tok[0]) != std::string_view::npos) {
      text += tok[0];
    } else {
      bad_token(i, "unexpected regex token " + tok);
    }
    ++i;
  }
  expect("[EOR]");
  if (i != tokens.size()) bad_token(i, "trailing tokens after [EOR]");

  SolutionRecord sol;
  sol.regex = text;
  Regex r = Regex::empty_set();
  try {
    r = parse(text, inst.sigma, inst.ops);
  } catch (const ParseError& e) {
    throw DataError(std::string("encoded solution does not parse: ") + e.what());
  }
  sol.cost = cost(r, inst.costs);
  inst.solution = std::move(sol);
  return inst;
}

std::pair<std::vector<Instance>, std::vector<Instance>>
split_train_test(const std::vector<Instance>& instances, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw DataError("split ratio must lie in [0, 1]");
  if (instances.empty()) return {{}, {}};

  auto pn_key = [](const PNSet& pn) {
    std::string key;
    for (const std::string& w : pn.pos) key += 'P' + std::to_string(w.size()) + ':' + w;
    for (const std::string& w : pn.neg) key += 'N' + std::to_string(w.size()) + ':' + w;
    return key;
  };

  // One group per PN content; groups merge when they share a canonical
  // solution regex.
  std::unordered_map<std::string, std::size_t> group_of_pn;
  std::vector<std::size_t> group_of_inst(instances.size());
  std::vector<std::size_t> parent;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::unordered_map<std::string, std::size_t> group_of_solution;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const Instance& inst = instances[idx];
    if (!inst.solution) throw DataError("instance \"" + inst.id + "\" has no solution to split by");
    std::string canon;
    try {
      canon = print(parse(inst.solution->regex, inst.sigma, inst.ops));
    } catch (const ParseError& e) {
      throw DataError("instance \"" + inst.id + "\" has an unparseable solution: " +
                      std::string(e.what()));
    }
    auto [git, fresh] = group_of_pn.emplace(pn_key(inst.pn), parent.size());
    if (fresh) parent.push_back(parent.size());
    group_of_inst[idx] = git->second;
    auto [sit, sfresh] = group_of_solution.emplace(canon, git->second);
    if (!sfresh) unite(sit->second, git->second);
  }

  std::vector<std::size_t> roots;
  std::unordered_map<std::size_t, std::size_t> comp_of_root;
  std::vector<std::int64_t> comp_size;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    std::size_t root = find(group_of_inst[idx]);
    auto [it, fresh] = comp_of_root.emplace(root, roots.size());
    if (fresh) {
      roots.push_back(root);
      comp_size.push_back(0);
    }
    comp_size[it->second] += 1;
  }

  if (ratio > 0.0 && ratio < 1.0 && roots.size() < 2) {
    throw InfeasibleError("all instances are linked by shared solutions; the split cannot "
                          "separate train from test");
  }

  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[rng.next_below(k)]);
  }

  const auto target = std::int64_t(std::llround(ratio * double(instances.size())));
  std::vector<bool> comp_in_test(roots.size(), false);
  std::int64_t in_test = 0;
  for (std::size_t comp : order) {
    if (in_test < target) {
      comp_in_test[comp] = true;
      in_test += comp_size[comp];
    }
  }

  std::pair<std::vector<Instance>, std::vector<Instance>> out;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    std::size_t comp = comp_of_root.at(find(group_of_inst[idx]));
    (comp_in_test[comp] ? out.second : out.first).push_back(instances[idx]);
  }
  return out;
}

}  // namespace rei
