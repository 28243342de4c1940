#include "rei/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "rei/error.hpp"

namespace rei {

namespace {

constexpr std::uint64_t kUniverseCap = std::uint64_t{1} << 62;

void check_sigma(std::string_view sigma) {
  if (sigma.empty()) throw DataError("alphabet is empty");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      if (sigma[i] == sigma[j]) throw DataError("alphabet has repeated characters");
    }
  }
}

}  // namespace

std::uint64_t universe_size(std::size_t sigma_size, int le) {
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (int l = 0; l <= le; ++l) {
    if (total >= kUniverseCap - layer) return kUniverseCap;
    total += layer;
    if (layer > kUniverseCap / sigma_size) return kUniverseCap;
    layer *= sigma_size;
  }
  return total;
}

std::string sample_string_uniform(SplitMix64& rng, std::string_view sigma, int le) {
  const std::uint64_t s = sigma.size();
  std::uint64_t rem = rng.next_below(universe_size(sigma.size(), le));
  std::uint64_t layer = 1;
  std::size_t len = 0;
  while (rem >= layer) {
    rem -= layer;
    layer *= s;
    ++len;
  }
  // rem is the rank of the string within Σ^len, most significant digit first.
  std::string w(len, sigma[0]);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = sigma[rem % s];
    rem /= s;
  }
  return w;
}

std::string sample_string_length_first(SplitMix64& rng, std::string_view sigma, int le) {
  const std::size_t len = rng.next_below(std::uint64_t(le) + 1);
  std::string w(len, sigma[0]);
  for (std::size_t i = 0; i < len; ++i) {
    w[i] = sigma[rng.next_below(sigma.size())];
  }
  return w;
}

PNSet gen_pn(const GenParams& params) {
  check_sigma(params.sigma);
  if (params.le < 0) throw DataError("maximum string length is negative");
  if (params.p < 1 || params.n < 1) throw DataError("P and N must be non-empty");
  const std::uint64_t total = universe_size(params.sigma.size(), params.le);
  if (std::uint64_t(params.p) + std::uint64_t(params.n) > total) {
    throw InfeasibleError("cannot draw " + std::to_string(params.p) + "+" +
                          std::to_string(params.n) + " distinct strings of length <= " +
                          std::to_string(params.le));
  }
  SplitMix64 rng(params.seed);
  auto draw = [&]() {
    return params.scheme == GenParams::Scheme::kUniform
               ? sample_string_uniform(rng, params.sigma, params.le)
               : sample_string_length_first(rng, params.sigma, params.le);
  };
  std::unordered_set<std::string> used;
  PNSet pn;
  pn.pos.reserve(params.p);
  pn.neg.reserve(params.n);
  while (pn.pos.size() < std::size_t(params.p)) {
    std::string w = draw();
    if (used.insert(w).second) pn.pos.push_back(std::move(w));
  }
  while (pn.neg.size() < std::size_t(params.n)) {
    std::string w = draw();
    if (used.insert(w).second) pn.neg.push_back(std::move(w));
  }
  return pn;
}

CostFunction gen_cost(OperatorSet ops, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto draw = [&](bool relevant) -> std::int64_t {
    return relevant ? std::int64_t(1 + rng.next_below(49)) : kDisabledOpCost;
  };
  CostFunction cf;
  cf.atom = draw(true);
  cf.option = draw(ops.contains(Op::Option));
  cf.star = draw(ops.contains(Op::Star));
  cf.complement = draw(ops.contains(Op::Complement));
  cf.concat = draw(ops.contains(Op::Concat));
  cf.intersect = draw(ops.contains(Op::Intersect));
  cf.alternation = draw(ops.contains(Op::Union));
  cf.minus = draw(ops.contains(Op::Minus));
  return cf;
}

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint64_t to_u64(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    if (value.empty() || value[0] == '-') throw std::invalid_argument(value);
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw DataError("recipe key " + key + " needs an unsigned integer, got \"" + value + "\"");
  }
}

int to_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw DataError("recipe key " + key + " needs an integer, got \"" + value + "\"");
  }
}

}  // namespace

Recipe parse_recipe(const std::string& text) {
  Recipe r;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError("recipe line " + std::to_string(line_no) + " is not key = value");
    }
    std::string key = trimmed(t.substr(0, eq));
    std::string value = trimmed(t.substr(eq + 1));
    if (key == "pn_sets") {
      r.pn_sets = to_u64(value, key);
    } else if (key == "mix") {
      if (value == "even") r.mix = Recipe::Mix::kEven;
      else if (value == "type1") r.mix = Recipe::Mix::kType1Only;
      else if (value == "type2") r.mix = Recipe::Mix::kType2Only;
      else throw DataError("recipe mix must be even, type1 or type2");
    } else if (key == "ops") {
      r.ops = operator_set_from_name(value);
    } else if (key == "costs") {
      if (value == "uniform") r.random_costs = false;
      else if (value == "random") r.random_costs = true;
      else throw DataError("recipe costs must be uniform or random");
    } else if (key == "sigma") {
      r.sigma = value;
    } else if (key == "le_min_type1") {
      r.le_min_type1 = to_int(value, key);
    } else if (key == "le_max_type1") {
      r.le_max_type1 = to_int(value, key);
    } else if (key == "le_min_type2") {
      r.le_min_type2 = to_int(value, key);
    } else if (key == "le_max_type2") {
      r.le_max_type2 = to_int(value, key);
    } else if (key == "p_min") {
      r.p_min = to_int(value, key);
    } else if (key == "p_max") {
      r.p_max = to_int(value, key);
    } else if (key == "n_min") {
      r.n_min = to_int(value, key);
    } else if (key == "n_max") {
      r.n_max = to_int(value, key);
    } else if (key == "seed") {
      r.seed = to_u64(value, key);
    } else if (key == "id_prefix") {
      r.id_prefix = value;
    } else {
      throw DataError("unknown recipe key \"" + key + "\"");
    }
  }
  check_sigma(r.sigma);
  if (r.pn_sets == 0) throw DataError("recipe needs at least one PN-set");
  if (r.le_min_type1 < 0 || r.le_min_type2 < 0) throw DataError("recipe length bounds are negative");
  if (r.le_min_type1 > r.le_max_type1 || r.le_min_type2 > r.le_max_type2) {
    throw DataError("recipe length bounds are inverted");
  }
  if (r.p_min < 1 || r.n_min < 1) throw DataError("recipe set sizes must be at least 1");
  if (r.p_min > r.p_max || r.n_min > r.n_max) throw DataError("recipe set size bounds are inverted");
  if (r.id_prefix.empty()) throw DataError("recipe id_prefix is empty");
  return r;
}

namespace {

std::string format_id(const std::string& prefix, std::uint64_t t, int variant) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-%06llu", static_cast<unsigned long long>(t));
  std::string id = prefix + buf;
  if (variant >= 0) {
    std::snprintf(buf, sizeof(buf), "-%02d", variant);
    id += buf;
  }
  return id;
}

// Ensures the redraw loop below can terminate: the largest length bound must
// admit the smallest requested sizes.
void check_feasible(const Recipe& r, bool type1) {
  const int le_max = type1 ? r.le_max_type1 : r.le_max_type2;
  if (std::uint64_t(r.p_min) + std::uint64_t(r.n_min) > universe_size(r.sigma.size(), le_max)) {
    throw InfeasibleError("recipe cannot produce disjoint sets: p_min + n_min exceeds the "
                          "number of strings of length <= " + std::to_string(le_max));
  }
}

}  // namespace

std::vector<Instance> gen_dataset(const Recipe& recipe, std::uint64_t seed) {
  const bool uses_type1 = recipe.mix != Recipe::Mix::kType2Only;
  const bool uses_type2 = recipe.mix != Recipe::Mix::kType1Only;
  if (uses_type1) check_feasible(recipe, true);
  if (uses_type2) check_feasible(recipe, false);

  std::vector<Instance> out;
  out.reserve(recipe.pn_sets * (recipe.random_costs ? 20 : 1));
  for (std::uint64_t t = 0; t < recipe.pn_sets; ++t) {
    const bool type1 = recipe.mix == Recipe::Mix::kEven ? (t % 2 == 0)
                                                        : (recipe.mix == Recipe::Mix::kType1Only);
    SplitMix64 rng = substream(seed, {1, t});
    GenParams params;
    params.scheme = type1 ? GenParams::Scheme::kUniform : GenParams::Scheme::kLengthFirst;
    params.sigma = recipe.sigma;
    const int le_min = type1 ? recipe.le_min_type1 : recipe.le_min_type2;
    const int le_max = type1 ? recipe.le_max_type1 : recipe.le_max_type2;
    for (;;) {
      params.le = le_min + int(rng.next_below(std::uint64_t(le_max - le_min) + 1));
      params.p = recipe.p_min + int(rng.next_below(std::uint64_t(recipe.p_max - recipe.p_min) + 1));
      params.n = recipe.n_min + int(rng.next_below(std::uint64_t(recipe.n_max - recipe.n_min) + 1));
      if (std::uint64_t(params.p) + std::uint64_t(params.n) <=
          universe_size(recipe.sigma.size(), params.le)) {
        break;
      }
    }
    params.seed = rng.next();
    PNSet pn = gen_pn(params);

    Instance base;
    base.sigma = recipe.sigma;
    base.pn = std::move(pn);
    base.ops = recipe.ops;
    base.costs = CostFunction::uniform();
    if (!recipe.random_costs) {
      base.id = format_id(recipe.id_prefix, t, -1);
      out.push_back(std::move(base));
    } else {
      for (int v = 0; v < 20; ++v) {
        Instance inst = base;
        inst.id = format_id(recipe.id_prefix, t, v);
        if (v > 0) {
          inst.costs = gen_cost(recipe.ops, substream(seed, {2, t, std::uint64_t(v)}).next());
        }
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

}  // namespace rei
