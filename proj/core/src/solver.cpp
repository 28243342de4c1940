#include "rei/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "rei/baselines.hpp"
#include "rei/match.hpp"
#include "rei/rng.hpp"

namespace rei {

namespace {

std::uint64_t hash_words(const std::uint64_t* p, std::size_t n) {
  std::uint64_t h = 0x51ED270B35859343ull + n;
  for (std::size_t i = 0; i < n; ++i) h = mix64(h ^ p[i]);
  return h;
}

struct WordsSpan {
  const std::uint64_t* p;
  std::size_t n;
};

struct WordsHash {
  using is_transparent = void;
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    return hash_words(v.data(), v.size());
  }
  std::size_t operator()(const WordsSpan& s) const { return hash_words(s.p, s.n); }
};

struct WordsEq {
  using is_transparent = void;
  bool operator()(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
    return a == b;
  }
  bool operator()(const WordsSpan& a, const std::vector<std::uint64_t>& b) const {
    return a.n == b.size() && std::equal(a.p, a.p + a.n, b.data());
  }
  bool operator()(const std::vector<std::uint64_t>& a, const WordsSpan& b) const {
    return (*this)(b, a);
  }
  bool operator()(const WordsSpan& a, const WordsSpan& b) const {
    return a.n == b.n && std::equal(a.p, a.p + a.n, b.p);
  }
};

// A retained or candidate expression: children l/r are arena ids of sealed
// entries. Leaves ignore l/r; sym is only set for literals.
struct Entry {
  Op op;
  char sym;
  std::uint32_t l, r;
};

// Stratum under construction: new footprint -> witness, ties resolved
// toward the lexicographically least printed form.
using PendingMap = std::unordered_map<std::vector<std::uint64_t>, Entry, WordsHash, WordsEq>;

// The candidate's printed form as up to five ready segments; avoids
// materializing strings on the duplicate-footprint path.
struct PrintView {
  std::string_view seg[5];
  unsigned n = 0;
};

// Lexicographic comparison of two segmented strings.
int cmp_views(const PrintView& a, const PrintView& b) {
  unsigned ia = 0, ib = 0;
  std::size_t pa = 0, pb = 0;
  while (ia < a.n && ib < b.n) {
    std::string_view sa = a.seg[ia];
    std::string_view sb = b.seg[ib];
    std::size_t take = std::min(sa.size() - pa, sb.size() - pb);
    int c = std::memcmp(sa.data() + pa, sb.data() + pb, take);
    if (c != 0) return c;
    pa += take;
    pb += take;
    if (pa == sa.size()) {
      ++ia;
      pa = 0;
    }
    if (pb == sb.size()) {
      ++ib;
      pb = 0;
    }
  }
  bool ea = ia == a.n, eb = ib == b.n;
  return ea == eb ? 0 : (ea ? -1 : 1);
}

struct Job {
  enum class Kind : std::uint8_t {
    Leaves,    // seed stratum with leaf footprints
    Unary,     // op over source chunk [lb, le)
    Ordered,   // op over [lb, le) x [rb, re), order as given
    Triangle,  // commutative op within one stratum: pairs i <= j
    Oriented,  // commutative op across strata: orient each pair by key
  };
  Kind kind;
  Op op = Op::EmptySet;
  std::uint32_t lb = 0, le = 0;
  std::uint32_t rb = 0, re = 0;
};

constexpr Op kUnaryOps[] = {Op::Option, Op::Star, Op::Complement};
constexpr Op kBinaryOps[] = {Op::Concat, Op::Intersect, Op::Union, Op::Minus};
constexpr std::uint32_t kJobChunk = 1024;

class Search {
 public:
  Search(const Instance& inst, const SolveCaps& caps)
      : inst_(inst), caps_(caps), shape_(validated_pn(inst)), W_(shape_.words()) {}

  SolveResult run() {
    t0_ = std::chrono::steady_clock::now();
    fallback_ = fallback_regex();
    bound_ = cost(fallback_, inst_.costs);

    std::set<std::int64_t> agenda;
    agenda.insert(inst_.costs.atom);
    std::optional<Solution> found;
    while (!agenda.empty() && !found) {
      std::int64_t k = *agenda.begin();
      agenda.erase(agenda.begin());
      if (k > bound_) break;

      PendingMap pending = build_stratum(k);
      if (stop_.load(std::memory_order_relaxed)) {
        stats_.cap_hit = true;
        break;
      }
      std::size_t sealed_before = strata_.size();
      found = seal_stratum(k, std::move(pending));
      if (found) break;
      if (stats_.retained_footprints > caps_.max_footprints) {
        stats_.cap_hit = true;
        break;
      }
      if (strata_.size() == sealed_before) continue;  // empty stratum: nothing new to combine
      for (Op u : kUnaryOps)
        if (inst_.ops.contains(u)) maybe_push(agenda, k + inst_.costs.of(u));
      for (Op b : kBinaryOps)
        if (inst_.ops.contains(b))
          for (const Stratum& st : strata_) maybe_push(agenda, k + st.cost + inst_.costs.of(b));
    }

    SolveResult res;
    res.solution = found ? *found : Solution{fallback_, bound_, !stats_.cap_hit};
    verify_precise(res.solution.regex);
    stats_.wall_seconds = elapsed();
    res.stats = stats_;
    res.samples = std::move(samples_);
    return res;
  }

 private:
  struct Stratum {
    std::int64_t cost;
    std::uint32_t begin, end;
  };

  struct Scratch {
    std::vector<std::uint64_t> out;     // one packed footprint
    std::vector<std::uint64_t> rows_l;  // unpacked rows of a left chunk
    std::vector<std::uint64_t> rows_r;
  };

  static const PNSet& validated_pn(const Instance& inst) {
    if (inst.sigma.empty()) throw DataError("alphabet is empty");
    for (std::size_t i = 0; i + 1 < inst.sigma.size(); ++i)
      if (inst.sigma.find(inst.sigma[i], i + 1) != std::string::npos)
        throw DataError("alphabet contains a repeated character");
    auto check = [&](const std::vector<std::string>& side) {
      for (const std::string& w : side)
        for (char c : w)
          if (inst.sigma.find(c) == std::string::npos)
            throw DataError("example string contains a character outside the alphabet");
    };
    check(inst.pn.pos);
    check(inst.pn.neg);
    std::unordered_set<std::string> pos(inst.pn.pos.begin(), inst.pn.pos.end());
    for (const std::string& w : inst.pn.neg)
      if (pos.count(w)) throw InfeasibleError("positive and negative sets overlap on \"" + w + "\"");
    return inst.pn;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

  // Precise by construction whatever the operator set: the union of P when P
  // is non-empty, otherwise the cheapest expressible all-rejecting regex.
  Regex fallback_regex() const {
    if (!inst_.pn.pos.empty()) return trivial(inst_);
    if (inst_.ops.contains(Op::EmptySet)) return Regex::empty_set();
    std::unordered_set<std::string> neg(inst_.pn.neg.begin(), inst_.pn.neg.end());
    std::string w;
    for (;;) {
      if (!neg.count(w)) break;
      // shortlex odometer over sigma
      std::size_t i = w.size();
      while (i > 0) {
        std::size_t d = inst_.sigma.find(w[i - 1]) + 1;
        if (d < inst_.sigma.size()) {
          w[i - 1] = inst_.sigma[d];
          break;
        }
        w[i - 1] = inst_.sigma[0];
        --i;
      }
      if (i == 0) w.assign(w.size() + 1, inst_.sigma[0]);
    }
    return string_regex(w);
  }

  void verify_precise(const Regex& r) const {
    for (const std::string& w : inst_.pn.pos)
      if (!matches(r, w)) throw std::logic_error("solver produced a regex rejecting a positive string");
    for (const std::string& w : inst_.pn.neg)
      if (matches(r, w)) throw std::logic_error("solver produced a regex accepting a negative string");
  }

  void maybe_push(std::set<std::int64_t>& agenda, std::int64_t k) const {
    if (k <= bound_) agenda.insert(k);
  }

  const std::uint64_t* fp_of(std::uint32_t id) const { return arena_.data() + std::size_t(id) * W_; }

  // Print segments of a candidate; `lit` is backing storage the literal
  // segment may point at, so it must outlive the view.
  void fill_view(const Entry& e, PrintView& v, char& lit) const {
    switch (e.op) {
      case Op::EmptySet:
        v.seg[0] = "E";
        v.n = 1;
        return;
      case Op::Epsilon:
        v.seg[0] = "e";
        v.n = 1;
        return;
      case Op::Literal:
        lit = e.sym;
        v.seg[0] = std::string_view(&lit, 1);
        v.n = 1;
        return;
      case Op::Option:
        v.seg[0] = "(";
        v.seg[1] = printed_[e.l];
        v.seg[2] = "?)";
        v.n = 3;
        return;
      case Op::Star:
        v.seg[0] = "(";
        v.seg[1] = printed_[e.l];
        v.seg[2] = "*)";
        v.n = 3;
        return;
      case Op::Complement:
        v.seg[0] = "(~";
        v.seg[1] = printed_[e.l];
        v.seg[2] = ")";
        v.n = 3;
        return;
      case Op::Concat:
      case Op::Intersect:
      case Op::Union:
      case Op::Minus: {
        static constexpr const char* kInfix[] = {".", "&", "+", "-"};
        v.seg[0] = "(";
        v.seg[1] = printed_[e.l];
        v.seg[2] = kInfix[int(e.op) - int(Op::Concat)];
        v.seg[3] = printed_[e.r];
        v.seg[4] = ")";
        v.n = 5;
        return;
      }
    }
  }

  int cmp_entries(const Entry& a, const Entry& b) const {
    PrintView va, vb;
    char la = 0, lb = 0;
    fill_view(a, va, la);
    fill_view(b, vb, lb);
    return cmp_views(va, vb);
  }

  std::string print_of(const Entry& e) const {
    PrintView v;
    char lit = 0;
    fill_view(e, v, lit);
    std::string out;
    std::size_t len = 0;
    for (unsigned i = 0; i < v.n; ++i) len += v.seg[i].size();
    out.reserve(len);
    for (unsigned i = 0; i < v.n; ++i) out.append(v.seg[i]);
    return out;
  }

  Regex entry_regex(std::uint32_t id) const {
    const Entry& e = entries_[id];
    switch (e.op) {
      case Op::EmptySet:
      case Op::Epsilon:
      case Op::Literal:
        return Regex::make(e.op, e.sym, nullptr, nullptr);
      case Op::Option:
      case Op::Star:
      case Op::Complement: {
        Regex c = entry_regex(e.l);
        return Regex::make(e.op, 0, &c, nullptr);
      }
      default: {
        Regex a = entry_regex(e.l);
        Regex b = entry_regex(e.r);
        return Regex::make(e.op, 0, &a, &b);
      }
    }
  }

  // --- global footprint table (open addressing, ids into the arena)

  bool global_contains(const std::uint64_t* fp) const {
    if (slots_.empty()) return false;
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash_words(fp, W_) & mask;
    while (slots_[i]) {
      const std::uint64_t* have = fp_of(slots_[i] - 1);
      if (std::equal(fp, fp + W_, have)) return true;
      i = (i + 1) & mask;
    }
    return false;
  }

  void global_insert(std::uint32_t id) {
    if (slots_.empty()) slots_.assign(1024, 0);
    if ((table_count_ + 1) * 3 > slots_.size() * 2) grow_table();
    probe_insert(id);
    ++table_count_;
  }

  void probe_insert(std::uint32_t id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash_words(fp_of(id), W_) & mask;
    while (slots_[i]) i = (i + 1) & mask;
    slots_[i] = id + 1;
  }

  void grow_table() {
    std::vector<std::uint32_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, 0);
    for (std::uint32_t s : old)
      if (s) probe_insert(s - 1);
  }

  // --- candidate generation

  void unary_fp(Op op, const std::uint64_t* a, std::uint64_t* out) const {
    switch (op) {
      case Op::Option:
        fp_option(shape_, a, out);
        break;
      case Op::Star:
        fp_star(shape_, a, out);
        break;
      default:
        fp_complement(shape_, a, out);
        break;
    }
  }

  void binary_fp(Op op, const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
    switch (op) {
      case Op::Concat:
        fp_concat(shape_, a, b, out);
        break;
      case Op::Intersect:
        fp_and(shape_, a, b, out);
        break;
      case Op::Union:
        fp_or(shape_, a, b, out);
        break;
      default:
        fp_minus(shape_, a, b, out);
        break;
    }
  }

  void consider(Op op, char sym, std::uint32_t l, std::uint32_t r, const std::uint64_t* fp,
                PendingMap& pending) const {
    if (global_contains(fp)) return;
    Entry cand{op, sym, l, r};
    auto it = pending.find(WordsSpan{fp, W_});
    if (it == pending.end()) {
      pending.emplace(std::vector<std::uint64_t>(fp, fp + W_), cand);
    } else if (cmp_entries(cand, it->second) < 0) {
      it->second = cand;
    }
  }

  bool check_clock() const {
    if (stop_.load(std::memory_order_relaxed)) return false;
    if (caps_.max_seconds > 0 && elapsed() > caps_.max_seconds) {
      stop_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  bool tick(std::uint64_t& counter) const {
    if ((++counter & 0x1FFF) == 0) return check_clock();
    return true;
  }

  void run_job(const Job& job, PendingMap& pending, std::uint64_t& counter,
               Scratch& scratch) const {
    if (!check_clock()) return;
    std::uint64_t* out = scratch.out.data();
    switch (job.kind) {
      case Job::Kind::Leaves: {
        for (auto& [rx, fp] : leaf_footprints(shape_, inst_.sigma, inst_.ops)) {
          char sym = rx.op() == Op::Literal ? rx.symbol() : 0;
          consider(rx.op(), sym, 0, 0, fp.words.data(), pending);
          ++counter;
        }
        return;
      }
      case Job::Kind::Unary: {
        for (std::uint32_t i = job.lb; i < job.le; ++i) {
          unary_fp(job.op, fp_of(i), out);
          consider(job.op, 0, i, 0, out, pending);
          if (!tick(counter)) return;
        }
        return;
      }
      case Job::Kind::Ordered: {
        if (job.op == Op::Concat) {
          run_concat_job(job, pending, counter, scratch);
          return;
        }
        for (std::uint32_t i = job.lb; i < job.le; ++i)
          for (std::uint32_t j = job.rb; j < job.re; ++j) {
            binary_fp(job.op, fp_of(i), fp_of(j), out);
            consider(job.op, 0, i, j, out, pending);
            if (!tick(counter)) return;
          }
        return;
      }
      case Job::Kind::Triangle: {
        for (std::uint32_t i = job.lb; i < job.le; ++i)
          for (std::uint32_t j = std::max(i, job.rb); j < job.re; ++j) {
            binary_fp(job.op, fp_of(i), fp_of(j), out);
            consider(job.op, 0, i, j, out, pending);
            if (!tick(counter)) return;
          }
        return;
      }
      case Job::Kind::Oriented: {
        for (std::uint32_t i = job.lb; i < job.le; ++i)
          for (std::uint32_t j = job.rb; j < job.re; ++j) {
            const std::uint64_t* a = fp_of(i);
            const std::uint64_t* b = fp_of(j);
            bool left_first = std::lexicographical_compare(a, a + W_, b, b + W_);
            std::uint32_t l = left_first ? i : j;
            std::uint32_t r = left_first ? j : i;
            binary_fp(job.op, a, b, out);
            consider(job.op, 0, l, r, out, pending);
            if (!tick(counter)) return;
          }
        return;
      }
    }
  }

  // Concatenation dominates the candidate mix; unpacking each chunk's
  // operands once (instead of per pair) roughly halves its cost.
  void run_concat_job(const Job& job, PendingMap& pending, std::uint64_t& counter,
                      Scratch& scratch) const {
    const std::size_t rw = shape_.row_words();
    scratch.rows_l.resize(std::size_t(job.le - job.lb) * rw);
    scratch.rows_r.resize(std::size_t(job.re - job.rb) * rw);
    for (std::uint32_t i = job.lb; i < job.le; ++i)
      fp_unpack(shape_, fp_of(i), scratch.rows_l.data() + std::size_t(i - job.lb) * rw);
    for (std::uint32_t j = job.rb; j < job.re; ++j)
      fp_unpack(shape_, fp_of(j), scratch.rows_r.data() + std::size_t(j - job.rb) * rw);
    std::uint64_t* out = scratch.out.data();
    for (std::uint32_t i = job.lb; i < job.le; ++i) {
      const std::uint64_t* ra = scratch.rows_l.data() + std::size_t(i - job.lb) * rw;
      for (std::uint32_t j = job.rb; j < job.re; ++j) {
        fp_concat_rows(shape_, ra, scratch.rows_r.data() + std::size_t(j - job.rb) * rw, out);
        consider(Op::Concat, 0, i, j, out, pending);
        if (!tick(counter)) return;
      }
    }
  }

  void chunked(std::vector<Job>& jobs, Job proto) const {
    for (std::uint32_t b = proto.lb; b < proto.le; b += kJobChunk) {
      Job j = proto;
      j.lb = b;
      j.le = std::min(proto.le, b + kJobChunk);
      jobs.push_back(j);
    }
  }

  void chunked2(std::vector<Job>& jobs, Job proto) const {
    const bool triangle = proto.kind == Job::Kind::Triangle;
    for (std::uint32_t bl = proto.lb; bl < proto.le; bl += kJobChunk)
      for (std::uint32_t br = proto.rb; br < proto.re; br += kJobChunk) {
        if (triangle && br + kJobChunk <= bl) continue;  // fully below the diagonal
        Job j = proto;
        j.lb = bl;
        j.le = std::min(proto.le, bl + kJobChunk);
        j.rb = br;
        j.re = std::min(proto.re, br + kJobChunk);
        jobs.push_back(j);
      }
  }

  PendingMap build_stratum(std::int64_t k) {
    std::vector<Job> jobs;
    if (k == inst_.costs.atom) jobs.push_back(Job{Job::Kind::Leaves});
    for (Op u : kUnaryOps) {
      if (!inst_.ops.contains(u)) continue;
      auto it = stratum_at_.find(k - inst_.costs.of(u));
      if (it == stratum_at_.end()) continue;
      const Stratum& src = strata_[it->second];
      chunked(jobs, Job{Job::Kind::Unary, u, src.begin, src.end});
    }
    for (Op b : kBinaryOps) {
      if (!inst_.ops.contains(b)) continue;
      bool comm = b == Op::Union || b == Op::Intersect;
      for (const Stratum& s1 : strata_) {
        std::int64_t other = k - inst_.costs.of(b) - s1.cost;
        if (other < inst_.costs.atom) continue;
        auto it = stratum_at_.find(other);
        if (it == stratum_at_.end()) continue;
        const Stratum& s2 = strata_[it->second];
        if (comm) {
          if (s1.cost > other) continue;  // symmetric pair handled once
          if (s1.cost == other)
            chunked2(jobs, Job{Job::Kind::Triangle, b, s1.begin, s1.end, s1.begin, s1.end});
          else
            chunked2(jobs, Job{Job::Kind::Oriented, b, s1.begin, s1.end, s2.begin, s2.end});
        } else {
          chunked2(jobs, Job{Job::Kind::Ordered, b, s1.begin, s1.end, s2.begin, s2.end});
        }
      }
    }

    PendingMap master;
    int nw = caps_.workers;
    if (nw <= 1 || jobs.size() <= 1) {
      Scratch scratch;
      scratch.out.resize(W_);
      std::uint64_t counter = 0;
      for (const Job& j : jobs) {
        run_job(j, master, counter, scratch);
        if (stop_.load(std::memory_order_relaxed)) break;
      }
      stats_.candidates += counter;
      return master;
    }

    std::size_t threads = std::min<std::size_t>(nw, jobs.size());
    std::vector<PendingMap> locals(threads);
    std::vector<std::uint64_t> counters(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        Scratch scratch;
        scratch.out.resize(W_);
        for (std::size_t ji = t; ji < jobs.size(); ji += threads) {
          run_job(jobs[ji], locals[t], counters[t], scratch);
          if (stop_.load(std::memory_order_relaxed)) return;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (std::size_t t = 0; t < threads; ++t) {
      stats_.candidates += counters[t];
      // Keeping the minimum printed form per footprint makes the merge
      // independent of worker count and merge order.
      while (!locals[t].empty()) {
        auto node = locals[t].extract(locals[t].begin());
        auto it = master.find(node.key());
        if (it == master.end())
          master.insert(std::move(node));
        else if (cmp_entries(node.mapped(), it->second) < 0)
          it->second = node.mapped();
      }
    }
    return master;
  }

  std::optional<Solution> seal_stratum(std::int64_t k, PendingMap&& pending) {
    if (pending.empty()) return std::nullopt;
    std::vector<std::pair<std::vector<std::uint64_t>, Entry>> items;
    items.reserve(pending.size());
    while (!pending.empty()) {
      auto node = pending.extract(pending.begin());
      items.emplace_back(std::move(node.key()), node.mapped());
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::uint32_t begin = static_cast<std::uint32_t>(entries_.size());
    std::uint32_t best = UINT32_MAX;
    for (auto& [words, entry] : items) {
      std::uint32_t id = static_cast<std::uint32_t>(entries_.size());
      arena_.insert(arena_.end(), words.begin(), words.end());
      entries_.push_back(entry);
      printed_.push_back(print_of(entry));
      global_insert(id);
      ++stats_.retained_footprints;
      if (caps_.audit_stride && stats_.retained_footprints % caps_.audit_stride == 0)
        samples_.push_back(AuditSample{entry_regex(id), Footprint{words}});
      if (fp_precise(shape_, words.data()) &&
          (best == UINT32_MAX || printed_[id] < printed_[best]))
        best = id;
    }
    strata_.push_back(Stratum{k, begin, static_cast<std::uint32_t>(entries_.size())});
    stratum_at_[k] = strata_.size() - 1;
    ++stats_.strata_sealed;
    if (best != UINT32_MAX) return Solution{entry_regex(best), k, true};
    return std::nullopt;
  }

  const Instance& inst_;
  SolveCaps caps_;
  FootprintShape shape_;
  std::size_t W_;
  std::int64_t bound_ = 0;
  Regex fallback_ = Regex::empty_set();
  std::chrono::steady_clock::time_point t0_;
  mutable std::atomic<bool> stop_{false};

  std::vector<std::uint64_t> arena_;
  std::vector<Entry> entries_;
  std::vector<std::string> printed_;  // canonical text per sealed entry
  std::vector<Stratum> strata_;
  std::map<std::int64_t, std::size_t> stratum_at_;
  std::vector<std::uint32_t> slots_;
  std::size_t table_count_ = 0;

  SolveStats stats_;
  std::vector<AuditSample> samples_;
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveCaps& caps) {
  Search search(inst, caps);
  return search.run();
}

std::int64_t trivial_cost_bound(const Instance& inst) { return cost(trivial(inst), inst.costs); }

}  // namespace rei
