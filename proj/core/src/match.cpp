#include "rei/match.hpp"

#include <algorithm>

namespace rei {

bool nullable(const Regex& r) {
  switch (r.op()) {
    case Op::EmptySet:
    case Op::Literal:
      return false;
    case Op::Epsilon:
    case Op::Option:
    case Op::Star:
      return true;
    case Op::Complement:
      return !nullable(r.left());
    case Op::Concat:
    case Op::Intersect:
      return nullable(r.left()) && nullable(r.right());
    case Op::Union:
      return nullable(r.left()) || nullable(r.right());
    case Op::Minus:
      return nullable(r.left()) && !nullable(r.right());
  }
  return false;
}

namespace {

// Smart constructors: language-preserving rewrites that keep iterated
// derivatives from blowing up. Used only on this path; enumeration and
// parsing build plain nodes.

Regex mk_concat(const Regex& a, const Regex& b) {
  if (a.op() == Op::EmptySet || b.op() == Op::EmptySet) return Regex::empty_set();
  if (a.op() == Op::Epsilon) return b;
  if (b.op() == Op::Epsilon) return a;
  return Regex::concat(a, b);
}

Regex mk_union(const Regex& a, const Regex& b) {
  if (a.op() == Op::EmptySet) return b;
  if (b.op() == Op::EmptySet) return a;
  if (a == b) return a;
  return Regex::alternation(a, b);
}

Regex mk_intersect(const Regex& a, const Regex& b) {
  if (a.op() == Op::EmptySet || b.op() == Op::EmptySet) return Regex::empty_set();
  if (a == b) return a;
  return Regex::intersect(a, b);
}

Regex mk_complement(const Regex& a) {
  if (a.op() == Op::Complement) return a.left();
  return Regex::complement(a);
}

Regex mk_minus(const Regex& a, const Regex& b) {
  if (a.op() == Op::EmptySet) return Regex::empty_set();
  if (b.op() == Op::EmptySet) return a;
  return Regex::minus(a, b);
}

}  // namespace

Regex derivative(const Regex& r, char a) {
  switch (r.op()) {
    case Op::EmptySet:
    case Op::Epsilon:
      return Regex::empty_set();
    case Op::Literal:
      return r.symbol() == a ? Regex::epsilon() : Regex::empty_set();
    case Op::Option:
      return derivative(r.left(), a);
    case Op::Star:
      return mk_concat(derivative(r.left(), a), r);
    case Op::Complement:
      return mk_complement(derivative(r.left(), a));
    case Op::Concat: {
      Regex head = mk_concat(derivative(r.left(), a), r.right());
      if (!nullable(r.left())) return head;
      return mk_union(head, derivative(r.right(), a));
    }
    case Op::Intersect:
      return mk_intersect(derivative(r.left(), a), derivative(r.right(), a));
    case Op::Union:
      return mk_union(derivative(r.left(), a), derivative(r.right(), a));
    case Op::Minus:
      return mk_minus(derivative(r.left(), a), derivative(r.right(), a));
  }
  return Regex::empty_set();
}

bool matches(const Regex& r, std::string_view w) {
  Regex cur = r;
  for (char c : w) cur = derivative(cur, c);
  return nullable(cur);
}

namespace {

// The bounded oracle represents a language as a membership bitmap over the
// universe of all strings of length <= max_len, indexed in shortlex order:
// index(w) = (s^|w| - 1)/(s - 1) + rank(w), rank reading w as a base-s
// numeral with digit order taken from sigma.
struct Universe {
  std::string sigma;
  std::size_t max_len;
  std::vector<std::string> strings;        // shortlex order
  std::vector<std::size_t> length_offset;  // index of first string per length

  Universe(std::string_view sig, std::size_t ml, std::uint64_t cap) : sigma(sig), max_len(ml) {
    if (sigma.empty()) throw DataError("alphabet is empty");
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i)
      if (sigma.find(sigma[i], i + 1) != std::string::npos)
        throw DataError("alphabet contains a repeated character");
    // Reject when |sigma|^(max_len+1) would exceed the cap, without overflow.
    std::uint64_t pow = 1;
    for (std::size_t l = 0; l <= max_len; ++l) {
      if (pow > cap / sigma.size())
        throw ResourceLimitError("bounded language universe exceeds the string cap");
      pow *= sigma.size();
    }
    if (pow > cap) throw ResourceLimitError("bounded language universe exceeds the string cap");
    strings.reserve(pow);
    length_offset.resize(max_len + 2, 0);
    std::string w;
    for (std::size_t l = 0; l <= max_len; ++l) {
      length_offset[l] = strings.size();
      w.assign(l, sigma[0]);
      for (;;) {
        strings.push_back(w);
        // odometer increment in sigma order
        std::size_t i = l;
        while (i > 0) {
          std::size_t d = sigma.find(w[i - 1]) + 1;
          if (d < sigma.size()) {
            w[i - 1] = sigma[d];
            break;
          }
          w[i - 1] = sigma[0];
          --i;
        }
        if (i == 0) break;
      }
    }
    length_offset[max_len + 1] = strings.size();
  }

  std::size_t index_of(const std::string& w) const {
    std::size_t idx = length_offset[w.size()];
    std::size_t rank = 0;
    for (char c : w) rank = rank * sigma.size() + sigma.find(c);
    return idx + rank;
  }
};

using Bitmap = std::vector<char>;

Bitmap lang_of(const Regex& r, const Universe& u) {
  const std::size_t total = u.strings.size();
  Bitmap out(total, 0);
  switch (r.op()) {
    case Op::EmptySet:
      return out;
    case Op::Epsilon:
      out[0] = 1;
      return out;
    case Op::Literal: {
      std::string s(1, r.symbol());
      if (u.max_len >= 1) out[u.index_of(s)] = 1;
      return out;
    }
    case Op::Option: {
      out = lang_of(r.left(), u);
      out[0] = 1;
      return out;
    }
    case Op::Complement: {
      Bitmap a = lang_of(r.left(), u);
      for (std::size_t i = 0; i < total; ++i) out[i] = !a[i];
      return out;
    }
    case Op::Union: {
      Bitmap a = lang_of(r.left(), u);
      Bitmap b = lang_of(r.right(), u);
      for (std::size_t i = 0; i < total; ++i) out[i] = a[i] | b[i];
      return out;
    }
    case Op::Intersect: {
      Bitmap a = lang_of(r.left(), u);
      Bitmap b = lang_of(r.right(), u);
      for (std::size_t i = 0; i < total; ++i) out[i] = a[i] & b[i];
      return out;
    }
    case Op::Minus: {
      Bitmap a = lang_of(r.left(), u);
      Bitmap b = lang_of(r.right(), u);
      for (std::size_t i = 0; i < total; ++i) out[i] = a[i] & !b[i];
      return out;
    }
    case Op::Concat: {
      Bitmap a = lang_of(r.left(), u);
      Bitmap b = lang_of(r.right(), u);
      for (std::size_t i = 0; i < total; ++i) {
        if (!a[i]) continue;
        const std::string& x = u.strings[i];
        for (std::size_t j = 0; j < total; ++j) {
          if (!b[j]) continue;
          const std::string& y = u.strings[j];
          if (x.size() + y.size() <= u.max_len) out[u.index_of(x + y)] = 1;
        }
      }
      return out;
    }
    case Op::Star: {
      Bitmap a = lang_of(r.left(), u);
      // w is in L* iff w = e, or w = uv with nonempty u in L and v in L*;
      // suffixes are strictly shorter, so one shortlex pass suffices.
      out[0] = 1;
      for (std::size_t i = 1; i < total; ++i) {
        const std::string& w = u.strings[i];
        for (std::size_t cut = 1; cut <= w.size() && !out[i]; ++cut) {
          std::string head = w.substr(0, cut);
          std::string tail = w.substr(cut);
          if (a[u.index_of(head)] && out[u.index_of(tail)]) out[i] = 1;
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> bounded_language(const Regex& r, std::string_view sigma,
                                          std::size_t max_len, std::uint64_t string_cap) {
  Universe u(sigma, max_len, string_cap);
  Bitmap members = lang_of(r, u);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < u.strings.size(); ++i)
    if (members[i]) out.push_back(u.strings[i]);
  return out;
}

}  // namespace rei
