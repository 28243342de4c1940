#include "rei/footprint.hpp"

#include <cstring>

namespace rei {

namespace {

constexpr std::size_t kMaxRows = 64;  // row bitmasks live in one word

std::uint64_t len_mask(std::size_t len) {
  return len >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << len) - 1;
}

std::uint64_t extract_bits(const std::uint64_t* words, std::size_t start, std::size_t len) {
  std::size_t w = start / 64, o = start % 64;
  std::uint64_t v = words[w] >> o;
  if (o != 0 && o + len > 64) v |= words[w + 1] << (64 - o);
  return v & len_mask(len);
}

void deposit_bits(std::uint64_t* words, std::size_t start, std::size_t len, std::uint64_t value) {
  std::size_t w = start / 64, o = start % 64;
  std::uint64_t m = len_mask(len);
  value &= m;
  words[w] = (words[w] & ~(m << o)) | (value << o);
  if (o != 0 && o + len > 64) {
    std::size_t hi = o + len - 64;
    std::uint64_t hm = len_mask(hi);
    words[w + 1] = (words[w + 1] & ~hm) | (value >> (64 - o));
  }
}

}  // namespace

FootprintShape::FootprintShape(const PNSet& pn) {
  strings_.reserve(pn.pos.size() + pn.neg.size());
  strings_.insert(strings_.end(), pn.pos.begin(), pn.pos.end());
  strings_.insert(strings_.end(), pn.neg.begin(), pn.neg.end());
  pos_count_ = pn.pos.size();

  offset_.resize(strings_.size());
  row_offset_.resize(strings_.size());
  std::size_t bits = 0;
  for (std::size_t s = 0; s < strings_.size(); ++s) {
    if (strings_[s].size() + 1 > kMaxRows)
      throw DataError("example string longer than " + std::to_string(kMaxRows - 1) +
                      " characters");
    offset_[s] = bits;
    row_offset_[s] = row_words_;
    std::size_t rows = strings_[s].size() + 1;
    bits += rows * (rows + 1) / 2;
    row_words_ += rows;
  }
  total_bits_ = bits;

  std::size_t nw = words();
  triangle_mask_.assign(nw, 0);
  identity_mask_.assign(nw, 0);
  full_mask_.assign(nw, 0);
  pos_full_mask_.assign(nw, 0);
  for (std::size_t b = 0; b < total_bits_; ++b)
    triangle_mask_[b / 64] |= std::uint64_t(1) << (b % 64);
  for (std::size_t s = 0; s < strings_.size(); ++s) {
    for (std::size_t i = 0; i <= strings_[s].size(); ++i) {
      std::size_t b = bit_index(s, i, i);
      identity_mask_[b / 64] |= std::uint64_t(1) << (b % 64);
    }
    std::size_t fb = full_bit(s);
    full_mask_[fb / 64] |= std::uint64_t(1) << (fb % 64);
    if (s < pos_count_) pos_full_mask_[fb / 64] |= std::uint64_t(1) << (fb % 64);
  }
}

bool fp_precise(const FootprintShape& shape, const std::uint64_t* fp) {
  for (std::size_t w = 0; w < shape.words(); ++w)
    if ((fp[w] & shape.full_mask()[w]) != shape.pos_full_mask()[w]) return false;
  return true;
}

void fp_or(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
           std::uint64_t* out) {
  for (std::size_t w = 0; w < shape.words(); ++w) out[w] = a[w] | b[w];
}

void fp_and(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
            std::uint64_t* out) {
  for (std::size_t w = 0; w < shape.words(); ++w) out[w] = a[w] & b[w];
}

void fp_minus(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
              std::uint64_t* out) {
  for (std::size_t w = 0; w < shape.words(); ++w) out[w] = a[w] & ~b[w];
}

void fp_complement(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out) {
  for (std::size_t w = 0; w < shape.words(); ++w) out[w] = ~a[w] & shape.triangle_mask()[w];
}

void fp_option(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out) {
  for (std::size_t w = 0; w < shape.words(); ++w) out[w] = a[w] | shape.identity_mask()[w];
}

namespace {

/// Row masks use absolute column indices: bit j of row i is interval (i, j).
void unpack_rows(const FootprintShape& shape, const std::uint64_t* fp, std::size_t s,
                 std::uint64_t* rows) {
  std::size_t n = shape.string_at(s).size() + 1;
  for (std::size_t i = 0; i < n; ++i)
    rows[i] = extract_bits(fp, shape.bit_index(s, i, i), n - i) << i;
}

void pack_rows(const FootprintShape& shape, std::size_t s, const std::uint64_t* rows,
               std::uint64_t* fp) {
  std::size_t n = shape.string_at(s).size() + 1;
  for (std::size_t i = 0; i < n; ++i)
    deposit_bits(fp, shape.bit_index(s, i, i), n - i, rows[i] >> i);
}

// Writes consecutive bit runs LSB-first, producing the packed triangle
// layout without read-modify-write per row.
struct BitWriter {
  std::uint64_t* out;
  std::uint64_t acc = 0;
  unsigned fill = 0;

  void push(std::uint64_t v, unsigned len) {  // v must fit in len bits
    acc |= v << fill;
    if (fill + len >= 64) {
      *out++ = acc;
      acc = fill ? v >> (64 - fill) : 0;
    }
    fill = (fill + len) & 63u;
  }
  void flush() {
    if (fill) *out++ = acc;
  }
};

}  // namespace

void fp_unpack(const FootprintShape& shape, const std::uint64_t* fp, std::uint64_t* rows) {
  for (std::size_t s = 0; s < shape.string_count(); ++s) {
    unpack_rows(shape, fp, s, rows + shape.row_offset(s));
  }
}

void fp_concat_rows(const FootprintShape& shape, const std::uint64_t* rows_a,
                    const std::uint64_t* rows_b, std::uint64_t* out) {
  BitWriter w{out};
  for (std::size_t s = 0; s < shape.string_count(); ++s) {
    std::size_t n = shape.string_at(s).size() + 1;
    const std::uint64_t* ra = rows_a + shape.row_offset(s);
    const std::uint64_t* rb = rows_b + shape.row_offset(s);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0, m = ra[i];
      while (m) {
        unsigned j = static_cast<unsigned>(__builtin_ctzll(m));
        m &= m - 1;
        acc |= rb[j];
      }
      w.push(acc >> i, static_cast<unsigned>(n - i));
    }
  }
  w.flush();
}

void fp_concat(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
               std::uint64_t* out) {
  std::uint64_t ra[kMaxRows], rb[kMaxRows], ro[kMaxRows];
  for (std::size_t s = 0; s < shape.string_count(); ++s) {
    std::size_t n = shape.string_at(s).size() + 1;
    unpack_rows(shape, a, s, ra);
    unpack_rows(shape, b, s, rb);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t acc = 0, m = ra[i];
      while (m) {
        unsigned j = static_cast<unsigned>(__builtin_ctzll(m));
        m &= m - 1;
        acc |= rb[j];
      }
      ro[i] = acc;
    }
    pack_rows(shape, s, ro, out);
  }
}

void fp_star(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out) {
  std::uint64_t c[kMaxRows];
  for (std::size_t s = 0; s < shape.string_count(); ++s) {
    std::size_t n = shape.string_at(s).size() + 1;
    unpack_rows(shape, a, s, c);
    // Drop empty-segment self loops, then close transitively; a string is
    // in L* iff it splits into >= 0 nonempty L-segments.
    for (std::size_t i = 0; i < n; ++i) c[i] &= ~(std::uint64_t(1) << i);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < k; ++i)
        if ((c[i] >> k) & 1u) c[i] |= c[k];
    for (std::size_t i = 0; i < n; ++i) c[i] |= std::uint64_t(1) << i;
    pack_rows(shape, s, c, out);
  }
}

Footprint fp_combine(Op op, const FootprintShape& shape, const Footprint& a, const Footprint* b) {
  Footprint out;
  out.words.assign(shape.words(), 0);
  switch (op) {
    case Op::Option:
      fp_option(shape, a.words.data(), out.words.data());
      break;
    case Op::Star:
      fp_star(shape, a.words.data(), out.words.data());
      break;
    case Op::Complement:
      fp_complement(shape, a.words.data(), out.words.data());
      break;
    case Op::Concat:
      fp_concat(shape, a.words.data(), b->words.data(), out.words.data());
      break;
    case Op::Intersect:
      fp_and(shape, a.words.data(), b->words.data(), out.words.data());
      break;
    case Op::Union:
      fp_or(shape, a.words.data(), b->words.data(), out.words.data());
      break;
    case Op::Minus:
      fp_minus(shape, a.words.data(), b->words.data(), out.words.data());
      break;
    default:
      assert(false && "fp_combine takes a non-leaf constructor");
  }
  return out;
}

std::vector<std::pair<Regex, Footprint>> leaf_footprints(const FootprintShape& shape,
                                                         std::string_view sigma, OperatorSet ops) {
  std::vector<std::pair<Regex, Footprint>> out;
  if (ops.contains(Op::Epsilon)) {
    Footprint fp;
    fp.words = shape.identity_mask();
    out.emplace_back(Regex::epsilon(), std::move(fp));
  }
  if (ops.contains(Op::Literal)) {
    for (char a : sigma) {
      Footprint fp;
      fp.words.assign(shape.words(), 0);
      for (std::size_t s = 0; s < shape.string_count(); ++s) {
        const std::string& w = shape.string_at(s);
        for (std::size_t i = 0; i < w.size(); ++i)
          if (w[i] == a) fp.set(shape.bit_index(s, i, i + 1));
      }
      out.emplace_back(Regex::literal(a), std::move(fp));
    }
  }
  if (ops.contains(Op::EmptySet)) {
    Footprint fp;
    fp.words.assign(shape.words(), 0);
    out.emplace_back(Regex::empty_set(), std::move(fp));
  }
  return out;
}

Footprint footprint_of(const Regex& r, const FootprintShape& shape) {
  switch (r.op()) {
    case Op::EmptySet: {
      Footprint fp;
      fp.words.assign(shape.words(), 0);
      return fp;
    }
    case Op::Epsilon: {
      Footprint fp;
      fp.words = shape.identity_mask();
      return fp;
    }
    case Op::Literal: {
      Footprint fp;
      fp.words.assign(shape.words(), 0);
      for (std::size_t s = 0; s < shape.string_count(); ++s) {
        const std::string& w = shape.string_at(s);
        for (std::size_t i = 0; i < w.size(); ++i)
          if (w[i] == r.symbol()) fp.set(shape.bit_index(s, i, i + 1));
      }
      return fp;
    }
    case Op::Option:
    case Op::Star:
    case Op::Complement: {
      Footprint a = footprint_of(r.left(), shape);
      return fp_combine(r.op(), shape, a);
    }
    default: {
      Footprint a = footprint_of(r.left(), shape);
      Footprint b = footprint_of(r.right(), shape);
      return fp_combine(r.op(), shape, a, &b);
    }
  }
}

}  // namespace rei
