#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rei/instance.hpp"
#include "rei/regex.hpp"

namespace rei {

/// Fixed geometry of footprints for one PN-set. A footprint stores, for
/// every example string w (P strings in input order, then N strings) and
/// every interval 0 <= i <= j <= |w|, whether the regex matches w[i..j).
/// Bits are laid out string by string, each string's upper triangle in
/// row-major order, and packed LSB-first into 64-bit words; that packed
/// sequence is the dedup key.
class FootprintShape {
 public:
  explicit FootprintShape(const PNSet& pn);

  std::size_t string_count() const { return strings_.size(); }
  std::size_t pos_count() const { return pos_count_; }
  const std::string& string_at(std::size_t s) const { return strings_[s]; }

  std::size_t total_bits() const { return total_bits_; }
  std::size_t words() const { return (total_bits_ + 63) / 64; }

  /// Flat bit position of interval (i, j) of string s; requires i <= j.
  std::size_t bit_index(std::size_t s, std::size_t i, std::size_t j) const {
    std::size_t rows = strings_[s].size() + 1;
    return offset_[s] + i * rows - i * (i - 1) / 2 + (j - i);
  }
  /// Index of string s's first row in the unpacked-rows form (fp_unpack).
  std::size_t row_offset(std::size_t s) const { return row_offset_[s]; }
  /// Total row count over all strings: the unpacked-rows buffer size.
  std::size_t row_words() const { return row_words_; }
  /// Bit position of the whole-string interval (0, |w|) of string s.
  std::size_t full_bit(std::size_t s) const { return bit_index(s, 0, strings_[s].size()); }

  /// All triangle bits set (the complement mask).
  const std::vector<std::uint64_t>& triangle_mask() const { return triangle_mask_; }
  /// Bits (i, i) of every string (the footprint of the empty string regex).
  const std::vector<std::uint64_t>& identity_mask() const { return identity_mask_; }
  /// Whole-string bits of every string / of the P strings only.
  const std::vector<std::uint64_t>& full_mask() const { return full_mask_; }
  const std::vector<std::uint64_t>& pos_full_mask() const { return pos_full_mask_; }

 private:
  std::vector<std::string> strings_;
  std::vector<std::size_t> offset_;
  std::vector<std::size_t> row_offset_;
  std::size_t row_words_ = 0;
  std::size_t pos_count_ = 0;
  std::size_t total_bits_ = 0;
  std::vector<std::uint64_t> triangle_mask_;
  std::vector<std::uint64_t> identity_mask_;
  std::vector<std::uint64_t> full_mask_;
  std::vector<std::uint64_t> pos_full_mask_;
};

/// One packed footprint. Word count always equals shape.words().
struct Footprint {
  std::vector<std::uint64_t> words;

  bool get(std::size_t bit) const { return (words[bit / 64] >> (bit % 64)) & 1u; }
  void set(std::size_t bit) { words[bit / 64] |= std::uint64_t(1) << (bit % 64); }
  bool operator==(const Footprint&) const = default;
};

/// True iff the footprint accepts exactly the P strings among the
/// whole-string bits (the solver's goal test).
bool fp_precise(const FootprintShape& shape, const std::uint64_t* fp);
inline bool fp_precise(const FootprintShape& shape, const Footprint& fp) {
  return fp_precise(shape, fp.words.data());
}

// Raw kernels used by the solver's hot path; out may not alias the inputs
// for fp_concat / fp_star.
void fp_or(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
           std::uint64_t* out);
void fp_and(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
            std::uint64_t* out);
void fp_minus(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
              std::uint64_t* out);
void fp_complement(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out);
void fp_option(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out);
void fp_concat(const FootprintShape& shape, const std::uint64_t* a, const std::uint64_t* b,
               std::uint64_t* out);
void fp_star(const FootprintShape& shape, const std::uint64_t* a, std::uint64_t* out);

/// Expands fp into one word per row: string s's row i sits at
/// rows[shape.row_offset(s) + i], with bit j (absolute column) = interval
/// (i, j). Lets the solver unpack each operand once per batch of
/// concatenations instead of once per candidate.
void fp_unpack(const FootprintShape& shape, const std::uint64_t* fp, std::uint64_t* rows);
/// fp_concat over operands already in unpacked-rows form.
void fp_concat_rows(const FootprintShape& shape, const std::uint64_t* rows_a,
                    const std::uint64_t* rows_b, std::uint64_t* out);

/// Footprint of `op` applied to operand footprints; `b` is ignored for
/// unary operators and leaves are not accepted.
Footprint fp_combine(Op op, const FootprintShape& shape, const Footprint& a,
                     const Footprint* b = nullptr);

/// Footprints of the leaf regexes enabled by `ops`: the empty string, each
/// alphabet character in sigma order, and the empty set last when allowed.
std::vector<std::pair<Regex, Footprint>> leaf_footprints(const FootprintShape& shape,
                                                         std::string_view sigma, OperatorSet ops);

/// Footprint of an arbitrary regex, built leaf-up through fp_combine.
Footprint footprint_of(const Regex& r, const FootprintShape& shape);

}  // namespace rei
