#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "rei/error.hpp"

namespace rei {

/// The ten constructors of the extended regular expression grammar.
enum class Op : std::uint8_t {
  EmptySet,    // E   the empty language
  Epsilon,     // e   the empty string
  Literal,     // a   a single alphabet character
  Option,      // r?
  Star,        // r*
  Complement,  // ~r
  Concat,      // r.r
  Intersect,   // r&r
  Union,       // r+r
  Minus,       // r-r  language restriction (set difference)
};

inline constexpr int kOpCount = 10;

inline constexpr bool is_leaf(Op op) {
  return op == Op::EmptySet || op == Op::Epsilon || op == Op::Literal;
}
inline constexpr bool is_unary(Op op) {
  return op == Op::Option || op == Op::Star || op == Op::Complement;
}
inline constexpr bool is_binary(Op op) {
  return op == Op::Concat || op == Op::Intersect || op == Op::Union || op == Op::Minus;
}

/// Immutable regex AST. Cheap to copy (shared subtrees); structurally
/// compared. Safe to share across threads once constructed.
class Regex {
 public:
  static Regex empty_set() { return Regex(Op::EmptySet, 0, nullptr, nullptr); }
  static Regex epsilon() { return Regex(Op::Epsilon, 0, nullptr, nullptr); }
  static Regex literal(char symbol) { return Regex(Op::Literal, symbol, nullptr, nullptr); }
  static Regex option(Regex r) { return Regex(Op::Option, 0, r.node_, nullptr); }
  static Regex star(Regex r) { return Regex(Op::Star, 0, r.node_, nullptr); }
  static Regex complement(Regex r) { return Regex(Op::Complement, 0, r.node_, nullptr); }
  static Regex concat(Regex l, Regex r) { return Regex(Op::Concat, 0, l.node_, r.node_); }
  static Regex intersect(Regex l, Regex r) { return Regex(Op::Intersect, 0, l.node_, r.node_); }
  static Regex alternation(Regex l, Regex r) { return Regex(Op::Union, 0, l.node_, r.node_); }
  static Regex minus(Regex l, Regex r) { return Regex(Op::Minus, 0, l.node_, r.node_); }

  /// Generic constructor used by enumeration code. `l`/`r` must match the
  /// arity of `op`.
  static Regex make(Op op, char symbol, const Regex* l, const Regex* r);

  Op op() const { return node_->op; }
  char symbol() const {
    assert(op() == Op::Literal);
    return node_->symbol;
  }
  /// Child of a unary node, or left child of a binary node.
  Regex left() const {
    assert(!is_leaf(op()));
    return Regex(node_->left);
  }
  Regex right() const {
    assert(is_binary(op()));
    return Regex(node_->right);
  }

  bool operator==(const Regex& other) const;
  bool operator!=(const Regex& other) const { return !(*this == other); }

 private:
  struct Node {
    Op op;
    char symbol;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  Regex(Op op, char symbol, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r)
      : node_(std::make_shared<const Node>(Node{op, symbol, std::move(l), std::move(r)})) {}
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool node_equal(const Node* a, const Node* b);

  std::shared_ptr<const Node> node_;
};

/// Which of the ten constructors an instance permits. Two presets exist:
/// the reduced set {e, a, ?, *, ., +} and the full set of all ten.
class OperatorSet {
 public:
  static OperatorSet none() { return OperatorSet(0); }
  static OperatorSet reduced() {
    OperatorSet s(0);
    s.add(Op::Epsilon);
    s.add(Op::Literal);
    s.add(Op::Option);
    s.add(Op::Star);
    s.add(Op::Concat);
    s.add(Op::Union);
    return s;
  }
  static OperatorSet full() { return OperatorSet((1u << kOpCount) - 1); }

  bool contains(Op op) const { return (bits_ >> static_cast<unsigned>(op)) & 1u; }
  void add(Op op) { bits_ |= 1u << static_cast<unsigned>(op); }
  bool is_subset_of(OperatorSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool operator==(const OperatorSet&) const = default;

 private:
  explicit OperatorSet(std::uint16_t bits) : bits_(bits) {}
  std::uint16_t bits_;
};

/// "reduced" / "full"; throws DataError on anything else.
OperatorSet operator_set_from_name(std::string_view name);
/// Inverse of the above; throws DataError for sets that are neither preset.
std::string operator_set_name(OperatorSet ops);

/// Irrelevant operators of reduced-set instances carry this cost so they can
/// never beat the trivial solution.
inline constexpr std::int64_t kDisabledOpCost = 1000000;

/// Per-operator cost constants. `atom` covers the empty set, the empty
/// string and every alphabet character jointly.
struct CostFunction {
  std::int64_t atom = 1;
  std::int64_t option = 1;
  std::int64_t star = 1;
  std::int64_t complement = 1;
  std::int64_t concat = 1;
  std::int64_t intersect = 1;
  std::int64_t alternation = 1;
  std::int64_t minus = 1;

  static CostFunction uniform() { return CostFunction{}; }

  std::int64_t of(Op op) const {
    switch (op) {
      case Op::EmptySet:
      case Op::Epsilon:
      case Op::Literal:
        return atom;
      case Op::Option:
        return option;
      case Op::Star:
        return star;
      case Op::Complement:
        return complement;
      case Op::Concat:
        return concat;
      case Op::Intersect:
        return intersect;
      case Op::Union:
        return alternation;
      case Op::Minus:
        return minus;
    }
    return atom;
  }

  bool operator==(const CostFunction&) const = default;
};

/// Parses the ASCII concrete syntax: 'e' epsilon, 'E' empty set, postfix
/// '?'/'*', prefix '~', binary '.', '&', '-', '+' (loosest), '(' ')'.
/// Binary operators are left-associative; input may omit parentheses.
/// Throws ParseError (with position) on syntax errors, symbols outside
/// `sigma` and constructors outside `ops`.
Regex parse(std::string_view text, std::string_view sigma, OperatorSet ops);

/// Canonical fully parenthesized form; parse(print(r)) == r.
std::string print(const Regex& r);

/// Total cost of the expression tree; parentheses are free.
std::int64_t cost(const Regex& r, const CostFunction& cf);

/// Exact set of constructors occurring in r.
OperatorSet operators_used(const Regex& r);

/// Number of AST nodes (equals cost under the uniform cost function).
std::size_t node_count(const Regex& r);

}  // namespace rei
