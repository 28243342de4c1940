#include "rei/regex.hpp"

namespace rei {

Regex Regex::make(Op op, char symbol, const Regex* l, const Regex* r) {
  switch (op) {
    case Op::EmptySet:
      return empty_set();
    case Op::Epsilon:
      return epsilon();
    case Op::Literal:
      return literal(symbol);
    case Op::Option:
      assert(l != nullptr);
      return option(*l);
    case Op::Star:
      assert(l != nullptr);
      return star(*l);
    case Op::Complement:
      assert(l != nullptr);
      return complement(*l);
    case Op::Concat:
      assert(l != nullptr && r != nullptr);
      return concat(*l, *r);
    case Op::Intersect:
      assert(l != nullptr && r != nullptr);
      return intersect(*l, *r);
    case Op::Union:
      assert(l != nullptr && r != nullptr);
      return alternation(*l, *r);
    case Op::Minus:
      assert(l != nullptr && r != nullptr);
      return minus(*l, *r);
  }
  return empty_set();
}

bool Regex::node_equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::EmptySet:
    case Op::Epsilon:
      return true;
    case Op::Literal:
      return a->symbol == b->symbol;
    case Op::Option:
    case Op::Star:
    case Op::Complement:
      return node_equal(a->left.get(), b->left.get());
    case Op::Concat:
    case Op::Intersect:
    case Op::Union:
    case Op::Minus:
      return node_equal(a->left.get(), b->left.get()) &&
             node_equal(a->right.get(), b->right.get());
  }
  return false;
}

bool Regex::operator==(const Regex& other) const {
  return node_equal(node_.get(), other.node_.get());
}

OperatorSet operator_set_from_name(std::string_view name) {
  if (name == "reduced") return OperatorSet::reduced();
  if (name == "full") return OperatorSet::full();
  throw DataError("unknown operator set \"" + std::string(name) + "\"");
}

std::string operator_set_name(OperatorSet ops) {
  if (ops == OperatorSet::reduced()) return "reduced";
  if (ops == OperatorSet::full()) return "full";
  throw DataError("operator set is neither \"reduced\" nor \"full\"");
}

namespace {

// Characters with fixed meaning in the concrete syntax; an alphabet may not
// reuse them.
constexpr std::string_view kReserved = "eE?*~.&-+()";

class Parser {
 public:
  Parser(std::string_view text, std::string_view sigma, OperatorSet ops)
      : text_(text), sigma_(sigma), ops_(ops) {}

  Regex run() {
    for (char c : sigma_) {
      if (kReserved.find(c) != std::string_view::npos)
        throw DataError(std::string("alphabet contains reserved character '") + c + "'");
    }
    Regex r = parse_union();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void require(Op op, char spelled) const {
    if (!ops_.contains(op))
      fail(std::string("operator '") + spelled + "' is not in the instance operator set");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  Regex parse_union() {
    Regex r = parse_minus();
    while (!at_end() && peek() == '+') {
      require(Op::Union, '+');
      ++pos_;
      r = Regex::alternation(r, parse_minus());
    }
    return r;
  }

  Regex parse_minus() {
    Regex r = parse_intersect();
    while (!at_end() && peek() == '-') {
      require(Op::Minus, '-');
      ++pos_;
      r = Regex::minus(r, parse_intersect());
    }
    return r;
  }

  Regex parse_intersect() {
    Regex r = parse_concat();
    while (!at_end() && peek() == '&') {
      require(Op::Intersect, '&');
      ++pos_;
      r = Regex::intersect(r, parse_concat());
    }
    return r;
  }

  Regex parse_concat() {
    Regex r = parse_prefix();
    while (!at_end() && peek() == '.') {
      require(Op::Concat, '.');
      ++pos_;
      r = Regex::concat(r, parse_prefix());
    }
    return r;
  }

  Regex parse_prefix() {
    if (!at_end() && peek() == '~') {
      require(Op::Complement, '~');
      ++pos_;
      return Regex::complement(parse_prefix());
    }
    return parse_postfix();
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    for (;;) {
      if (!at_end() && peek() == '?') {
        require(Op::Option, '?');
        ++pos_;
        r = Regex::option(r);
      } else if (!at_end() && peek() == '*') {
        require(Op::Star, '*');
        ++pos_;
        r = Regex::star(r);
      } else {
        return r;
      }
    }
  }

  Regex parse_atom() {
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '(') {
      ++pos_;
      Regex r = parse_union();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'e') {
      require(Op::Epsilon, 'e');
      ++pos_;
      return Regex::epsilon();
    }
    if (c == 'E') {
      require(Op::EmptySet, 'E');
      ++pos_;
      return Regex::empty_set();
    }
    if (sigma_.find(c) != std::string_view::npos) {
      require(Op::Literal, c);
      ++pos_;
      return Regex::literal(c);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::string_view sigma_;
  OperatorSet ops_;
  std::size_t pos_ = 0;
};

void print_into(const Regex& r, std::string& out) {
  switch (r.op()) {
    case Op::EmptySet:
      out += 'E';
      return;
    case Op::Epsilon:
      out += 'e';
      return;
    case Op::Literal:
      out += r.symbol();
      return;
    case Op::Option:
      out += '(';
      print_into(r.left(), out);
      out += "?)";
      return;
    case Op::Star:
      out += '(';
      print_into(r.left(), out);
      out += "*)";
      return;
    case Op::Complement:
      out += "(~";
      print_into(r.left(), out);
      out += ')';
      return;
    case Op::Concat:
    case Op::Intersect:
    case Op::Union:
    case Op::Minus: {
      char sep = r.op() == Op::Concat      ? '.'
                 : r.op() == Op::Intersect ? '&'
                 : r.op() == Op::Union     ? '+'
                                           : '-';
      out += '(';
      print_into(r.left(), out);
      out += sep;
      print_into(r.right(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

Regex parse(std::string_view text, std::string_view sigma, OperatorSet ops) {
  return Parser(text, sigma, ops).run();
}

std::string print(const Regex& r) {
  std::string out;
  print_into(r, out);
  return out;
}

std::int64_t cost(const Regex& r, const CostFunction& cf) {
  std::int64_t total = cf.of(r.op());
  if (is_unary(r.op())) {
    total += cost(r.left(), cf);
  } else if (is_binary(r.op())) {
    total += cost(r.left(), cf) + cost(r.right(), cf);
  }
  return total;
}

OperatorSet operators_used(const Regex& r) {
  OperatorSet s = OperatorSet::none();
  struct Walk {
    static void go(const Regex& r, OperatorSet& s) {
      s.add(r.op());
      if (is_unary(r.op())) {
        go(r.left(), s);
      } else if (is_binary(r.op())) {
        go(r.left(), s);
        go(r.right(), s);
      }
    }
  };
  Walk::go(r, s);
  return s;
}

std::size_t node_count(const Regex& r) {
  if (is_leaf(r.op())) return 1;
  if (is_unary(r.op())) return 1 + node_count(r.left());
  return 1 + node_count(r.left()) + node_count(r.right());
}

}  // namespace rei
