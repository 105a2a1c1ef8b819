#pragma once

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace rde::mtl {

/// Discrete time interval [lo, hi] attached to a temporal operator.
/// hi == kUnbounded encodes an open upper bound ("inf" in the syntax).
struct Interval {
  static constexpr int kUnbounded = std::numeric_limits<int>::max();

  int lo = 0;
  int hi = kUnbounded;

  bool unbounded() const { return hi == kUnbounded; }

  static Interval make(int lo, int hi) {
    if (lo < 0) throw std::invalid_argument("interval bound must be >= 0");
    if (!(lo <= hi)) throw std::invalid_argument("interval requires lo <= hi");
    return Interval{lo, hi};
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Op {
  True,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Until,       // lhs U[I] rhs
  Always,      // G[I] child
  Eventually,  // F[I] child
  Next,        // X child
};

/// Immutable formula tree with value semantics; copies share structure.
class Formula {
 public:
  Formula() : Formula(boolean_true()) {}

  static Formula boolean_true() { return Formula(Op::True, {}, {}, nullptr, nullptr); }
  static Formula atom(std::string name) {
    return Formula(Op::Atom, std::move(name), {}, nullptr, nullptr);
  }
  static Formula negation(Formula f) {
    return unary(Op::Not, std::move(f));
  }
  static Formula conjunction(Formula l, Formula r) {
    return binary(Op::And, std::move(l), std::move(r));
  }
  static Formula disjunction(Formula l, Formula r) {
    return binary(Op::Or, std::move(l), std::move(r));
  }
  static Formula implication(Formula l, Formula r) {
    return binary(Op::Implies, std::move(l), std::move(r));
  }
  static Formula until(Formula l, Formula r, Interval ivl) {
    return Formula(Op::Until, {}, ivl, std::move(l.node_), std::move(r.node_));
  }
  static Formula always(Formula f, Interval ivl) {
    return Formula(Op::Always, {}, ivl, std::move(f.node_), nullptr);
  }
  static Formula eventually(Formula f, Interval ivl) {
    return Formula(Op::Eventually, {}, ivl, std::move(f.node_), nullptr);
  }
  static Formula next(Formula f) { return unary(Op::Next, std::move(f)); }

  Op op() const { return node_->op; }

  const std::string& atom_name() const {
    require(Op::Atom);
    return node_->name;
  }

  /// Left operand of a binary operator, or the sole operand of a unary one.
  Formula lhs() const {
    if (!node_->l) throw std::logic_error("formula node has no operand");
    return Formula(node_->l);
  }

  Formula rhs() const {
    if (!node_->r) throw std::logic_error("formula node has no right operand");
    return Formula(node_->r);
  }

  const Interval& interval() const {
    if (node_->op != Op::Until && node_->op != Op::Always &&
        node_->op != Op::Eventually) {
      throw std::logic_error("operator carries no interval");
    }
    return node_->ivl;
  }

 private:
  struct Node {
    Op op;
    std::string name;  // Atom only
    Interval ivl;      // Until / Always / Eventually only
    std::shared_ptr<const Node> l, r;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  Formula(Op op, std::string name, Interval ivl, std::shared_ptr<const Node> l,
          std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->name = std::move(name);
    n->ivl = ivl;
    n->l = std::move(l);
    n->r = std::move(r);
    node_ = std::move(n);
  }

  static Formula unary(Op op, Formula f) {
    return Formula(op, {}, {}, std::move(f.node_), nullptr);
  }
  static Formula binary(Op op, Formula l, Formula r) {
    return Formula(op, {}, {}, std::move(l.node_), std::move(r.node_));
  }

  void require(Op op) const {
    if (node_->op != op) throw std::logic_error("unexpected formula operator");
  }

  std::shared_ptr<const Node> node_;
};

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return a.atom_name() == b.atom_name();
    case Op::Not:
    case Op::Next:
      return structurally_equal(a.lhs(), b.lhs());
    case Op::Always:
    case Op::Eventually:
      return a.interval() == b.interval() &&
             structurally_equal(a.lhs(), b.lhs());
    case Op::Until:
      return a.interval() == b.interval() &&
             structurally_equal(a.lhs(), b.lhs()) &&
             structurally_equal(a.rhs(), b.rhs());
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return structurally_equal(a.lhs(), b.lhs()) &&
             structurally_equal(a.rhs(), b.rhs());
  }
  return false;
}

namespace detail {

// Binding strength, tightest first: unary > U > & > | > ->
inline int precedence(Op op) {
  switch (op) {
    case Op::Implies:
      return 0;
    case Op::Or:
      return 1;
    case Op::And:
      return 2;
    case Op::Until:
      return 3;
    default:
      return 4;
  }
}

inline std::string interval_text(const Interval& ivl) {
  std::string s = "[" + std::to_string(ivl.lo) + ",";
  s += ivl.unbounded() ? "inf" : std::to_string(ivl.hi);
  s += "]";
  return s;
}

inline void print(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f.op());
  const bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f.op()) {
    case Op::True:
      out += "T";
      break;
    case Op::Atom:
      out += f.atom_name();
      break;
    case Op::Not:
      out += "!";
      print(f.lhs(), 4, out);
      break;
    case Op::Next:
      out += "X ";
      print(f.lhs(), 4, out);
      break;
    case Op::Always:
      out += "G" + interval_text(f.interval()) + " ";
      print(f.lhs(), 4, out);
      break;
    case Op::Eventually:
      out += "F" + interval_text(f.interval()) + " ";
      print(f.lhs(), 4, out);
      break;
    case Op::Until:  // right-associative
      print(f.lhs(), prec + 1, out);
      out += " U" + interval_text(f.interval()) + " ";
      print(f.rhs(), prec, out);
      break;
    case Op::And:
    case Op::Or:  // left-associative
      print(f.lhs(), prec, out);
      out += f.op() == Op::And ? " & " : " | ";
      print(f.rhs(), prec + 1, out);
      break;
    case Op::Implies:  // right-associative
      print(f.lhs(), prec + 1, out);
      out += " -> ";
      print(f.rhs(), prec, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace detail

/// Renders a formula in the concrete syntax accepted by parse_formula;
/// parsing the result reproduces the original tree.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, 0, out);
  return out;
}

}  // namespace rde::mtl
