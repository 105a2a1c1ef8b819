#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rde/mtl/formula.hpp"

namespace rde::mtl {

/// Raised on malformed formula text. position() is the byte offset into the
/// input at which the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + what),
        pos_(pos) {}

  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

// Grammar, loosest binding first:
//   implies := or ('->' implies)?
//   or      := and ('|' and)*
//   and     := until ('&' until)*
//   until   := unary ('U' interval until)?
//   unary   := '!' unary | 'X' unary | ('G'|'F') interval unary
//            | 'T' | atom | '(' implies ')'
//   atom    := [a-z][a-z0-9_]*
//   interval:= '[' nat ',' (nat | 'inf') ']'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = implies();
    skip_space();
    if (!at_end()) fail("trailing input after formula");
    return f;
  }

 private:
  Formula implies() {
    Formula l = disjunct();
    skip_space();
    if (consume("->")) return Formula::implication(std::move(l), implies());
    return l;
  }

  Formula disjunct() {
    Formula l = conjunct();
    for (;;) {
      skip_space();
      if (peek() == '|') {
        ++pos_;
        l = Formula::disjunction(std::move(l), conjunct());
      } else {
        return l;
      }
    }
  }

  Formula conjunct() {
    Formula l = until();
    for (;;) {
      skip_space();
      if (peek() == '&') {
        ++pos_;
        l = Formula::conjunction(std::move(l), until());
      } else {
        return l;
      }
    }
  }

  Formula until() {
    Formula l = unary();
    skip_space();
    if (peek() == 'U') {
      ++pos_;
      Interval ivl = interval();
      return Formula::until(std::move(l), until(), ivl);
    }
    return l;
  }

  Formula unary() {
    skip_space();
    const char c = peek();
    switch (c) {
      case '!':
        ++pos_;
        return Formula::negation(unary());
      case 'X':
        ++pos_;
        return Formula::next(unary());
      case 'G': {
        ++pos_;
        Interval ivl = interval();
        return Formula::always(unary(), ivl);
      }
      case 'F': {
        ++pos_;
        Interval ivl = interval();
        return Formula::eventually(unary(), ivl);
      }
      case 'T':
        ++pos_;
        return Formula::boolean_true();
      case '(': {
        ++pos_;
        Formula f = implies();
        skip_space();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return f;
      }
      default:
        if (c >= 'a' && c <= 'z') return Formula::atom(atom_name());
        fail(at_end() ? "unexpected end of input, expected a formula"
                      : std::string("unexpected character '") + c + "'");
    }
  }

  std::string atom_name() {
    const std::size_t start = pos_;
    ++pos_;
    while (!at_end()) {
      const char c = text_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Interval interval() {
    skip_space();
    if (peek() != '[') fail("expected '[' to open an interval");
    ++pos_;
    const int lo = natural("interval lower bound");
    skip_space();
    if (peek() != ',') fail("expected ',' inside interval");
    ++pos_;
    skip_space();
    int hi;
    if (consume("inf")) {
      hi = Interval::kUnbounded;
    } else {
      hi = natural("interval upper bound");
    }
    skip_space();
    if (peek() != ']') fail("expected ']' to close an interval");
    ++pos_;
    if (lo > hi) fail("interval bounds out of order, need lo <= hi", pos_ - 1);
    return Interval::make(lo, hi);
  }

  int natural(const char* what) {
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(std::string("expected ") + what);
    }
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > Interval::kUnbounded) fail("interval bound too large");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t pos) const {
    throw ParseError(what, pos);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the textual formula syntax. Whitespace is insignificant.
/// Atoms match [a-z][a-z0-9_]*; "T" is the true constant. Operator binding,
/// tightest first: ! X G F, U, &, |, ->.
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(text).parse();
}

}  // namespace rde::mtl
