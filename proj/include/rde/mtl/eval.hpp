#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "rde/mtl/formula.hpp"
#include "rde/mtl/trace.hpp"

namespace rde::mtl {

constexpr double kRobTop = std::numeric_limits<double>::infinity();
constexpr double kRobBottom = -std::numeric_limits<double>::infinity();

/// Rewrites derived operators into the {T, atom, !, &, |, U} core:
///   F[I] p      =  T U[I] p
///   G[I] p      =  !(T U[I] !p)
///   X p         =  T U[1,1] p
///   p -> q      =  !p | q
inline Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::negation(desugar(f.lhs()));
    case Op::And:
      return Formula::conjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Or:
      return Formula::disjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Implies:
      return Formula::disjunction(Formula::negation(desugar(f.lhs())),
                                  desugar(f.rhs()));
    case Op::Until:
      return Formula::until(desugar(f.lhs()), desugar(f.rhs()),
                            f.interval());
    case Op::Eventually:
      return Formula::until(Formula::boolean_true(), desugar(f.lhs()),
                            f.interval());
    case Op::Always:
      return Formula::negation(Formula::until(
          Formula::boolean_true(), Formula::negation(desugar(f.lhs())),
          f.interval()));
    case Op::Next:
      return Formula::until(Formula::boolean_true(), desugar(f.lhs()),
                            Interval::make(1, 1));
  }
  throw std::logic_error("unhandled operator in desugar");
}

namespace detail {

struct Window {
  std::size_t lo = 1;
  std::size_t hi = 0;  // inclusive; lo > hi encodes an empty window

  bool empty() const { return lo > hi; }
};

// Candidate times t' for an interval anchored at t: t' in [t+lo, t+hi],
// clipped to the trace. The trace is finite, so an unbounded interval just
// runs to the last index.
inline Window window(std::size_t t, const Interval& ivl, std::size_t length) {
  Window w;
  w.lo = t + static_cast<std::size_t>(ivl.lo);
  w.hi = ivl.unbounded()
             ? length - 1
             : std::min(t + static_cast<std::size_t>(ivl.hi), length - 1);
  if (w.lo >= length) w.lo = w.hi + 1;
  return w;
}

inline void check_time(const Trace& trace, std::size_t t) {
  if (t >= trace.length()) {
    throw std::out_of_range("evaluation time exceeds trace length");
  }
}

}  // namespace detail

/// Boolean satisfaction at time t. "p U[I] q" holds iff q holds at some
/// t' in the interval window and p holds strictly between t and t'.
inline bool boolean_sat(const Formula& f, const Trace& trace, std::size_t t) {
  detail::check_time(trace, t);
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return trace.holds(f.atom_name(), t);
    case Op::Not:
      return !boolean_sat(f.lhs(), trace, t);
    case Op::And:
      return boolean_sat(f.lhs(), trace, t) && boolean_sat(f.rhs(), trace, t);
    case Op::Or:
      return boolean_sat(f.lhs(), trace, t) || boolean_sat(f.rhs(), trace, t);
    case Op::Implies:
      return !boolean_sat(f.lhs(), trace, t) || boolean_sat(f.rhs(), trace, t);
    case Op::Next:
      return t + 1 < trace.length() && boolean_sat(f.lhs(), trace, t + 1);
    case Op::Eventually: {
      const auto w = detail::window(t, f.interval(), trace.length());
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        if (boolean_sat(f.lhs(), trace, j)) return true;
      }
      return false;
    }
    case Op::Always: {
      const auto w = detail::window(t, f.interval(), trace.length());
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        if (!boolean_sat(f.lhs(), trace, j)) return false;
      }
      return true;
    }
    case Op::Until: {
      const auto w = detail::window(t, f.interval(), trace.length());
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        if (!boolean_sat(f.rhs(), trace, j)) continue;
        bool held = true;
        for (std::size_t k = t + 1; k < j && held; ++k) {
          held = boolean_sat(f.lhs(), trace, k);
        }
        if (held) return true;
      }
      return false;
    }
  }
  throw std::logic_error("unhandled operator in boolean_sat");
}

/// Quantitative robustness at time t, an extended real. Positive values
/// certify boolean satisfaction and negative values certify violation
/// (a zero carries no verdict). Atoms contribute their signed distance;
/// max realises disjunction, min conjunction, and the empty cases yield
/// -inf (no witness) or +inf (no obligation).
inline double robustness(const Formula& f, const Trace& trace, std::size_t t) {
  detail::check_time(trace, t);
  switch (f.op()) {
    case Op::True:
      return kRobTop;
    case Op::Atom:
      return trace.distance(f.atom_name(), t);
    case Op::Not:
      return -robustness(f.lhs(), trace, t);
    case Op::And:
      return std::min(robustness(f.lhs(), trace, t),
                      robustness(f.rhs(), trace, t));
    case Op::Or:
      return std::max(robustness(f.lhs(), trace, t),
                      robustness(f.rhs(), trace, t));
    case Op::Implies:
      return std::max(-robustness(f.lhs(), trace, t),
                      robustness(f.rhs(), trace, t));
    case Op::Next:
      return t + 1 < trace.length() ? robustness(f.lhs(), trace, t + 1)
                                    : kRobBottom;
    case Op::Eventually: {
      const auto w = detail::window(t, f.interval(), trace.length());
      double best = kRobBottom;
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        best = std::max(best, robustness(f.lhs(), trace, j));
      }
      return best;
    }
    case Op::Always: {
      const auto w = detail::window(t, f.interval(), trace.length());
      double worst = kRobTop;
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        worst = std::min(worst, robustness(f.lhs(), trace, j));
      }
      return worst;
    }
    case Op::Until: {
      const auto w = detail::window(t, f.interval(), trace.length());
      double best = kRobBottom;
      for (std::size_t j = w.lo; j <= w.hi; ++j) {
        double cand = robustness(f.rhs(), trace, j);
        for (std::size_t k = t + 1; k < j; ++k) {
          cand = std::min(cand, robustness(f.lhs(), trace, k));
        }
        best = std::max(best, cand);
      }
      return best;
    }
  }
  throw std::logic_error("unhandled operator in robustness");
}

}  // namespace rde::mtl
