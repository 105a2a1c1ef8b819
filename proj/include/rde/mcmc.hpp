#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rde/cell.hpp"
#include "rde/rng.hpp"

namespace rde {

/// Knobs for a single Metropolis step over candidate cells.
struct McmcOptions {
  double tau = 0.1;           // temperature scaling on the score difference
  bool literal_sigma = false; // flip the exponent's sign (see below)
};

/// One Metropolis-Hastings step: draw a uniformly random candidate from
/// `candidates`, accept it outright when its score improves, otherwise
/// accept with probability sigma = exp(tau * (f(candidate) - f(current))),
/// which decays as the candidate scores worse. Returns the accepted
/// candidate or `current` on rejection.
///
/// literal_sigma = true negates the exponent, yielding an acceptance rule
/// that instead favours downhill moves; it is kept selectable for
/// comparison runs and is off everywhere by default.
///
/// Exactly one uniform draw is consumed for the candidate index and one
/// for the acceptance test, so a fixed seed fixes the whole chain.
template <typename ScoreFn>
Cell mcmc_step(Cell current, ScoreFn&& f, const std::vector<Cell>& candidates,
               const McmcOptions& opts, RngHandle& rng) {
  if (candidates.empty()) {
    throw std::invalid_argument("mcmc_step requires at least one candidate");
  }
  const Cell proposal = candidates[rng.bounded(candidates.size())];
  const double f_new = f(proposal);
  const double f_cur = f(current);

  // Equal scores (including matching infinities) count as no difference.
  const double delta = f_new == f_cur ? 0.0 : f_new - f_cur;
  const double sigma =
      opts.literal_sigma ? std::exp(-(opts.tau * delta)) : std::exp(opts.tau * delta);

  const double r = rng.uniform_real();
  if (sigma > 0.0 && r <= sigma) return proposal;
  return current;
}

}  // namespace rde
