#pragma once

#include <cstddef>
#include <vector>

#include "crp/core.hpp"

namespace crp {

/// One coupled tuple of values (one per instance item) carrying probability
/// mass. A list of chains with matching per-item mass balance is a compatible
/// joint distribution.
struct Chain {
  Rational mass;
  std::vector<Rational> values;
};

struct Coupling {
  std::vector<Chain> chains;
};

/// Outcome of evaluating (or minimizing) revenue under a coupling.
/// sale_prob has one entry per instance item plus a final entry for the null
/// item (no purchase).
struct BestResponse {
  Coupling coupling;
  Rational revenue;
  std::vector<Rational> sale_prob;
};

/// Exact expected revenue of a coupling: per chain the buyer purchases the
/// dominating option among offered items and the null option. Verifies mass
/// balance against every marginal (IncompatibleCoupling otherwise).
BestResponse revenue_of_coupling(const Instance& inst, const Pricing& p, const Coupling& c,
                                 TieBreak rule);

/// The perfect coupling pairing equal quantiles across all items: one chain
/// per cell of the common CDF-breakpoint partition of [0,1].
Coupling comonotonic_coupling(const Instance& inst);

/// Revenue-minimizing compatible distribution for the pricing, together with
/// its exact revenue and sale probabilities. Deterministic; polynomial in the
/// total support size. Items priced "not offered" appear in the returned
/// coupling with an arbitrary compatible completion (they are never bought).
BestResponse best_response(const Instance& inst, const Pricing& p, TieBreak rule);

/// Same minimization without materializing the witness coupling.
Rational best_response_revenue(const Instance& inst, const Pricing& p, TieBreak rule);

/// Multiset-world chain for the sift&lift replay: one utility index per item
/// into the corresponding (nonincreasing) utility vector.
struct MultisetChain {
  std::vector<std::size_t> pick;
};

/// Replays the sift&lift process: removes the chain whose item-2 utility
/// equals root_utility (RootNotFound if absent), then re-forms every
/// subsequent item-1-rooted chain, re-selecting for items >= 3 the highest
/// uncoupled dominated utility and for item 2 the lowest uncoupled one.
std::vector<MultisetChain> sift_lift(const std::vector<std::vector<Rational>>& utilities,
                                     const std::vector<Rational>& prices,
                                     std::vector<MultisetChain> coupling,
                                     const Rational& root_utility, TieBreak rule);

}  // namespace crp
