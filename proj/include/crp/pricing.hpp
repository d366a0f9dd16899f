#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crp/adversary.hpp"
#include "crp/core.hpp"

namespace crp {

struct MyersonResult {
  Rational price;    // smallest maximizer of v * Pr[value >= v]
  Rational revenue;  // the maximum itself
};

MyersonResult myerson(const Marginal& m);

/// Offers only the item with the largest median (ties: lowest index) at a
/// price equal to that median; everything else is not offered.
Pricing max_median_single_price(const Instance& inst);

/// 1/(1-q) - 1/ln(1-q) for q in (0,1). Reporting only; the one floating-point
/// surface of the library.
double mhr_factor(const Rational& q);

struct PricingReport {
  Pricing pricing;
  Rational robust_revenue;
  Rational comonotonic_revenue;
  Rational myerson_sum_bound;
  BestResponse response;  // witness coupling and sale probabilities
};

PricingReport robust_revenue(const Instance& inst, const Pricing& p, TieBreak rule);

/// Sum of Myerson revenues over the items with finite prices.
Rational myerson_sum_upper_bound(const Instance& inst, const Pricing& p);

/// Expected welfare under the comonotonic coupling: sum over chains of
/// mass * max value.
Rational comonotonic_welfare(const Instance& inst);

/// Prices item j at trunc_points[j] / 2 for j in item_set, not offered
/// otherwise.
Pricing half_threshold_pricing(const std::vector<Rational>& trunc_points,
                               const std::vector<std::size_t>& item_set);

struct SearchOptions {
  std::optional<std::size_t> max_distinct;  // cap on distinct finite prices
  std::uint64_t budget = 1'000'000;         // evaluated pricings
  unsigned jobs = 1;
};

/// Exhaustive robust-revenue maximization over the candidate grid. Each
/// item's candidate set implicitly includes "not offered". Ties go to the
/// lexicographically least pricing (finite prices by value, then not-offered).
/// The result is best-on-grid, not a claimed optimum.
PricingReport search_maxmin(const Instance& inst,
                            const std::vector<std::vector<Rational>>& candidates, TieBreak rule,
                            const SearchOptions& options = {});

/// Default candidate grid: the union of all support values across items, plus
/// any extras, shared by every item.
std::vector<std::vector<Rational>> default_candidates(const Instance& inst,
                                                      const std::vector<Rational>& extras = {});

}  // namespace crp
