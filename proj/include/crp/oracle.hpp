#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "crp/adversary.hpp"
#include "crp/core.hpp"

namespace crp {

/// Uniform-over-multiset view of an instance: every item holds exactly d
/// values (duplicates allowed), sorted nonincreasing. d is the lcm of all
/// probability denominators.
struct MultisetInstance {
  std::size_t d = 0;
  std::vector<std::vector<Rational>> values;  // per item, size d, nonincreasing
};

struct OracleBudget {
  std::size_t max_d = 12;
  std::uint64_t max_couplings = 10'000'000;
};

MultisetInstance expand_to_multiset(const Instance& inst, const OracleBudget& budget = {});

/// Number of perfect couplings the enumeration visits: (d!)^(n-1).
/// BudgetExceeded if above the budget.
std::uint64_t coupling_count(const MultisetInstance& mi, const OracleBudget& budget = {});

/// Visits every perfect coupling exactly once up to chain reordering (item 1's
/// multiset fixed in order, all index permutations for items 2..n).
void enumerate_couplings(const MultisetInstance& mi, const OracleBudget& budget,
                         const std::function<void(const Coupling&)>& visit);

/// Everything the brute-force scan knows about one (instance, pricing, rule):
/// the exact revenue minimum with a witness, and for every prefix of the
/// working order the maximum total sale probability over all couplings.
struct OracleScan {
  Rational min_revenue;
  Coupling witness;                    // over the offered items + fixed completion
  std::vector<std::size_t> order;      // working order (original indices; null = n)
  std::vector<Rational> max_prefix;    // max_prefix[i] = max sale prob of order[0..i]
  std::uint64_t couplings = 0;
};

OracleScan oracle_scan(const Instance& inst, const Pricing& p, TieBreak rule,
                       const OracleBudget& budget = {});

/// Exact minimum of revenue_of_coupling over all enumerated couplings, with a
/// lexicographically-least witness (padded to the full instance).
std::pair<Rational, Coupling> min_revenue_bruteforce(const Instance& inst, const Pricing& p,
                                                     TieBreak rule, const OracleBudget& budget = {});

/// Exact maximum over all couplings of the total sale probability of the
/// first `prefix_len` items of the working order (null item included in the
/// order at its price-0 position).
Rational max_prefix_sale_prob(const Instance& inst, const Pricing& p, TieBreak rule,
                              std::size_t prefix_len, const OracleBudget& budget = {});

}  // namespace crp
