#include "crp/oracle.hpp"

#include <algorithm>
#include <map>

#include "crp/errors.hpp"

namespace crp {

namespace {

// (d!)^(items-1), saturated at cap+1.
std::uint64_t saturated_coupling_count(std::size_t d, std::size_t items, std::uint64_t cap) {
  unsigned __int128 fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= i;
  unsigned __int128 total = 1;
  for (std::size_t j = 1; j < items; ++j) {
    total *= fact;
    if (total > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(total);
}

// Iterates all tuples of index permutations for items 2..n in lexicographic
// order. perms[j] indexes into the multiset of item j+1.
void for_each_perm_tuple(std::size_t n_items, std::size_t d,
                         const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
  std::vector<std::vector<std::size_t>> perms(n_items > 0 ? n_items - 1 : 0);
  for (auto& perm : perms) {
    perm.resize(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  }
  while (true) {
    visit(perms);
    std::size_t j = perms.size();
    while (j > 0 && !std::next_permutation(perms[j - 1].begin(), perms[j - 1].end())) --j;
    if (j == 0) return;
  }
}

struct SubProblem {
  std::vector<std::size_t> offered;  // original indices
  Instance sub;
  Pricing sub_prices;
};

SubProblem offered_subproblem(const Instance& inst, const Pricing& p) {
  std::vector<Item> items;
  std::vector<std::optional<Rational>> prices;
  std::vector<std::size_t> offered;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!p.offered(i)) continue;
    items.push_back(inst.item(i));
    prices.emplace_back(p.price(i));
    offered.push_back(i);
  }
  return SubProblem{std::move(offered), Instance(std::move(items)), Pricing(std::move(prices))};
}

// Compatible completion of a coupling over the offered items to the full
// instance: every missing item is swept value-ascending across the chains.
Coupling complete_coupling(const Instance& inst, const std::vector<std::size_t>& offered,
                           const std::vector<Chain>& sub_chains) {
  std::vector<Chain> chains;
  chains.reserve(sub_chains.size());
  for (const Chain& sc : sub_chains) {
    Chain c;
    c.mass = sc.mass;
    c.values.assign(inst.size(), Rational(0));
    for (std::size_t k = 0; k < offered.size(); ++k) c.values[offered[k]] = sc.values[k];
    chains.push_back(std::move(c));
  }

  std::vector<bool> is_offered(inst.size(), false);
  for (std::size_t o : offered) is_offered[o] = true;
  for (std::size_t o = 0; o < inst.size(); ++o) {
    if (is_offered[o]) continue;
    const auto& atoms = inst.item(o).marginal.support();
    std::vector<Chain> padded;
    std::size_t cursor = 0;
    Rational avail = atoms.front().prob;
    for (const Chain& c : chains) {
      Rational need = c.mass;
      while (!need.is_zero()) {
        Rational piece = Rational::min(need, avail);
        Chain split = c;
        split.mass = piece;
        split.values[o] = atoms[cursor].value;
        padded.push_back(std::move(split));
        need -= piece;
        avail -= piece;
        if (avail.is_zero() && cursor + 1 < atoms.size()) avail = atoms[++cursor].prob;
      }
    }
    chains = std::move(padded);
  }

  std::map<std::vector<Rational>, Rational> canonical;
  for (Chain& c : chains) canonical[std::move(c.values)] += c.mass;
  Coupling out;
  out.chains.reserve(canonical.size());
  for (const auto& [values, mass] : canonical) out.chains.push_back(Chain{mass, values});
  return out;
}

}  // namespace

MultisetInstance expand_to_multiset(const Instance& inst, const OracleBudget& budget) {
  mpz_class d(1);
  for (const Item& item : inst.items())
    for (const auto& vp : item.marginal.support())
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), vp.prob.denominator().get_mpz_t());

  if (!d.fits_ulong_p() || d.get_ui() > budget.max_d)
    fail(errc::d_too_large, "common denominator " + d.get_str() + " exceeds cap " +
                                std::to_string(budget.max_d));

  MultisetInstance mi;
  mi.d = d.get_ui();
  for (const Item& item : inst.items()) {
    std::vector<Rational> vals;
    vals.reserve(mi.d);
    for (const auto& vp : item.marginal.support()) {
      Rational copies = vp.prob * Rational(mpq_class(d));
      long long reps = copies.as_int64();
      for (long long r = 0; r < reps; ++r) vals.push_back(vp.value);
    }
    std::sort(vals.begin(), vals.end(), [](const Rational& a, const Rational& b) { return b < a; });
    mi.values.push_back(std::move(vals));
  }
  return mi;
}

std::uint64_t coupling_count(const MultisetInstance& mi, const OracleBudget& budget) {
  std::uint64_t count = saturated_coupling_count(mi.d, mi.values.size(), budget.max_couplings);
  if (count > budget.max_couplings)
    fail(errc::budget_exceeded, "more than " + std::to_string(budget.max_couplings) + " couplings");
  return count;
}

void enumerate_couplings(const MultisetInstance& mi, const OracleBudget& budget,
                         const std::function<void(const Coupling&)>& visit) {
  coupling_count(mi, budget);
  const std::size_t n = mi.values.size();
  const Rational mass(1, static_cast<long long>(mi.d));
  for_each_perm_tuple(n, mi.d, [&](const std::vector<std::vector<std::size_t>>& perms) {
    Coupling c;
    c.chains.reserve(mi.d);
    for (std::size_t k = 0; k < mi.d; ++k) {
      Chain chain;
      chain.mass = mass;
      chain.values.reserve(n);
      chain.values.push_back(mi.values[0][k]);
      for (std::size_t j = 1; j < n; ++j) chain.values.push_back(mi.values[j][perms[j - 1][k]]);
      c.chains.push_back(std::move(chain));
    }
    visit(c);
  });
}

OracleScan oracle_scan(const Instance& inst, const Pricing& p, TieBreak rule,
                       const OracleBudget& budget) {
  validate_pricing(inst, p);
  OracleScan scan;
  scan.order = working_order(inst, p);

  if (p.offered_count() == 0) {
    scan.min_revenue = Rational(0);
    scan.witness = comonotonic_coupling(inst);
    scan.max_prefix.assign(1, Rational(1));
    scan.couplings = 1;
    return scan;
  }

  SubProblem sub = offered_subproblem(inst, p);

  MultisetInstance mi = expand_to_multiset(sub.sub, budget);
  scan.couplings = coupling_count(mi, budget);

  const std::size_t n = sub.offered.size();
  const std::size_t d = mi.d;

  // Precomputed utilities per item and multiset slot; purchase decisions then
  // run without copying any rationals.
  std::vector<std::vector<Rational>> utility(n);
  for (std::size_t j = 0; j < n; ++j) {
    utility[j].reserve(d);
    for (const Rational& v : mi.values[j]) utility[j].push_back(v - sub.sub_prices.price(j));
  }
  const Rational zero(0);

  // position[orig] = index in the working order; null sits at position_null.
  std::vector<std::size_t> position(inst.size() + 1, 0);
  for (std::size_t pos = 0; pos < scan.order.size(); ++pos) position[scan.order[pos]] = pos;

  // a beats b at equal utility under the tie-break rule?
  auto prefers = [&](std::size_t orig_a, const Rational& price_a, std::size_t orig_b,
                     const Rational& price_b) {
    if (price_a != price_b)
      return rule == TieBreak::higher_price_first ? price_a > price_b : price_a < price_b;
    return orig_a < orig_b;
  };

  const std::size_t n_positions = scan.order.size();
  std::vector<long long> best_prefix(n_positions, -1);
  std::vector<long long> prefix(n_positions, 0);
  bool have_min = false;
  std::vector<std::vector<std::size_t>> witness_perms;

  for_each_perm_tuple(n, d, [&](const std::vector<std::vector<std::size_t>>& perms) {
    std::fill(prefix.begin(), prefix.end(), 0);
    std::vector<long long> wins(n + 1, 0);  // last slot: null
    for (std::size_t k = 0; k < d; ++k) {
      // Winner among offered items and the null option.
      std::size_t best_item = n;  // null
      const Rational* best_u = &zero;
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t slot = j == 0 ? k : perms[j - 1][k];
        const Rational& u = utility[j][slot];
        bool better;
        if (u != *best_u)
          better = u > *best_u;
        else if (best_item == n)
          better = prefers(sub.offered[j], sub.sub_prices.price(j), inst.size(), zero);
        else
          better = prefers(sub.offered[j], sub.sub_prices.price(j), sub.offered[best_item],
                           sub.sub_prices.price(best_item));
        if (better) {
          best_item = j;
          best_u = &u;
        }
      }
      ++wins[best_item];
      std::size_t pos = position[best_item == n ? inst.size() : sub.offered[best_item]];
      ++prefix[pos];
    }

    Rational revenue;
    for (std::size_t j = 0; j < n; ++j)
      if (wins[j] != 0)
        revenue += Rational(wins[j], static_cast<long long>(d)) * sub.sub_prices.price(j);

    if (!have_min || revenue < scan.min_revenue) {
      scan.min_revenue = revenue;
      witness_perms = perms;
      have_min = true;
    }

    long long running = 0;
    for (std::size_t pos = 0; pos < n_positions; ++pos) {
      running += prefix[pos];
      if (running > best_prefix[pos]) best_prefix[pos] = running;
    }
  });

  scan.max_prefix.reserve(n_positions);
  for (std::size_t pos = 0; pos < n_positions; ++pos)
    scan.max_prefix.push_back(Rational(best_prefix[pos], static_cast<long long>(d)));

  std::vector<Chain> sub_chains;
  sub_chains.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    Chain chain;
    chain.mass = Rational(1, static_cast<long long>(d));
    chain.values.push_back(mi.values[0][k]);
    for (std::size_t j = 1; j < n; ++j) chain.values.push_back(mi.values[j][witness_perms[j - 1][k]]);
    sub_chains.push_back(std::move(chain));
  }
  scan.witness = complete_coupling(inst, sub.offered, sub_chains);
  return scan;
}

std::pair<Rational, Coupling> min_revenue_bruteforce(const Instance& inst, const Pricing& p,
                                                     TieBreak rule, const OracleBudget& budget) {
  OracleScan scan = oracle_scan(inst, p, rule, budget);
  return {scan.min_revenue, scan.witness};
}

Rational max_prefix_sale_prob(const Instance& inst, const Pricing& p, TieBreak rule,
                              std::size_t prefix_len, const OracleBudget& budget) {
  OracleScan scan = oracle_scan(inst, p, rule, budget);
  if (prefix_len == 0) return Rational(0);
  if (prefix_len > scan.max_prefix.size())
    fail(errc::invalid_params, "prefix length " + std::to_string(prefix_len) + " exceeds " +
                                   std::to_string(scan.max_prefix.size()) + " working items");
  return scan.max_prefix[prefix_len - 1];
}

}  // namespace crp
