#include "crp/adversary.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "crp/errors.hpp"

namespace crp {

namespace {

struct Level {
  Rational value;
  Rational utility;
  Rational prob;
};

struct WorkItem {
  std::size_t original;  // inst.size() for the null item
  Rational price;
  std::vector<Level> levels;  // utility strictly decreasing
};

// Chain over working items: one utility level per item, shared mass.
struct AlgChain {
  Rational mass;
  std::vector<std::size_t> lvl;
};

// Water-filling interpretation of the best-response algorithm: probability
// masses are split on demand, chains couple equal-mass nodes.
class Engine {
 public:
  Engine(const Instance& inst, const Pricing& p, TieBreak rule) : rule_(rule) {
    Augmented aug = augment_with_null(inst, p);
    std::vector<std::size_t> positions(aug.work.size());
    for (std::size_t w = 0; w < positions.size(); ++w) positions[w] = w;
    std::stable_sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
      if (aug.work_prices.price(a) != aug.work_prices.price(b))
        return aug.work_prices.price(a) < aug.work_prices.price(b);
      return aug.to_original[a] > aug.to_original[b];  // disfavored first on equal prices
    });

    for (std::size_t w : positions) {
      WorkItem item;
      item.original = aug.to_original[w];
      item.price = aug.work_prices.price(w);
      const auto& support = aug.work.item(w).marginal.support();
      for (auto it = support.rbegin(); it != support.rend(); ++it)
        item.levels.push_back(Level{it->value, it->value - item.price, it->prob});
      items_.push_back(std::move(item));
    }

    remaining_.resize(items_.size());
    uncoupled_.resize(items_.size());
    for (std::size_t w = 0; w < items_.size(); ++w) {
      remaining_[w].reserve(items_[w].levels.size());
      for (std::size_t k = 0; k < items_[w].levels.size(); ++k) {
        remaining_[w].push_back(items_[w].levels[k].prob);
        uncoupled_[w].insert(k);
      }
    }
  }

  void run() {
    const std::size_t n = items_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < items_[i].levels.size(); ++k) build_chains_at(i, k);
      if (i + 1 < n) recouple_transition(i + 1);
    }
    sweep_leftovers();
  }

  const std::vector<WorkItem>& items() const { return items_; }
  const std::vector<AlgChain>& chains() const { return chains_; }

  Candidate candidate(std::size_t w, std::size_t level) const {
    return Candidate{items_[w].original, items_[w].levels[level].utility, items_[w].price};
  }

  std::size_t winner(const AlgChain& chain) const {
    std::size_t best = 0;
    for (std::size_t w = 1; w < items_.size(); ++w)
      if (dominates(candidate(w, chain.lvl[w]), candidate(best, chain.lvl[best]), rule_)) best = w;
    return best;
  }

 private:
  void take(std::size_t w, std::size_t level, const Rational& m) {
    remaining_[w][level] -= m;
    if (remaining_[w][level].is_zero()) uncoupled_[w].erase(level);
  }

  void release(std::size_t w, std::size_t level, const Rational& m) {
    if (remaining_[w][level].is_zero()) uncoupled_[w].insert(level);
    remaining_[w][level] += m;
  }

  // Highest-utility uncoupled level of item j dominated by item i's level k,
  // if any. Dominated levels form a suffix of j's (utility-descending) list.
  bool highest_dominated(std::size_t j, const Candidate& root, std::size_t* out) const {
    const auto& levels = items_[j].levels;
    std::size_t lo = 0, hi = levels.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (dominates(root, Candidate{items_[j].original, levels[mid].utility, items_[j].price}, rule_))
        hi = mid;
      else
        lo = mid + 1;
    }
    auto it = uncoupled_[j].lower_bound(lo);
    if (it == uncoupled_[j].end()) return false;
    *out = *it;
    return true;
  }

  void build_chains_at(std::size_t i, std::size_t k) {
    const std::size_t n = items_.size();
    const Candidate root = candidate(i, k);
    while (!remaining_[i][k].is_zero()) {
      std::vector<std::size_t> pick(n);
      pick[i] = k;
      bool feasible = true;
      for (std::size_t j = i + 1; j < n; ++j)
        if (!highest_dominated(j, root, &pick[j])) {
          feasible = false;
          break;
        }
      if (!feasible) return;
      for (std::size_t j = 0; j < i; ++j) {
        // Lowest-utility uncoupled mass; always present by mass balance.
        pick[j] = *uncoupled_[j].rbegin();
      }
      Rational m = remaining_[i][k];
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) m = Rational::min(m, remaining_[j][pick[j]]);
      for (std::size_t j = 0; j < n; ++j) take(j, pick[j], m);
      chains_.push_back(AlgChain{m, std::move(pick)});
    }
  }

  // Transition stage before iterating item t: re-sort chains by their current
  // item-t utility (ascending) and re-assign item t's lowest uncoupled mass in
  // that order, splitting chains whose mass spans several utility levels.
  void recouple_transition(std::size_t t) {
    if (chains_.empty()) return;
    for (const AlgChain& c : chains_) release(t, c.lvl[t], c.mass);

    std::vector<std::size_t> order(chains_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (chains_[a].lvl[t] != chains_[b].lvl[t])
        return chains_[a].lvl[t] > chains_[b].lvl[t];  // larger index = lower utility
      return a < b;
    });

    std::vector<AlgChain> recoupled;
    recoupled.reserve(chains_.size());
    for (std::size_t ci : order) {
      Rational need = chains_[ci].mass;
      while (!need.is_zero()) {
        std::size_t level = *uncoupled_[t].rbegin();  // lowest uncoupled utility
        Rational piece = Rational::min(need, remaining_[t][level]);
        AlgChain split = chains_[ci];
        split.mass = piece;
        split.lvl[t] = level;
        recoupled.push_back(std::move(split));
        take(t, level, piece);
        need -= piece;
      }
    }
    chains_ = merge_identical(std::move(recoupled));
  }

  // Remaining uncoupled mass after the final item is coupled by a fixed sweep:
  // lowest-utility nodes of every item, water-filled. The main loop already
  // exhausts all mass, so this is a compatibility safeguard.
  void sweep_leftovers() {
    while (!uncoupled_[0].empty()) {
      std::vector<std::size_t> pick(items_.size());
      Rational m;
      for (std::size_t w = 0; w < items_.size(); ++w) {
        pick[w] = *uncoupled_[w].rbegin();
        Rational r = remaining_[w][pick[w]];
        m = (w == 0) ? r : Rational::min(m, r);
      }
      for (std::size_t w = 0; w < items_.size(); ++w) take(w, pick[w], m);
      chains_.push_back(AlgChain{m, std::move(pick)});
    }
  }

  static std::vector<AlgChain> merge_identical(std::vector<AlgChain> chains) {
    std::map<std::vector<std::size_t>, Rational> masses;
    for (AlgChain& c : chains) masses[std::move(c.lvl)] += c.mass;
    std::vector<AlgChain> out;
    out.reserve(masses.size());
    for (auto& [lvl, mass] : masses) out.push_back(AlgChain{mass, lvl});
    return out;
  }

  TieBreak rule_;
  std::vector<WorkItem> items_;
  std::vector<std::vector<Rational>> remaining_;
  std::vector<std::set<std::size_t>> uncoupled_;
  std::vector<AlgChain> chains_;
};

struct Evaluated {
  Rational revenue;
  std::vector<Rational> sale_prob;  // indexed by original item; last entry = null
};

Evaluated evaluate(const Engine& engine, std::size_t original_count) {
  Evaluated ev;
  ev.sale_prob.assign(original_count + 1, Rational(0));
  for (const AlgChain& chain : engine.chains()) {
    std::size_t w = engine.winner(chain);
    ev.revenue += chain.mass * engine.items()[w].price;
    ev.sale_prob[engine.items()[w].original] += chain.mass;
  }
  return ev;
}

// Original-space coupling: offered items take their engine values; items not
// offered are completed compatibly by a fixed value-ascending sweep.
Coupling to_original_coupling(const Engine& engine, const Instance& inst, const Pricing& p) {
  std::map<std::vector<std::size_t>, Rational> merged;
  for (const AlgChain& c : engine.chains()) merged[c.lvl] += c.mass;

  std::vector<Chain> chains;
  chains.reserve(merged.size());
  for (const auto& [lvl, mass] : merged) {
    Chain chain;
    chain.mass = mass;
    chain.values.assign(inst.size(), Rational(0));
    for (std::size_t w = 0; w < engine.items().size(); ++w) {
      std::size_t orig = engine.items()[w].original;
      if (orig < inst.size()) chain.values[orig] = engine.items()[w].levels[lvl[w]].value;
    }
    chains.push_back(std::move(chain));
  }

  for (std::size_t o = 0; o < inst.size(); ++o) {
    if (p.offered(o)) continue;
    const auto& atoms = inst.item(o).marginal.support();
    std::vector<Chain> padded;
    padded.reserve(chains.size());
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
  for (Chain& c : chains) {
    std::vector<Rational> key = std::move(c.values);
    canonical[std::move(key)] += c.mass;
  }
  Coupling out;
  out.chains.reserve(canonical.size());
  for (const auto& [values, mass] : canonical) out.chains.push_back(Chain{mass, values});
  return out;
}

}  // namespace

BestResponse best_response(const Instance& inst, const Pricing& p, TieBreak rule) {
  Engine engine(inst, p, rule);
  engine.run();
  Evaluated ev = evaluate(engine, inst.size());
  BestResponse br;
  br.coupling = to_original_coupling(engine, inst, p);
  br.revenue = std::move(ev.revenue);
  br.sale_prob = std::move(ev.sale_prob);
  return br;
}

Rational best_response_revenue(const Instance& inst, const Pricing& p, TieBreak rule) {
  Engine engine(inst, p, rule);
  engine.run();
  return evaluate(engine, inst.size()).revenue;
}

BestResponse revenue_of_coupling(const Instance& inst, const Pricing& p, const Coupling& c,
                                 TieBreak rule) {
  validate_pricing(inst, p);
  if (c.chains.empty()) fail(errc::incompatible_coupling, "empty coupling");

  Rational total;
  for (const Chain& chain : c.chains) {
    if (chain.values.size() != inst.size())
      fail(errc::incompatible_coupling, "chain arity " + std::to_string(chain.values.size()) +
                                            " for " + std::to_string(inst.size()) + " items");
    if (chain.mass <= Rational(0)) fail(errc::incompatible_coupling, "nonpositive chain mass");
    total += chain.mass;
  }
  if (total != Rational(1)) fail(errc::incompatible_coupling, "chain masses sum to " + total.str());

  for (std::size_t j = 0; j < inst.size(); ++j) {
    std::map<Rational, Rational> observed;
    for (const Chain& chain : c.chains) observed[chain.values[j]] += chain.mass;
    const auto& support = inst.item(j).marginal.support();
    if (observed.size() != support.size())
      fail(errc::incompatible_coupling, "item '" + inst.item(j).name + "' support mismatch");
    for (const auto& vp : support) {
      auto it = observed.find(vp.value);
      if (it == observed.end() || it->second != vp.prob)
        fail(errc::incompatible_coupling, "item '" + inst.item(j).name + "' mass at value " +
                                              vp.value.str() + " violates the marginal");
    }
  }

  BestResponse br;
  br.coupling = c;
  br.sale_prob.assign(inst.size() + 1, Rational(0));
  const Candidate null_option{inst.size(), Rational(0), Rational(0)};
  for (const Chain& chain : c.chains) {
    Candidate best = null_option;
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (!p.offered(j)) continue;
      Candidate cand{j, chain.values[j] - p.price(j), p.price(j)};
      if (dominates(cand, best, rule)) best = cand;
    }
    br.revenue += chain.mass * best.price;
    br.sale_prob[best.item] += chain.mass;
  }
  return br;
}

Coupling comonotonic_coupling(const Instance& inst) {
  std::set<Rational> breakpoints;
  for (const Item& item : inst.items()) {
    Rational cum;
    for (const auto& vp : item.marginal.support()) {
      cum += vp.prob;
      breakpoints.insert(cum);
    }
  }

  Coupling out;
  Rational prev;
  for (const Rational& q : breakpoints) {
    Chain chain;
    chain.mass = q - prev;
    chain.values.reserve(inst.size());
    for (const Item& item : inst.items()) chain.values.push_back(item.marginal.quantile(q));
    out.chains.push_back(std::move(chain));
    prev = q;
  }
  return out;
}

std::vector<MultisetChain> sift_lift(const std::vector<std::vector<Rational>>& utilities,
                                     const std::vector<Rational>& prices,
                                     std::vector<MultisetChain> coupling,
                                     const Rational& root_utility, TieBreak rule) {
  const std::size_t n = utilities.size();
  if (n < 2 || prices.size() != n) fail(errc::invalid_params, "need at least two items");

  auto cand = [&](std::size_t item, std::size_t idx) {
    return Candidate{item, utilities[item][idx], prices[item]};
  };

  auto root_chain = std::find_if(coupling.begin(), coupling.end(), [&](const MultisetChain& c) {
    return utilities[1][c.pick[1]] == root_utility;
  });
  if (root_chain == coupling.end())
    fail(errc::root_not_found, "no chain holds item-2 utility " + root_utility.str());
  const Candidate root = cand(1, root_chain->pick[1]);
  coupling.erase(root_chain);

  std::vector<std::set<std::size_t>> used(n);
  for (const MultisetChain& c : coupling)
    for (std::size_t i = 0; i < n; ++i) used[i].insert(c.pick[i]);

  // Chains rooted at item-1 utilities that follow the removed root in the
  // joint order, lifted in nonincreasing item-1 utility order. A chain is
  // item-1-rooted when its item-1 entry dominates its item-2 entry; item-2
  // rooted chains keep their (low) item-1 augmentations untouched.
  std::vector<std::size_t> lift;
  for (std::size_t ci = 0; ci < coupling.size(); ++ci) {
    const Candidate anchor = cand(0, coupling[ci].pick[0]);
    if (dominates(anchor, cand(1, coupling[ci].pick[1]), rule) &&
        dominates(root, anchor, rule))
      lift.push_back(ci);
  }
  std::sort(lift.begin(), lift.end(), [&](std::size_t a, std::size_t b) {
    return dominates(cand(0, coupling[a].pick[0]), cand(0, coupling[b].pick[0]), rule);
  });

  for (std::size_t ci : lift) {
    MultisetChain& chain = coupling[ci];
    const Candidate anchor = cand(0, chain.pick[0]);
    for (std::size_t i = 1; i < n; ++i) used[i].erase(chain.pick[i]);
    for (std::size_t i = 2; i < n; ++i) {
      bool found = false;
      for (std::size_t idx = 0; idx < utilities[i].size(); ++idx) {
        if (used[i].count(idx)) continue;
        if (!dominates(anchor, cand(i, idx), rule)) continue;
        chain.pick[i] = idx;
        found = true;
        break;
      }
      if (!found)
        fail(errc::invalid_params, "no uncoupled dominated utility for item " + std::to_string(i + 1));
    }
    // Item 2 takes its lowest uncoupled utility.
    std::size_t low = utilities[1].size();
    for (std::size_t idx = utilities[1].size(); idx-- > 0;) {
      if (!used[1].count(idx)) {
        low = idx;
        break;
      }
    }
    if (low == utilities[1].size()) fail(errc::invalid_params, "item 2 has no uncoupled utility");
    chain.pick[1] = low;
    for (std::size_t i = 1; i < n; ++i) used[i].insert(chain.pick[i]);
  }
  return coupling;
}

}  // namespace crp
