#include "crp/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "crp/errors.hpp"

namespace crp {

MyersonResult myerson(const Marginal& m) {
  // Tail probabilities scanned from the top keep everything exact.
  const auto& support = m.support();
  std::vector<Rational> tail(support.size());
  Rational cum;
  for (std::size_t k = support.size(); k-- > 0;) {
    cum += support[k].prob;
    tail[k] = cum;
  }
  MyersonResult best{support.front().value, support.front().value * tail.front()};
  for (std::size_t k = 1; k < support.size(); ++k) {
    Rational revenue = support[k].value * tail[k];
    if (revenue > best.revenue) best = MyersonResult{support[k].value, revenue};
  }
  return best;
}

Pricing max_median_single_price(const Instance& inst) {
  const Rational half(1, 2);
  std::size_t best = 0;
  Rational best_median = inst.item(0).marginal.quantile(half);
  for (std::size_t i = 1; i < inst.size(); ++i) {
    Rational median = inst.item(i).marginal.quantile(half);
    if (median > best_median) {
      best = i;
      best_median = median;
    }
  }
  Pricing p = Pricing::none_offered(inst.size());
  p.set(best, best_median);
  return p;
}

double mhr_factor(const Rational& q) {
  if (q <= Rational(0) || q >= Rational(1)) fail(errc::q_out_of_range, "q = " + q.str());
  double x = q.to_double();
  return 1.0 / (1.0 - x) - 1.0 / std::log(1.0 - x);
}

Rational myerson_sum_upper_bound(const Instance& inst, const Pricing& p) {
  validate_pricing(inst, p);
  Rational sum;
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (p.offered(i)) sum += myerson(inst.item(i).marginal).revenue;
  return sum;
}

Rational comonotonic_welfare(const Instance& inst) {
  Rational welfare;
  const Coupling com = comonotonic_coupling(inst);
  for (const Chain& chain : com.chains) {
    Rational top = chain.values.front();
    for (const Rational& v : chain.values) top = Rational::max(top, v);
    welfare += chain.mass * top;
  }
  return welfare;
}

Pricing half_threshold_pricing(const std::vector<Rational>& trunc_points,
                               const std::vector<std::size_t>& item_set) {
  for (const Rational& t : trunc_points)
    if (t <= Rational(0)) fail(errc::invalid_params, "nonpositive truncation point " + t.str());
  Pricing p = Pricing::none_offered(trunc_points.size());
  for (std::size_t j : item_set) {
    if (j >= trunc_points.size())
      fail(errc::invalid_params, "item index " + std::to_string(j) + " out of range");
    p.set(j, trunc_points[j] / Rational(2));
  }
  return p;
}

PricingReport robust_revenue(const Instance& inst, const Pricing& p, TieBreak rule) {
  validate_pricing(inst, p);
  PricingReport report;
  report.pricing = p;
  report.response = best_response(inst, p, rule);
  report.robust_revenue = report.response.revenue;
  report.comonotonic_revenue = revenue_of_coupling(inst, p, comonotonic_coupling(inst), rule).revenue;
  report.myerson_sum_bound = myerson_sum_upper_bound(inst, p);
  return report;
}

std::vector<std::vector<Rational>> default_candidates(const Instance& inst,
                                                      const std::vector<Rational>& extras) {
  std::set<Rational> values;
  for (const Item& item : inst.items())
    for (const auto& vp : item.marginal.support()) values.insert(vp.value);
  for (const Rational& r : extras) values.insert(r);
  std::vector<Rational> shared(values.begin(), values.end());
  return std::vector<std::vector<Rational>>(inst.size(), shared);
}

namespace {

// Lexicographic pricing order used for deterministic tie-breaking: finite
// prices compare by value and precede "not offered".
bool pricing_less(const Pricing& a, const Pricing& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool oa = a.offered(i), ob = b.offered(i);
    if (oa != ob) return oa;
    if (oa && a.price(i) != b.price(i)) return a.price(i) < b.price(i);
  }
  return false;
}

struct SearchBest {
  bool valid = false;
  Rational revenue;
  Pricing pricing;

  void consider(const Rational& revenue_in, const Pricing& pricing_in) {
    if (!valid || revenue_in > revenue ||
        (revenue_in == revenue && pricing_less(pricing_in, pricing))) {
      valid = true;
      revenue = revenue_in;
      pricing = pricing_in;
    }
  }
};

class GridWalker {
 public:
  GridWalker(const Instance& inst, const std::vector<std::vector<Rational>>& candidates,
             std::optional<std::size_t> max_distinct)
      : inst_(inst), candidates_(candidates), max_distinct_(max_distinct) {}

  // Counts assignments, stopping early once `cap` is exceeded.
  std::uint64_t count(std::uint64_t cap) const {
    std::uint64_t counted = 0;
    Pricing scratch = Pricing::none_offered(inst_.size());
    std::vector<Rational> distinct;
    walk(0, scratch, distinct, [&](const Pricing&) { ++counted; return counted <= cap; });
    return counted;
  }

  // Enumerates assignments whose first-item option index lies in [lo, hi).
  // Option 0 is "not offered"; option k >= 1 is candidates[0][k-1].
  template <typename Fn>
  void enumerate_slice(std::size_t lo, std::size_t hi, Fn&& fn) const {
    Pricing scratch = Pricing::none_offered(inst_.size());
    std::vector<Rational> distinct;
    for (std::size_t opt = lo; opt < hi; ++opt) {
      if (opt == 0) {
        scratch.set(0, std::nullopt);
        walk(1, scratch, distinct, fn);
      } else {
        const Rational& price = candidates_[0][opt - 1];
        scratch.set(0, price);
        distinct.push_back(price);
        if (!max_distinct_ || distinct.size() <= *max_distinct_) walk(1, scratch, distinct, fn);
        distinct.pop_back();
      }
    }
  }

  std::size_t first_item_options() const { return candidates_[0].size() + 1; }

 private:
  template <typename Fn>
  bool walk(std::size_t item, Pricing& scratch, std::vector<Rational>& distinct, Fn&& fn) const {
    if (item == inst_.size()) return fn(scratch);
    scratch.set(item, std::nullopt);
    if (!walk(item + 1, scratch, distinct, fn)) return false;
    for (const Rational& price : candidates_[item]) {
      bool fresh = std::find(distinct.begin(), distinct.end(), price) == distinct.end();
      if (fresh) {
        if (max_distinct_ && distinct.size() >= *max_distinct_) continue;
        distinct.push_back(price);
      }
      scratch.set(item, price);
      bool keep_going = walk(item + 1, scratch, distinct, fn);
      if (fresh) distinct.pop_back();
      if (!keep_going) return false;
    }
    scratch.set(item, std::nullopt);
    return true;
  }

  const Instance& inst_;
  const std::vector<std::vector<Rational>>& candidates_;
  std::optional<std::size_t> max_distinct_;
};

}  // namespace

PricingReport search_maxmin(const Instance& inst,
                            const std::vector<std::vector<Rational>>& candidates, TieBreak rule,
                            const SearchOptions& options) {
  if (candidates.size() != inst.size())
    fail(errc::invalid_params, "candidate sets for " + std::to_string(candidates.size()) +
                                   " items, instance has " + std::to_string(inst.size()));

  std::vector<std::vector<Rational>> grid(candidates);
  for (auto& set : grid) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (const Rational& price : set)
      if (price.is_negative()) fail(errc::invalid_params, "negative candidate price " + price.str());
  }

  GridWalker walker(inst, grid, options.max_distinct);
  if (walker.count(options.budget) > options.budget)
    fail(errc::budget_exceeded, "candidate grid exceeds " + std::to_string(options.budget) +
                                    " pricings");

  const std::size_t top = walker.first_item_options();
  unsigned jobs = std::max(1u, options.jobs);
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, top));

  std::vector<SearchBest> results(jobs);
  auto run_slice = [&](unsigned t, std::size_t lo, std::size_t hi) {
    walker.enumerate_slice(lo, hi, [&](const Pricing& p) {
      results[t].consider(best_response_revenue(inst, p, rule), p);
      return true;
    });
  };

  if (jobs == 1) {
    run_slice(0, 0, top);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      std::size_t lo = top * t / jobs, hi = top * (t + 1) / jobs;
      workers.emplace_back(run_slice, t, lo, hi);
    }
    for (auto& w : workers) w.join();
  }

  SearchBest best;
  for (const SearchBest& r : results)
    if (r.valid) best.consider(r.revenue, r.pricing);
  return robust_revenue(inst, best.pricing, rule);
}

}  // namespace crp
