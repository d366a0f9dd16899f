#include "crp/core.hpp"

#include <algorithm>
#include <set>

#include "crp/errors.hpp"

namespace crp {

Marginal Marginal::make(std::vector<ValueProb> support) {
  for (const auto& vp : support) {
    if (vp.value.is_negative()) fail(errc::negative_value, "support value " + vp.value.str());
    if (vp.prob.is_negative()) fail(errc::negative_prob, "probability " + vp.prob.str());
  }
  std::sort(support.begin(), support.end(),
            [](const ValueProb& a, const ValueProb& b) { return a.value < b.value; });

  std::vector<ValueProb> merged;
  for (auto& vp : support) {
    if (vp.prob.is_zero()) continue;
    if (!merged.empty() && merged.back().value == vp.value)
      merged.back().prob += vp.prob;
    else
      merged.push_back(std::move(vp));
  }

  Rational total;
  for (const auto& vp : merged) total += vp.prob;
  if (total != Rational(1))
    fail(errc::prob_sum_mismatch, "probabilities sum to " + total.str());
  if (merged.empty()) fail(errc::prob_sum_mismatch, "empty support");

  Marginal m;
  m.support_ = std::move(merged);
  return m;
}

Rational Marginal::cdf(const Rational& x) const {
  Rational cum;
  for (const auto& vp : support_) {
    if (vp.value > x) break;
    cum += vp.prob;
  }
  return cum;
}

Rational Marginal::quantile(const Rational& q) const {
  if (q.is_negative() || q > Rational(1)) fail(errc::q_out_of_range, "q = " + q.str());
  Rational cum;
  for (const auto& vp : support_) {
    cum += vp.prob;
    if (cum >= q) return vp.value;
  }
  return support_.back().value;  // unreachable: cum ends at exactly 1
}

Rational Marginal::expectation() const {
  Rational e;
  for (const auto& vp : support_) e += vp.value * vp.prob;
  return e;
}

Instance::Instance(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) fail(errc::validation_error, "instance needs at least one item");
  std::set<std::string> names;
  for (const auto& it : items_)
    if (!names.insert(it.name).second)
      fail(errc::validation_error, "duplicate item name '" + it.name + "'");
}

std::size_t Pricing::offered_count() const {
  std::size_t k = 0;
  for (const auto& p : prices_)
    if (p.has_value()) ++k;
  return k;
}

void validate_pricing(const Instance& inst, const Pricing& p) {
  if (p.size() != inst.size())
    fail(errc::validation_error, "pricing has " + std::to_string(p.size()) + " entries for " +
                                     std::to_string(inst.size()) + " items");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.offered(i) && p.price(i).is_negative())
      fail(errc::validation_error, "negative price for item '" + inst.item(i).name + "'");
}

bool dominates(const Candidate& a, const Candidate& b, TieBreak rule) {
  if (a.utility != b.utility) return a.utility > b.utility;
  if (a.price != b.price)
    return rule == TieBreak::higher_price_first ? a.price > b.price : a.price < b.price;
  return a.item < b.item;
}

Augmented augment_with_null(const Instance& inst, const Pricing& p) {
  validate_pricing(inst, p);

  std::vector<Item> work_items;
  std::vector<std::optional<Rational>> work_prices;
  std::vector<std::size_t> to_original;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!p.offered(i)) continue;
    work_items.push_back(inst.item(i));
    work_prices.emplace_back(p.price(i));
    to_original.push_back(i);
  }

  std::string null_name = "null";
  auto taken = [&](const std::string& n) {
    return std::any_of(work_items.begin(), work_items.end(),
                       [&](const Item& it) { return it.name == n; });
  };
  while (taken(null_name)) null_name += "_";

  work_items.push_back(Item{null_name, Marginal::make({{Rational(0), Rational(1)}})});
  work_prices.emplace_back(Rational(0));
  to_original.push_back(inst.size());

  std::size_t null_index = work_items.size() - 1;
  return Augmented{Instance(std::move(work_items)), Pricing(std::move(work_prices)),
                   std::move(to_original), null_index};
}

std::vector<std::size_t> working_order(const Instance& inst, const Pricing& p) {
  Augmented aug = augment_with_null(inst, p);
  std::vector<std::size_t> order(aug.to_original);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Rational pa = a == inst.size() ? Rational(0) : p.price(a);
    Rational pb = b == inst.size() ? Rational(0) : p.price(b);
    if (pa != pb) return pa < pb;
    return a > b;  // disfavored (higher index) first among equal prices
  });
  return order;
}

}  // namespace crp
