#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crp/rational.hpp"

namespace crp {

struct ValueProb {
  Rational value;
  Rational prob;
};

/// Finite discrete value distribution of one item. Support values are kept
/// strictly increasing, probabilities are positive and sum to exactly 1.
class Marginal {
 public:
  /// Normalizes (merges duplicate values, drops zero-mass entries) and
  /// validates. Throws NegativeValue, NegativeProb or ProbSumMismatch.
  static Marginal make(std::vector<ValueProb> support);

  const std::vector<ValueProb>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  const Rational& min_value() const { return support_.front().value; }
  const Rational& max_value() const { return support_.back().value; }

  /// Pr[value <= x].
  Rational cdf(const Rational& x) const;

  /// min { v in support : CDF(v) >= q }, for q in [0, 1]. Throws QOutOfRange.
  Rational quantile(const Rational& q) const;

  Rational expectation() const;

 private:
  Marginal() = default;
  std::vector<ValueProb> support_;
};

struct Item {
  std::string name;
  Marginal marginal;
};

class Instance {
 public:
  /// Requires at least one item and unique names (ValidationError otherwise).
  explicit Instance(std::vector<Item> items);

  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const Item& item(std::size_t i) const { return items_[i]; }

 private:
  std::vector<Item> items_;
};

/// Per-item price; an empty optional means the item is not offered (price
/// "infinity"), which removes it from the working instance.
class Pricing {
 public:
  Pricing() = default;
  explicit Pricing(std::vector<std::optional<Rational>> prices) : prices_(std::move(prices)) {}

  static Pricing none_offered(std::size_t n) { return Pricing(std::vector<std::optional<Rational>>(n)); }

  std::size_t size() const { return prices_.size(); }
  bool offered(std::size_t i) const { return prices_[i].has_value(); }
  const Rational& price(std::size_t i) const { return *prices_[i]; }
  const std::optional<Rational>& entry(std::size_t i) const { return prices_[i]; }
  void set(std::size_t i, std::optional<Rational> p) { prices_[i] = std::move(p); }

  std::size_t offered_count() const;

  friend bool operator==(const Pricing& a, const Pricing& b) { return a.prices_ == b.prices_; }

 private:
  std::vector<std::optional<Rational>> prices_;
};

/// Requires all prices nonnegative and length matching the instance.
void validate_pricing(const Instance& inst, const Pricing& p);

enum class TieBreak { higher_price_first, lower_price_first };

/// One purchase option inside a value profile. `item` is the original item
/// index; the null option (no purchase) uses index = instance size.
struct Candidate {
  std::size_t item;
  Rational utility;
  Rational price;
};

/// Strict total order deciding the purchase: higher utility wins; on equal
/// utility the rule prefers the higher (resp. lower) priced item, and on equal
/// price the lower index.
bool dominates(const Candidate& a, const Candidate& b, TieBreak rule);

/// Working copy used by the adversary: offered items in original order plus an
/// appended null item (single value 0 with probability 1, price 0).
struct Augmented {
  Instance work;
  Pricing work_prices;
  std::vector<std::size_t> to_original;  // per working item; null maps to original instance size
  std::size_t null_item;                 // working index of the null item
};

Augmented augment_with_null(const Instance& inst, const Pricing& p);

/// The adversary's processing order over the working items: price ascending,
/// and among equal prices the tie-break-disfavored item (higher index) first.
/// Returns original item indices; the null item appears as `inst.size()`.
std::vector<std::size_t> working_order(const Instance& inst, const Pricing& p);

}  // namespace crp
