// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run all criteria by default or one via --only N.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "crp/adversary.hpp"
#include "crp/errors.hpp"
#include "crp/generators.hpp"
#include "crp/oracle.hpp"
#include "crp/pricing.hpp"

using namespace crp;

namespace {

struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (notes.size() < 12) notes.push_back(what);
    }
  }

  void info(const std::string& line) { notes.push_back(line); }
};

Marginal uniform_over(const std::vector<long long>& values) {
  std::vector<ValueProb> support;
  const Rational p(1, static_cast<long long>(values.size()));
  for (long long v : values) support.push_back({Rational(v), p});
  return Marginal::make(std::move(support));
}

// ---------------------------------------------------------------------------
// Shared randomized grid for criteria 1, 2 and 11: n in {2,3} offered items,
// multiset size d in {2,3,4}, values in 1..10, random rational prices with
// occasional deliberate ties.
struct GridCase {
  Instance inst;
  Pricing pricing;
};

std::vector<GridCase> criterion_grid() {
  std::mt19937_64 rng(20200815);
  std::uniform_int_distribution<int> n_items(2, 3), dsize(2, 4), value(1, 10);
  std::uniform_int_distribution<int> num(0, 12), den(1, 4), tie(0, 7);
  std::vector<GridCase> cases;
  cases.reserve(600);
  for (int t = 0; t < 600; ++t) {
    int n = n_items(rng), d = dsize(rng);
    std::vector<Item> items;
    std::vector<std::optional<Rational>> prices;
    for (int i = 0; i < n; ++i) {
      std::vector<long long> vals;
      for (int k = 0; k < d; ++k) vals.push_back(value(rng));
      items.push_back(Item{"i" + std::to_string(i), uniform_over(vals)});
      if (i > 0 && tie(rng) == 0)
        prices.push_back(prices[static_cast<std::size_t>(rng() % i)]);
      else
        prices.emplace_back(Rational(num(rng), den(rng)));
    }
    cases.push_back(GridCase{Instance(std::move(items)), Pricing(std::move(prices))});
  }
  return cases;
}

const std::vector<GridCase>& grid() {
  static const std::vector<GridCase> cases = criterion_grid();
  return cases;
}

// ---------------------------------------------------------------------------
// Criterion 1: best_response revenue equals the brute-force minimum, exactly,
// across the randomized grid and both tie-break rules.
void criterion_1(Check& check) {
  std::size_t runs = 0;
  for (const GridCase& gc : grid()) {
    for (TieBreak rule : {TieBreak::higher_price_first, TieBreak::lower_price_first}) {
      Rational oracle_min = oracle_scan(gc.inst, gc.pricing, rule).min_revenue;
      Rational adversary = best_response_revenue(gc.inst, gc.pricing, rule);
      check.require(adversary == oracle_min,
                    "mismatch " + adversary.str() + " vs oracle " + oracle_min.str());
      ++runs;
    }
  }
  check.info(std::to_string(runs) + " instance/rule pairs, zero tolerance");
}

// Criterion 2: the best response realizes every oracle prefix maximum.
void criterion_2(Check& check) {
  std::size_t prefixes = 0;
  for (const GridCase& gc : grid()) {
    for (TieBreak rule : {TieBreak::higher_price_first, TieBreak::lower_price_first}) {
      OracleScan scan = oracle_scan(gc.inst, gc.pricing, rule);
      BestResponse br = best_response(gc.inst, gc.pricing, rule);
      Rational running;
      for (std::size_t i = 0; i < scan.order.size(); ++i) {
        running += br.sale_prob[scan.order[i]];
        check.require(running == scan.max_prefix[i],
                      "prefix " + std::to_string(i + 1) + ": " + running.str() + " vs " +
                          scan.max_prefix[i].str());
        ++prefixes;
      }
    }
  }
  check.info(std::to_string(prefixes) + " prefixes, exact");
}

// Criterion 3: uniform-vs-nonuniform gap on U[1/4, 1/4+eps] and U[0,1],
// eps = 1/100, 200-cell down-rounded grids.
void criterion_3(Check& check) {
  const Rational eps(1, 100);
  Instance inst({Item{"narrow", discretize_uniform(Rational(1, 4), Rational(1, 4) + eps, 200)},
                 Item{"wide", discretize_uniform(Rational(0), Rational(1), 200)}});

  Pricing nonuniform({Rational(1, 4), Rational(5, 8) - eps});
  BestResponse br = best_response(inst, nonuniform, TieBreak::higher_price_first);
  Rational audit =
      revenue_of_coupling(inst, nonuniform, br.coupling, TieBreak::higher_price_first).revenue;
  check.require(audit == br.revenue, "witness re-evaluation disagrees");
  check.require(br.revenue >= Rational(37, 100),
                "nonuniform pricing yields " + br.revenue.str() + " < 37/100");
  check.info("nonuniform (1/4, 5/8-eps) robust revenue = " + br.revenue.str());

  Rational best_uniform(0);
  const auto candidates = default_candidates(inst)[0];
  for (const Rational& c : candidates) {
    Rational rev = best_response_revenue(inst, Pricing({c, c}), TieBreak::higher_price_first);
    best_uniform = Rational::max(best_uniform, rev);
    check.require(rev <= Rational(27, 100),
                  "uniform price " + c.str() + " yields " + rev.str() + " > 27/100");
  }
  check.info("best uniform over " + std::to_string(candidates.size()) +
             " grid prices = " + best_uniform.str());
}

// Criterion 4: half-threshold pricing on the truncated equal-revenue family
// (n = 4, grid = 64) lands in [4/3 - 0.05, 4].
void criterion_4(Check& check) {
  TruncatedEqRev family = gen_truncated_eqrev(4, 64);
  Pricing p = half_threshold_pricing(family.trunc_points, {0, 1, 2, 3});
  BestResponse br = best_response(family.instance, p, TieBreak::higher_price_first);

  // Oracle expansion is far over budget here; audit the witness instead.
  BestResponse audit =
      revenue_of_coupling(family.instance, p, br.coupling, TieBreak::higher_price_first);
  check.require(audit.revenue == br.revenue, "witness re-evaluation disagrees");

  check.require(br.revenue >= Rational(4, 3) - Rational(1, 20),
                "revenue " + br.revenue.str() + " below 4/3 - 0.05");
  check.require(br.revenue <= Rational(4), "revenue " + br.revenue.str() + " above 4");
  check.info("half-threshold robust revenue = " + br.revenue.str() + " (~" +
             std::to_string(br.revenue.to_double()) + ")");
}

// Criterion 5: with at most k distinct finite prices (k = 1, 2), best-on-grid
// revenue stays below k + 0.05. The grid takes every 2nd support value of
// each item (truncation atoms included) to keep the scan tractable.
void criterion_5(Check& check) {
  TruncatedEqRev family = gen_truncated_eqrev(4, 64);
  std::vector<std::vector<Rational>> candidates;
  for (const Item& item : family.instance.items()) {
    std::vector<Rational> set;
    const auto& support = item.marginal.support();
    for (std::size_t k = 0; k < support.size(); k += 2) set.push_back(support[k].value);
    if (set.back() != support.back().value) set.push_back(support.back().value);
    candidates.push_back(std::move(set));
  }

  for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
    SearchOptions options;
    options.max_distinct = k;
    options.jobs = 2;
    PricingReport report =
        search_maxmin(family.instance, candidates, TieBreak::higher_price_first, options);
    check.require(report.robust_revenue <= Rational(static_cast<long long>(k)) + Rational(1, 20),
                  "k = " + std::to_string(k) + " best " + report.robust_revenue.str() +
                      " above k + 0.05");
    check.info("k = " + std::to_string(k) + ": best-on-grid = " + report.robust_revenue.str() +
               " (~" + std::to_string(report.robust_revenue.to_double()) + ")");
  }
}

// Random MHR families shared by criteria 6 and 7.
std::vector<Instance> mhr_families() {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> n_items(2, 4), coin(0, 1), num(1, 8), den2(1, 2), den4(1, 4);
  std::vector<Instance> families;
  for (int f = 0; f < 20; ++f) {
    int n = n_items(rng);
    std::vector<Item> items;
    for (int i = 0; i < n; ++i) {
      if (coin(rng) == 0) {
        Rational b(num(rng), den2(rng));
        items.push_back(Item{"u" + std::to_string(i), discretize_uniform(Rational(0), b, 200)});
      } else {
        Rational lambda(num(rng), den4(rng));
        items.push_back(
            Item{"e" + std::to_string(i), discretize_exponential(lambda, 200, Rational(99, 100))});
      }
    }
    families.push_back(Instance(std::move(items)));
  }
  return families;
}

// Criterion 6: max-median single pricing extracts at least welfare/3.443 on
// discretized MHR families, up to 2% discretization slack.
void criterion_6(Check& check) {
  const Rational factor(3443, 1000), slack(49, 50);
  double worst = 1e9;
  for (const Instance& inst : mhr_families()) {
    Pricing p = max_median_single_price(inst);
    Rational revenue = best_response_revenue(inst, p, TieBreak::higher_price_first);
    Rational welfare = comonotonic_welfare(inst);
    check.require(revenue * factor >= welfare * slack,
                  "family with welfare " + welfare.str() + " only collects " + revenue.str());
    if (!welfare.is_zero()) worst = std::min(worst, (revenue * factor / welfare).to_double());
  }
  check.info("20 families; min of 3.443 * revenue / welfare = " + std::to_string(worst));
}

// Criterion 7: the MHR quantile bound holds on every discretized family, with
// one cell of slack on the hypothesis side (x is the cell's right endpoint)
// plus a small epsilon for the rounded exponential values.
void criterion_7(Check& check) {
  std::size_t pairs = 0;
  for (const Instance& inst : mhr_families()) {
    for (const Item& item : inst.items()) {
      const auto& support = item.marginal.support();
      std::vector<double> cdf(support.size());
      double cum = 0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        cum += support[k].prob.to_double();
        cdf[k] = cum;
      }
      for (std::size_t a = 0; a + 1 < support.size(); ++a) {
        const double qa = cdf[a];
        const double x = support[a + 1].value.to_double();  // one-cell slack
        for (std::size_t b = a + 1; b < support.size(); ++b) {
          if (cdf[b] >= 1.0 - 1e-12) break;
          double bound = x * std::log(1.0 - cdf[b]) / std::log(1.0 - qa);
          check.require(support[b].value.to_double() <= bound * (1.0 + 1e-12) + 2e-3,
                        item.name + ": quantile " + support[b].value.str() + " above bound");
          ++pairs;
        }
      }
    }
  }
  check.info(std::to_string(pairs) + " grid quantile pairs checked");
}

const std::vector<std::pair<const char*, Graph>>& mis_graphs() {
  static const std::vector<std::pair<const char*, Graph>> graphs = {
      {"empty", Graph::make(4, {})},
      {"path", Graph::make(4, {{1, 2}, {2, 3}, {3, 4}})},
      {"cycle", Graph::make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})},
      {"complete", Graph::make(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})},
  };
  return graphs;
}

// Criterion 8: the independent-set pricing clears the reduction's lower bound
// for every independent set of every n = 4 test graph, exactly.
void criterion_8(Check& check) {
  std::size_t checked = 0;
  for (const auto& [name, g] : mis_graphs()) {
    Instance inst = gen_mis(g);
    for (const auto& S : all_independent_sets(g)) {
      Rational revenue =
          best_response_revenue(inst, is_pricing(g, S), TieBreak::higher_price_first);
      Rational bound = mis_lower_bound(S.size(), 4);
      check.require(revenue >= bound, std::string(name) + ": |S|=" + std::to_string(S.size()) +
                                          " revenue " + revenue.str() + " < " + bound.str());
      ++checked;
    }
  }
  check.info(std::to_string(checked) + " independent sets across 4 graphs");
}

// Criterion 9: no candidate pricing beats the reduction's upper bound, where
// the documented grid is every subset priced "reasonably" plus random
// support-value pricings.
void criterion_9(Check& check) {
  std::mt19937_64 rng(123457);
  std::size_t checked = 0;
  for (const auto& [name, g] : mis_graphs()) {
    Instance inst = gen_mis(g);
    Rational bound = mis_upper_bound(max_independent_set_size(g), 4);

    std::vector<Pricing> pricings;
    for (std::size_t mask = 0; mask < 16; ++mask) {
      std::set<std::size_t> S;
      for (std::size_t i = 1; i <= 4; ++i)
        if (mask & (std::size_t{1} << (i - 1))) S.insert(i);
      pricings.push_back(is_pricing(g, S));
    }
    for (int t = 0; t < 10; ++t) {
      Pricing p = Pricing::none_offered(4);
      for (std::size_t i = 0; i < 4; ++i) {
        if (rng() % 2 == 0) continue;
        const auto& support = inst.item(i).marginal.support();
        p.set(i, support[rng() % support.size()].value);
      }
      pricings.push_back(std::move(p));
    }

    for (const Pricing& p : pricings) {
      Rational revenue = best_response_revenue(inst, p, TieBreak::higher_price_first);
      check.require(revenue <= bound,
                    std::string(name) + ": revenue " + revenue.str() + " > " + bound.str());
      ++checked;
    }
  }
  check.info(std::to_string(checked) + " candidate pricings across 4 graphs");
}

// Criterion 10: identical discretized equal-revenue marginals cap best-on-grid
// search near 1 while the dominated truncated family clears 4/3 - 0.05.
void criterion_10(Check& check) {
  Marginal shared = gen_truncated_eqrev(4, 8).instance.item(3).marginal;
  std::vector<Item> items;
  for (int i = 0; i < 4; ++i) items.push_back(Item{"i" + std::to_string(i), shared});
  Instance identical(std::move(items));

  SearchOptions options;
  options.jobs = 2;
  PricingReport flat = search_maxmin(identical, default_candidates(identical),
                                     TieBreak::higher_price_first, options);
  check.require(flat.robust_revenue <= Rational(21, 20),
                "identical family search found " + flat.robust_revenue.str() + " > 1.05");
  check.info("identical family best-on-grid = " + flat.robust_revenue.str());

  TruncatedEqRev family = gen_truncated_eqrev(4, 64);
  Pricing p = half_threshold_pricing(family.trunc_points, {0, 1, 2, 3});
  Rational dominated = best_response_revenue(family.instance, p, TieBreak::higher_price_first);
  check.require(dominated >= Rational(4, 3) - Rational(1, 20),
                "dominated family only reaches " + dominated.str());
  check.info("dominated truncated family = " + dominated.str());
}

// Criterion 11: single prices are correlation agnostic: identical revenue
// across every enumerated coupling of every grid instance.
void criterion_11(Check& check) {
  std::size_t couplings = 0;
  for (const GridCase& gc : grid()) {
    Pricing p = Pricing::none_offered(gc.inst.size());
    p.set(0, gc.pricing.price(0));

    MultisetInstance mi = expand_to_multiset(gc.inst);
    bool have = false;
    Rational first;
    enumerate_couplings(mi, OracleBudget{}, [&](const Coupling& c) {
      Rational rev = revenue_of_coupling(gc.inst, p, c, TieBreak::higher_price_first).revenue;
      if (!have) {
        first = rev;
        have = true;
      } else if (rev != first) {
        check.require(false, "coupling revenue " + rev.str() + " != " + first.str());
      }
      ++couplings;
    });
  }
  check.info(std::to_string(couplings) + " couplings evaluated, all agnostic");
}

struct Criterion {
  int id;
  const char* label;
  void (*fn)(Check&);
};

const Criterion criteria[] = {
    {1, "oracle equivalence (exact, randomized grid)", criterion_1},
    {2, "prefix realization (exact, randomized grid)", criterion_2},
    {3, "uniform-vs-nonuniform gap (eps = 1/100, m = 200)", criterion_3},
    {4, "half-threshold guarantee (n = 4, grid = 64)", criterion_4},
    {5, "few-prices cap (max distinct = 1, 2)", criterion_5},
    {6, "MHR 3.443 guarantee (20 random families)", criterion_6},
    {7, "MHR quantile bound (one-cell slack)", criterion_7},
    {8, "MIS lower bound (4 graphs, exact)", criterion_8},
    {9, "MIS upper bound (4 graphs, exact)", criterion_9},
    {10, "nonmonotonicity of max-min revenue", criterion_10},
    {11, "correlation agnosticism of single prices", criterion_11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--verbose") == 0)
      verbose = true;
  }

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      c.fn(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream line;
    line.precision(1);
    line << "criterion " << (c.id < 10 ? " " : "") << c.id << " "
         << (check.failures == 0 ? "PASS" : "FAIL") << "  " << c.label << "  [" << std::fixed
         << secs << "s]";
    std::cout << line.str() << std::endl;
    for (const std::string& note : check.notes)
      if (check.failures != 0 || verbose) std::cout << "    " << note << std::endl;
    if (check.failures != 0) ++failed;
  }
  return failed;
}
