#include "crp/generators.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "crp/errors.hpp"

namespace crp {

namespace {

// Exact integer square root if n is a perfect square, NotPerfectSquare otherwise.
std::size_t perfect_sqrt(std::size_t n) {
  std::size_t r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) fail(errc::not_perfect_square, std::to_string(n) + " is not a perfect square");
  return r;
}

}  // namespace

Graph Graph::make(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  g.n = n;
  for (auto [u, v] : edges) {
    if (u == v) fail(errc::invalid_params, "self-loop at vertex " + std::to_string(u));
    if (u < 1 || v < 1 || u > n || v > n)
      fail(errc::invalid_params, "edge endpoint out of range");
    if (u > v) std::swap(u, v);
    g.edges.insert({u, v});
  }
  return g;
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return edges.count({u, v}) != 0;
}

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    if (!have_n) {
      if (!(row >> n) || n == 0) fail(errc::parse_error, "expected vertex count, got '" + line + "'");
      have_n = true;
      continue;
    }
    std::size_t u = 0, v = 0;
    if (!(row >> u >> v)) fail(errc::parse_error, "expected edge 'u v', got '" + line + "'");
    edges.emplace_back(u, v);
  }
  if (!have_n) fail(errc::parse_error, "empty graph file");
  return Graph::make(n, edges);
}

Instance gen_mis(const Graph& g) {
  const std::size_t n = g.n;
  if (n == 0) fail(errc::invalid_params, "empty graph");
  const std::size_t root = perfect_sqrt(n);
  const Rational inv_sqrt_n(1, static_cast<long long>(root));

  std::vector<Item> items;
  items.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<ValueProb> support;
    Rational used;
    {
      Rational prob = Rational::pow2(-static_cast<long>(i * n));
      support.push_back({Rational::pow2(static_cast<long>(i * n)), prob});
      used += prob;
    }
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!g.adjacent(i, j)) continue;
      Rational prob = Rational::pow2(-static_cast<long>(j * n)) * inv_sqrt_n;
      support.push_back({Rational::pow2(static_cast<long>(j * n)), prob});
      used += prob;
    }
    Rational rest = Rational(1) - used;
    if (rest.is_negative())
      fail(errc::invalid_params, "vertex " + std::to_string(i) + " mass exceeds 1");
    if (!rest.is_zero()) support.push_back({Rational(0), rest});
    items.push_back(Item{"v" + std::to_string(i), Marginal::make(std::move(support))});
  }
  return Instance(std::move(items));
}

Rational mis_lower_bound(std::size_t s_size, std::size_t n) {
  if (n == 0) fail(errc::invalid_params, "n must be positive");
  const std::size_t root = perfect_sqrt(n);
  Rational inner = Rational(1) - Rational(static_cast<long long>(root)) *
                                     Rational::pow2(-static_cast<long>(n - 1));
  return Rational(1, 2) * inner * Rational(static_cast<long long>(s_size));
}

Rational mis_upper_bound(std::size_t m_size, std::size_t n) {
  if (n == 0) fail(errc::invalid_params, "n must be positive");
  const std::size_t root = perfect_sqrt(n);
  return Rational(static_cast<long long>(m_size + 2)) * Rational(static_cast<long long>(root)) +
         Rational(3 * static_cast<long long>(n)) * Rational::pow2(-static_cast<long>(n));
}

Pricing is_pricing(const Graph& g, const std::set<std::size_t>& S) {
  Pricing p = Pricing::none_offered(g.n);
  for (std::size_t i : S) {
    if (i < 1 || i > g.n) fail(errc::invalid_params, "vertex " + std::to_string(i) + " out of range");
    p.set(i - 1, Rational::pow2(static_cast<long>(i * g.n - 1)));
  }
  return p;
}

std::vector<std::set<std::size_t>> all_independent_sets(const Graph& g) {
  if (g.n > 20) fail(errc::budget_exceeded, "exhaustive independent sets capped at 20 vertices");
  std::vector<std::set<std::size_t>> sets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g.n); ++mask) {
    std::set<std::size_t> s;
    for (std::size_t i = 1; i <= g.n; ++i)
      if (mask & (std::size_t{1} << (i - 1))) s.insert(i);
    bool independent = true;
    for (auto it = s.begin(); independent && it != s.end(); ++it)
      for (auto jt = std::next(it); jt != s.end(); ++jt)
        if (g.adjacent(*it, *jt)) {
          independent = false;
          break;
        }
    if (independent) sets.push_back(std::move(s));
  }
  return sets;
}

std::size_t max_independent_set_size(const Graph& g) {
  std::size_t best = 0;
  for (const auto& s : all_independent_sets(g)) best = std::max(best, s.size());
  return best;
}

TruncatedEqRev gen_truncated_eqrev(std::size_t n, std::size_t grid, unsigned recip_log2_denom) {
  if (n == 0 || grid < 2) fail(errc::invalid_params, "need n >= 1 and grid >= 2");

  std::vector<Item> items;
  std::vector<Rational> trunc_points;
  const mpz_class denom = mpz_class(1) << recip_log2_denom;

  for (std::size_t j = 1; j <= n; ++j) {
    const Rational t = Rational::pow2(static_cast<long>(j + 1));
    trunc_points.push_back(t);

    // Grid values v_k approximate t^((k-1)/grid); the reciprocal 1/v_k is the
    // rational c_k / 2^denom_log2, so cell masses 1/v_k - 1/v_{k+1} share one
    // denominator and v_k * Pr[value >= v_k] = 1 exactly.
    std::vector<mpz_class> recips;
    recips.reserve(grid + 1);
    const long double log_t = std::log(static_cast<long double>(t.to_double()));
    for (std::size_t k = 0; k < grid; ++k) {
      long double frac = static_cast<long double>(k) / static_cast<long double>(grid);
      long double recip = std::exp(-frac * log_t);  // t^(-k/grid) in (0, 1]
      mpz_class c(static_cast<double>(std::floor(recip * static_cast<long double>(denom.get_d()))));
      if (c > denom) c = denom;
      // Strictly decreasing reciprocals give strictly increasing values.
      if (!recips.empty() && c >= recips.back()) c = recips.back() - 1;
      if (c <= 0) fail(errc::invalid_params, "grid too fine for the reciprocal denominator");
      recips.push_back(c);
    }
    mpz_class atom_recip = denom / t.numerator();  // 1/t_j, exact since t_j is a power of two
    if (recips.back() <= atom_recip)
      fail(errc::invalid_params, "grid too fine near the truncation point");
    recips.push_back(atom_recip);

    std::vector<ValueProb> support;
    support.reserve(grid + 1);
    for (std::size_t k = 0; k < grid; ++k) {
      Rational value(mpq_class(denom, recips[k]));
      Rational mass(mpq_class(recips[k] - recips[k + 1], denom));
      support.push_back({value, mass});
    }
    support.push_back({t, Rational(1) / t});  // truncation atom

    items.push_back(Item{"eqrev_t" + t.str(), Marginal::make(std::move(support))});
  }
  return TruncatedEqRev{Instance(std::move(items)), std::move(trunc_points)};
}

Marginal discretize_uniform(const Rational& a, const Rational& b, std::size_t m) {
  if (a.is_negative() || b <= a) fail(errc::invalid_range, "need 0 <= a < b");
  if (m < 2) fail(errc::invalid_range, "need at least 2 cells");
  const Rational width = (b - a) / Rational(static_cast<long long>(m));
  const Rational mass(1, static_cast<long long>(m));
  std::vector<ValueProb> support;
  support.reserve(m);
  for (std::size_t k = 0; k < m; ++k)
    support.push_back({a + Rational(static_cast<long long>(k)) * width, mass});
  return Marginal::make(std::move(support));
}

Marginal discretize_exponential(const Rational& lambda, std::size_t m, const Rational& q_cap,
                                long long denominator) {
  if (lambda <= Rational(0)) fail(errc::invalid_params, "lambda must be positive");
  if (q_cap <= Rational(0) || q_cap >= Rational(1)) fail(errc::invalid_params, "q_cap must lie in (0,1)");
  if (m < 1) fail(errc::invalid_params, "need at least one cell");

  const long double rate = static_cast<long double>(lambda.to_double());
  auto value_at = [&](const Rational& q) {
    long double x = -std::log(1.0L - static_cast<long double>(q.to_double())) / rate;
    return Rational::floor_to_denominator(x, denominator);
  };

  const Rational cell = q_cap / Rational(static_cast<long long>(m));
  std::vector<ValueProb> support;
  support.reserve(m + 1);
  for (std::size_t k = 0; k < m; ++k)
    support.push_back({value_at(Rational(static_cast<long long>(k)) * cell), cell});
  support.push_back({value_at(q_cap), Rational(1) - q_cap});
  return Marginal::make(std::move(support));
}

}  // namespace crp
