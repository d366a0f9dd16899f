#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <utility>
#include <vector>

#include "crp/core.hpp"

namespace crp {

/// Simple undirected graph, vertices labeled 1..n, no self-loops.
struct Graph {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // normalized u < v

  static Graph make(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  bool adjacent(std::size_t u, std::size_t v) const;
};

/// Text format: first non-comment line is the vertex count, then one
/// "u v" edge per line, 1-indexed. Lines starting with '#' are ignored.
Graph parse_graph(std::istream& in);

/// Hardness-reduction instance: vertex i gets value 2^(i*n) with probability
/// 2^(-i*n), value 2^(j*n) with probability 2^(-j*n)/sqrt(n) for every
/// neighbor j > i, and the remaining mass at value 0. Requires n to be a
/// perfect square (NotPerfectSquare otherwise).
Instance gen_mis(const Graph& g);

/// (1/2) * (1 - sqrt(n)/2^(n-1)) * s_size.
Rational mis_lower_bound(std::size_t s_size, std::size_t n);

/// (m_size + 2) * sqrt(n) + 3n * 2^(-n).
Rational mis_upper_bound(std::size_t m_size, std::size_t n);

/// Prices vertex i at 2^(i*n - 1) for i in S, not offered otherwise.
Pricing is_pricing(const Graph& g, const std::set<std::size_t>& S);

/// Exhaustive independent-set machinery for desk-scale test graphs.
std::vector<std::set<std::size_t>> all_independent_sets(const Graph& g);
std::size_t max_independent_set_size(const Graph& g);

struct TruncatedEqRev {
  Instance instance;
  std::vector<Rational> trunc_points;  // t_j = 2^(j+1)
};

/// Item j discretizes the equal-revenue distribution (CDF 1 - 1/v on
/// [1, t_j)) onto a geometric grid of `grid` points, each grid value carrying
/// the exact CDF mass of its cell, plus an atom of mass 1/t_j at t_j. Grid
/// points are rationalized through their reciprocals at denominator
/// 2^recip_log2_denom, which keeps every in-support price at revenue exactly 1.
TruncatedEqRev gen_truncated_eqrev(std::size_t n, std::size_t grid, unsigned recip_log2_denom = 20);

/// m cells of equal width over [a, b), represented by their left endpoints,
/// each with mass 1/m (down-rounding).
Marginal discretize_uniform(const Rational& a, const Rational& b, std::size_t m);

/// m equal-mass quantile cells on [0, q_cap], left endpoints -ln(1-q)/lambda
/// rounded down to rationals at the given denominator, plus the residual mass
/// 1 - q_cap as an atom at the q_cap value.
Marginal discretize_exponential(const Rational& lambda, std::size_t m, const Rational& q_cap,
                                long long denominator = 1'000'000);

}  // namespace crp
