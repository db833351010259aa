#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "danet/graph.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Log likelihood per active-set mask for one (graph, theta) evaluation.
/// Reusable across calls with the same inputs; never share across thetas.
struct MemoTable {
  std::unordered_map<std::uint64_t, double> log_like;
};

struct ExactResult {
  double log_likelihood;
  /// Irreducible active sets the recursion terminated in.
  std::set<std::uint64_t> terminal_masks;
  /// Distinct terminal sizes, ascending. More than one entry means removal
  /// order changed where the reduction bottomed out; flagged, not fatal.
  std::vector<std::uint32_t> terminal_sizes;
  bool heterogeneous_terminals;
  std::size_t evaluated_states;
};

/// L(g) = 1 for irreducible g, otherwise
///   L(g) = (1/n_active) * sum over removable v of w(g,v) * L(g minus v),
/// memoized over active-set masks, accumulated in log space.
/// Requires label_count() <= 64 (CapacityError beyond).
ExactResult exact_likelihood(const Graph& g, const Theta& theta, MemoTable* memo = nullptr);

/// Independent oracle: enumerates every valid removal ordering and sums the
/// products of w/(active count) factors directly in linear arithmetic
/// (long double accumulation). No memo, no shared state machinery.
/// Returns the log likelihood. Capped at 9 active vertices (CapacityError).
double brute_force_likelihood(const Graph& g, const Theta& theta);

}  // namespace danet
