#pragma once

#include <cstdint>
#include <vector>

#include "danet/graph.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Vertices that could have duplicated into v at the last growth step.
/// parents: all active u != v with N(v)\{u} subset of N(u)\{v}.
/// attachment_parents: the subset additionally satisfying N(v) subset {u},
/// i.e. u is also viable under the pure-attachment rule.
struct ParentCandidates {
  std::vector<std::uint32_t> parents;
  std::vector<std::uint32_t> attachment_parents;
};

ParentCandidates candidate_parents(const Graph& g, std::uint32_t v);

bool is_removable(const Graph& g, std::uint32_t v);

/// Ascending labels of removable active vertices.
std::vector<std::uint32_t> removable_set(const Graph& g);

inline bool is_irreducible(const Graph& g) { return removable_set(g).empty(); }

struct TransitionWeight {
  double value;
  double log_value;
};

/// Probability that one backward step from g removes v, i.e. that the last
/// growth step created v:
///
///   sum over candidate parents u of
///     (1/(n_active-1)) * ( pi * p^c (1-p)^d q^e (1-q)^(1-e)
///                        + (1-pi) * [N(v) subset {u}] * r^e (1-r)^(1-e) )
///
/// with c = |N(v)\{u}|, d = |N(u)\{v}| - c, e = [u in N(v)]. Accumulated in
/// log space; a non-removable v yields {0, -inf}, never NaN.
TransitionWeight transition_weight(const Graph& g, std::uint32_t v, const Theta& theta);

/// Same, with precomputed logs; optional second parameter set evaluated in
/// the same pass (log_b untouched when b is null). Returns whether v has at
/// least one candidate parent, i.e. whether v is removable; weights can be
/// -inf even then at boundary parameter values.
bool transition_weight_dual(const Graph& g, std::uint32_t v, const ThetaLog& a,
                            const ThetaLog* b, double& log_a, double& log_b);

struct SimulationResult {
  Graph graph;
  /// True reverse-order history: a valid removal path of graph.
  RemovalPath history;
};

/// Grows seed_graph one vertex at a time until target_size active vertices.
/// Each step: choose a parent uniformly; with probability pi copy each parent
/// link independently with probability p and attach to the parent with
/// probability q; otherwise attach to the parent with probability r only.
/// Deterministic in rng_seed.
SimulationResult simulate_da(const Graph& seed_graph, const Theta& theta,
                             std::uint32_t target_size, std::uint64_t rng_seed);

}  // namespace danet
