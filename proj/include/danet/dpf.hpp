#pragma once

#include <cstdint>
#include <span>

#include "danet/estimate.hpp"
#include "danet/graph.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Keep/resample threshold for trimming a discrete pool to `capacity` slots.
/// Returns C such that entries with weight above 1/C are kept outright and
/// the remainder is thinned by systematic residual sampling at weight 1/C,
/// filling exactly `capacity` slots in expectation. Weights must be positive
/// and finite but need not sum to one; C comes back in the same scale.
/// Throws logic_error when the pool already fits (size <= capacity) and
/// invalid_argument on unusable weights or a zero capacity.
double dpf_threshold_solve(std::span<const double> weights, std::size_t capacity);

/// Discrete particle filter estimate of the graph's likelihood. The pool
/// enumerates removal paths exactly until it exceeds `particles` entries,
/// then trims with dpf_threshold_solve. If the pool never overflows the
/// result equals the exact likelihood.
LikelihoodEstimate dpf_estimate(const Graph& g, const Theta& theta, std::size_t particles,
                                std::uint64_t seed);

/// Upper bound on the pool size dpf_estimate can reach: per-level removal
/// path counts plus accumulated terminal paths, maximized over levels,
/// ignoring any parameter-dependent pruning. Counting stops early once the
/// bound exceeds `cap`; anything above comes back as cap + 1. Needs <= 64
/// labels.
std::uint64_t dpf_support_census(const Graph& g, std::uint64_t cap);

}  // namespace danet
