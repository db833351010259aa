#pragma once

#include "danet/rng.hpp"
#include "danet/step_cache.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Backward-step proposal over the removable set.
///  uniform_removable:   pick uniformly among removable vertices.
///  optimal_conditional: pick proportionally to the transition weight under
///                       the driving parameter (the one-step-optimal choice).
struct Proposal {
  enum class Kind { uniform_removable, optimal_conditional };
  Kind kind = Kind::optimal_conditional;
};

struct ProposedVertex {
  std::uint32_t vertex = 0;
  std::size_t index = 0;  // position of vertex in state.removable
  double log_prob = 0.0;  // proposal mass of this draw
};

/// Draws one vertex from the cached step state. The caller guarantees the
/// state is reducible.
ProposedVertex propose_vertex(const StepCache::State& state, Proposal::Kind kind,
                              RngStream& rng);

/// Proposal mass the sampler would have assigned to `vertex` at this state.
double proposal_log_prob(const StepCache::State& state, Proposal::Kind kind,
                         std::uint32_t vertex);

}  // namespace danet
