#pragma once

#include <cstdint>

#include "danet/estimate.hpp"
#include "danet/graph.hpp"
#include "danet/smc.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Particle run down to `switch_size` active vertices, then a discrete
/// particle filter on each distinct surviving state.
struct ComboOptions {
  SmcOptions smc;
  std::uint32_t switch_size = 6;
  std::size_t dpf_particles = 1000;
  std::size_t state_cap = 32;  // max distinct states handed to the filter
};

/// When switch_size already covers the whole graph this is a single filter
/// run. Otherwise the pool stops at switch_size; distinct reduced states are
/// finished exactly (or near exactly) by the filter, weighted by their share
/// of the pool mass, after capping their number at state_cap by stratified
/// resampling. Needs <= 64 labels.
LikelihoodEstimate combo_estimate(const Graph& g, const Theta& theta,
                                  const ComboOptions& opt, std::uint64_t seed);

}  // namespace danet
