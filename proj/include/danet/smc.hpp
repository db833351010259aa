#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "danet/estimate.hpp"
#include "danet/graph.hpp"
#include "danet/proposal.hpp"
#include "danet/resample.hpp"
#include "danet/theta.hpp"

namespace danet {

struct SmcOptions {
  std::size_t particles = 1000;
  Proposal::Kind proposal = Proposal::Kind::optimal_conditional;
  std::optional<Theta> driving;  // proposal parameters; absent drives with the target
  ResampleScheme scheme = ResampleScheme::stratified;
  // Resample when ESS < ess_threshold * particles. 0 never resamples (plain
  // importance sampling); >= 1 resamples on every step.
  double ess_threshold = 0.5;
};

/// Optional inputs/outputs for a particle run. Lets callers stop the pool at
/// a given size and inspect or replay it.
struct ParticleCapture {
  // inputs
  std::uint32_t stop_active_count = 0;  // halt once live particles reach this size
  bool keep_finals = false;             // fill `finals` (needs <= 64 labels)
  bool keep_paths = false;              // fill `paths` and `path_log_probs`

  // outputs
  struct Final {
    std::uint64_t mask = 0;     // active mask of the particle's state at exit
    double log_weight = 0.0;    // cumulative since the last resample
    bool absorbed = false;
  };
  std::vector<Final> finals;
  std::vector<std::vector<std::uint32_t>> paths;      // removal order per particle
  std::vector<std::vector<double>> path_log_probs;    // proposal mass per removal
};

/// Particle estimate of the graph's likelihood under theta, with dynamic
/// resampling. The estimate is the product over resample segments of the mean
/// particle weight. Particles whose state becomes irreducible stay in the
/// pool with frozen weight.
LikelihoodEstimate smc_estimate(const Graph& g, const Theta& theta, const SmcOptions& opt,
                                std::uint64_t seed, ParticleCapture* capture = nullptr);

/// Importance sampling: the same particle system with resampling disabled.
/// Bit-identical to smc_estimate with ess_threshold 0.
LikelihoodEstimate importance_estimate(const Graph& g, const Theta& theta,
                                       const SmcOptions& opt, std::uint64_t seed);

/// Evaluates the likelihood on a whole parameter grid from one importance run
/// driven by opt.driving: the sampled paths are reweighted per grid point.
/// The entry whose theta equals the driving parameters reproduces
/// importance_estimate at the same seed exactly. Needs <= 64 labels.
std::vector<double> importance_reweight_curve(const Graph& g, std::span<const Theta> grid,
                                              const SmcOptions& opt, std::uint64_t seed);

}  // namespace danet
