#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "danet/estimator.hpp"
#include "danet/graph.hpp"
#include "danet/prior.hpp"
#include "danet/rng.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Particle-marginal Metropolis-Hastings over the free theta components.
/// Proposals are Gaussian random walks on the logit scale; the likelihood of
/// a proposal is estimated once and the incumbent's estimate is never
/// refreshed.
struct ChainConfig {
  std::uint64_t iterations = 5000;  // includes the initial state
  std::uint64_t burn_in = 500;
  std::uint64_t thinning = 5;
  double step_sigma = 0.5;
  EstimatorSpec estimator;
  std::uint64_t seed = 1;
};

struct ChainSample {
  Theta theta;
  double log_like = 0.0;
  bool accepted = false;
};

struct ChainTrace {
  std::vector<ChainSample> samples;  // one per iteration, index 0 is the start
  double acceptance_rate = 0.0;      // accepted moves / proposals
  double seconds = 0.0;
  std::uint64_t estimator_calls = 0;
  std::uint64_t proposals = 0;
  std::uint32_t init_attempts = 0;
};

double logit(double x);
double expit(double x);

/// Random walk on the logit of every free component; fixed components pass
/// through untouched.
Theta logit_rw_propose(const Theta& cur, double sigma, RngStream& rng);

/// log q(cur | prop) - log q(prop | cur) for the logit walk: the Gaussian
/// part cancels, leaving the Jacobian ratio over free components.
double logit_jacobian_log_ratio(const Theta& cur, const Theta& prop);

ChainTrace run_chain(const Graph& g, const PriorSpec& prior, const ChainConfig& config);

/// Iteration indices kept after burn-in and thinning.
std::vector<std::size_t> kept_indices(std::size_t iterations, std::uint64_t burn_in,
                                      std::uint64_t thinning);

/// acf[k] for k = 0..max_lag: lag-k autocovariance averaged over n-k terms,
/// normalized by the lag-0 variance averaged over n terms. Throws
/// invalid_argument on a constant series.
std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag);

/// Particle count heuristic for a graph that takes `steps` backward steps.
std::size_t suggested_particle_count(std::uint32_t steps);

}  // namespace danet
