#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "danet/combo.hpp"
#include "danet/estimate.hpp"
#include "danet/graph.hpp"
#include "danet/smc.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Uniform handle on every likelihood estimator, exact included, so chains
/// and experiment runners can swap them by configuration.
struct EstimatorSpec {
  enum class Method { exact, importance, smc, dpf, combo };
  Method method = Method::smc;
  std::size_t particles = 1000;
  Proposal::Kind proposal = Proposal::Kind::optimal_conditional;
  std::optional<Theta> driving;  // absent: drive at the evaluation point
  ResampleScheme scheme = ResampleScheme::stratified;
  double ess_threshold = 0.5;
  std::uint32_t switch_size = 6;    // combo
  std::size_t dpf_particles = 1000;  // combo
  std::size_t state_cap = 32;        // combo

  SmcOptions smc_options() const {
    return {particles, proposal, driving, scheme, ess_threshold};
  }
};

EstimatorSpec::Method parse_method(const std::string& name);
std::string method_name(EstimatorSpec::Method m);

LikelihoodEstimate estimate_likelihood(const Graph& g, const Theta& theta,
                                       const EstimatorSpec& spec, std::uint64_t seed);

}  // namespace danet
