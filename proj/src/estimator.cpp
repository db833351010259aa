#include "danet/estimator.hpp"

#include <chrono>
#include <stdexcept>

#include "danet/dpf.hpp"
#include "danet/exact.hpp"
#include "danet/numeric.hpp"

namespace danet {

EstimatorSpec::Method parse_method(const std::string& name) {
  if (name == "exact") return EstimatorSpec::Method::exact;
  if (name == "importance") return EstimatorSpec::Method::importance;
  if (name == "smc") return EstimatorSpec::Method::smc;
  if (name == "dpf") return EstimatorSpec::Method::dpf;
  if (name == "combo") return EstimatorSpec::Method::combo;
  throw std::invalid_argument("unknown estimator method '" + name + "'");
}

std::string method_name(EstimatorSpec::Method m) {
  switch (m) {
    case EstimatorSpec::Method::exact: return "exact";
    case EstimatorSpec::Method::importance: return "importance";
    case EstimatorSpec::Method::smc: return "smc";
    case EstimatorSpec::Method::dpf: return "dpf";
    case EstimatorSpec::Method::combo: return "combo";
  }
  return "";
}

LikelihoodEstimate estimate_likelihood(const Graph& g, const Theta& theta,
                                       const EstimatorSpec& spec, std::uint64_t seed) {
  switch (spec.method) {
    case EstimatorSpec::Method::exact: {
      auto t0 = std::chrono::steady_clock::now();
      LikelihoodEstimate est;
      est.method = "exact";
      est.log_value = exact_likelihood(g, theta).log_likelihood;
      est.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return est;
    }
    case EstimatorSpec::Method::importance:
      return importance_estimate(g, theta, spec.smc_options(), seed);
    case EstimatorSpec::Method::smc:
      return smc_estimate(g, theta, spec.smc_options(), seed);
    case EstimatorSpec::Method::dpf:
      return dpf_estimate(g, theta, spec.particles, seed);
    case EstimatorSpec::Method::combo: {
      ComboOptions opt;
      opt.smc = spec.smc_options();
      opt.switch_size = spec.switch_size;
      opt.dpf_particles = spec.dpf_particles;
      opt.state_cap = spec.state_cap;
      return combo_estimate(g, theta, opt, seed);
    }
  }
  throw std::logic_error("unreachable estimator method");
}

}  // namespace danet
