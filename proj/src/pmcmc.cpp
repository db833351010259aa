#include "danet/pmcmc.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "danet/errors.hpp"
#include "danet/numeric.hpp"

namespace danet {

double logit(double x) { return std::log(x) - std::log1p(-x); }
double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Theta logit_rw_propose(const Theta& cur, double sigma, RngStream& rng) {
  Theta next = cur;
  for (int i = 0; i < 4; ++i) {
    if (!cur.is_free(i)) continue;
    double x = logit(cur.component(i)) + sigma * rng.normal();
    next.set_component(i, expit(x));
  }
  return next;
}

double logit_jacobian_log_ratio(const Theta& cur, const Theta& prop) {
  double r = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!cur.is_free(i)) continue;
    double c = cur.component(i), p = prop.component(i);
    r += std::log(p * (1.0 - p)) - std::log(c * (1.0 - c));
  }
  return r;
}

ChainTrace run_chain(const Graph& g, const PriorSpec& prior, const ChainConfig& config) {
  prior.validate();
  if (config.iterations == 0) throw std::invalid_argument("chain needs at least 1 iteration");
  if (config.thinning == 0) throw std::invalid_argument("thinning must be positive");
  if (config.burn_in >= config.iterations)
    throw std::invalid_argument("burn-in must leave at least one iteration");
  auto t0 = std::chrono::steady_clock::now();

  ChainTrace trace;
  trace.samples.reserve(config.iterations);

  // Initialize from the prior until the estimated likelihood is positive.
  Theta cur;
  double cur_ll = kNegInf;
  {
    RngStream init_rng = RngStream::derive(config.seed, StreamTag::chain_init);
    constexpr std::uint32_t kMaxAttempts = 100;
    while (trace.init_attempts < kMaxAttempts) {
      Theta cand = prior.sample(init_rng);
      std::uint64_t est_seed =
          RngStream::derive(config.seed, StreamTag::estimator, 0, trace.init_attempts)
              .next_u64();
      ++trace.init_attempts;
      ++trace.estimator_calls;
      double ll = estimate_likelihood(g, cand, config.estimator, est_seed).log_value;
      if (ll > kNegInf) {
        cur = cand;
        cur_ll = ll;
        break;
      }
    }
    if (cur_ll == kNegInf)
      throw InitializationError("no initial parameters with positive estimated likelihood");
  }
  double cur_lp = prior.log_pdf(cur);
  trace.samples.push_back({cur, cur_ll, true});

  std::uint64_t accepted = 0;
  for (std::uint64_t iter = 1; iter < config.iterations; ++iter) {
    RngStream step_rng = RngStream::derive(config.seed, StreamTag::chain_step, iter);
    Theta prop = logit_rw_propose(cur, config.step_sigma, step_rng);
    double prop_lp = prior.log_pdf(prop);
    std::uint64_t est_seed =
        RngStream::derive(config.seed, StreamTag::estimator, iter).next_u64();
    ++trace.estimator_calls;
    ++trace.proposals;
    double prop_ll = estimate_likelihood(g, prop, config.estimator, est_seed).log_value;

    double log_ratio = (prop_ll + prop_lp + logit_jacobian_log_ratio(cur, prop)) -
                       (cur_ll + cur_lp);
    bool take = std::log(step_rng.uniform_pos()) < log_ratio;
    if (take) {
      cur = prop;
      cur_ll = prop_ll;
      cur_lp = prop_lp;
      ++accepted;
    }
    trace.samples.push_back({cur, cur_ll, take});
  }

  trace.acceptance_rate =
      trace.proposals == 0 ? 0.0 : double(accepted) / double(trace.proposals);
  trace.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

std::vector<std::size_t> kept_indices(std::size_t iterations, std::uint64_t burn_in,
                                      std::uint64_t thinning) {
  std::vector<std::size_t> out;
  if (thinning == 0) throw std::invalid_argument("thinning must be positive");
  for (std::size_t i = burn_in; i < iterations; i += thinning) out.push_back(i);
  return out;
}

std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag) {
  std::size_t n = series.size();
  if (n == 0) throw std::invalid_argument("empty series");
  if (max_lag >= n) throw std::invalid_argument("max_lag must be below the series length");
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= double(n);
  double var = 0.0;
  for (double x : series) var += (x - mean) * (x - mean);
  var /= double(n);
  if (var == 0.0) throw std::invalid_argument("constant series has no autocorrelation");

  std::vector<double> acf(max_lag + 1);
  acf[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t i = 0; i + k < n; ++i)
      num += (series[i] - mean) * (series[i + k] - mean);
    num /= double(n - k);
    acf[k] = num / var;
  }
  return acf;
}

std::size_t suggested_particle_count(std::uint32_t steps) {
  return std::size_t(steps) * steps * steps;
}

}  // namespace danet
