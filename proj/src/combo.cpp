#include "danet/combo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <vector>

#include "danet/dpf.hpp"
#include "danet/errors.hpp"
#include "danet/numeric.hpp"
#include "danet/resample.hpp"
#include "danet/rng.hpp"

namespace danet {

LikelihoodEstimate combo_estimate(const Graph& g, const Theta& theta,
                                  const ComboOptions& opt, std::uint64_t seed) {
  theta.validate();
  if (g.label_count() > 64)
    throw CapacityError("combo estimate needs the graph to fit an active mask");
  auto t0 = std::chrono::steady_clock::now();

  if (opt.switch_size >= g.active_count()) {
    LikelihoodEstimate est = dpf_estimate(g, theta, opt.dpf_particles, seed);
    est.method = "combo";
    return est;
  }

  ParticleCapture cap;
  cap.stop_active_count = opt.switch_size;
  cap.keep_finals = true;
  LikelihoodEstimate est = smc_estimate(g, theta, opt.smc, seed, &cap);
  est.method = "combo";
  if (est.collapsed) return est;

  // Pool mass by distinct state, normalized within the open segment the run
  // stopped in. std::map keeps the state order deterministic.
  std::vector<double> lw(cap.finals.size());
  for (std::size_t i = 0; i < cap.finals.size(); ++i) lw[i] = cap.finals[i].log_weight;
  double pool_lse = log_sum_exp(lw);
  if (pool_lse == kNegInf) {
    est.collapsed = true;
    est.log_value = kNegInf;
    return est;
  }

  double absorbed_share = 0.0;
  std::map<std::uint64_t, double> open_share;
  for (const auto& f : cap.finals) {
    double w = std::exp(f.log_weight - pool_lse);
    if (f.absorbed) {
      absorbed_share += w;
    } else {
      open_share[f.mask] += w;
    }
  }

  // Drop states the pool gives zero mass; cap the rest at state_cap by
  // stratified resampling, replacing shares with (hits / cap) * open mass.
  std::erase_if(open_share, [](const auto& kv) { return kv.second <= 0.0; });
  std::vector<std::pair<std::uint64_t, double>> states(open_share.begin(), open_share.end());
  if (states.size() > opt.state_cap) {
    std::vector<double> state_lw(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) state_lw[i] = std::log(states[i].second);
    double open_mass = 0.0;
    for (const auto& [mask, share] : states) open_mass += share;
    RngStream rng = RngStream::derive(seed, StreamTag::combo_states);
    std::vector<std::uint32_t> picks =
        resample_indices(state_lw, opt.state_cap, opt.smc.scheme, rng);
    std::map<std::uint64_t, std::uint32_t> hits;
    for (std::uint32_t p : picks) hits[states[p].first] += 1;
    states.clear();
    for (const auto& [mask, count] : hits) {
      states.emplace_back(mask, open_mass * double(count) / double(opt.state_cap));
    }
  }

  RunningLse tail;
  if (absorbed_share > 0.0) tail.add(std::log(absorbed_share));
  for (std::size_t s = 0; s < states.size(); ++s) {
    Graph sub = induced_subgraph(g, states[s].first);
    std::uint64_t sub_seed = RngStream::derive(seed, StreamTag::combo_dpf, s).next_u64();
    LikelihoodEstimate part = dpf_estimate(sub, theta, opt.dpf_particles, sub_seed);
    tail.add(std::log(states[s].second) + part.log_value);
  }

  double tail_log = tail.empty() ? kNegInf : tail.value();
  est.log_value += tail_log;
  est.segment_log_increments.push_back(tail_log);
  if (tail_log == kNegInf) {
    est.collapsed = true;
    est.log_value = kNegInf;
  }
  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

}  // namespace danet
