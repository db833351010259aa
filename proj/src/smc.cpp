#include "danet/smc.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "danet/errors.hpp"
#include "danet/numeric.hpp"
#include "danet/step_cache.hpp"

namespace danet {
namespace {

struct Particle {
  Graph state;
  double log_weight = 0.0;  // since the current segment started
  bool absorbed = false;
  std::uint32_t path_id = 0;
  std::vector<std::uint32_t> path;
  std::vector<double> path_log_probs;
};

std::uint32_t distinct_paths(const std::vector<Particle>& pool,
                             std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  for (const Particle& p : pool) scratch.push_back(p.path_id);
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
  return std::uint32_t(scratch.size());
}

}  // namespace

LikelihoodEstimate smc_estimate(const Graph& g, const Theta& theta, const SmcOptions& opt,
                                std::uint64_t seed, ParticleCapture* capture) {
  theta.validate();
  if (opt.particles == 0) throw std::invalid_argument("particle count must be positive");
  auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = opt.particles;
  const bool want_driving = opt.proposal == Proposal::Kind::optimal_conditional;
  std::optional<Theta> driving;
  if (want_driving) driving = opt.driving.value_or(theta);
  StepCache cache(g, theta, driving);

  LikelihoodEstimate est;
  est.method = "smc";

  std::vector<Particle> pool(n);
  {
    bool start_absorbed = cache.lookup(g).irreducible();
    for (Particle& p : pool) {
      p.state = g;
      p.absorbed = start_absorbed;
      if (capture && capture->keep_paths) p.path.reserve(g.active_count());
    }
  }

  // Removal paths get integer ids from a shared trie keyed by
  // (parent id, removed vertex); ids count distinct sampled paths.
  std::unordered_map<std::uint64_t, std::uint32_t> trie;
  std::uint32_t next_path_id = 1;
  std::vector<std::uint32_t> id_scratch;

  const std::uint32_t initial_active = g.active_count();
  std::uint32_t completed = 0;  // backward steps taken by live particles
  double closed_log = 0.0;      // sum over closed segments
  double seg_mass = 0.0;        // current segment's running log mean weight
  std::uint32_t seg_steps = 0;
  std::vector<double> lw(n);

  auto close_segment = [&]() {
    closed_log += seg_mass;
    if (seg_steps > 0) est.segment_log_increments.push_back(seg_mass);
  };

  for (;;) {
    bool any_live = std::any_of(pool.begin(), pool.end(),
                                [](const Particle& p) { return !p.absorbed; });
    if (!any_live) break;
    if (capture && capture->stop_active_count > 0 &&
        initial_active - completed <= capture->stop_active_count)
      break;

    std::uint32_t step = ++completed;
    std::uint32_t active_now = initial_active - (step - 1);
    for (std::size_t i = 0; i < n; ++i) {
      Particle& p = pool[i];
      if (p.absorbed) continue;
      const StepCache::State& st = cache.lookup(p.state);
      RngStream rng = RngStream::derive(seed, StreamTag::propagate, step, i);
      ProposedVertex pv = propose_vertex(st, opt.proposal, rng);
      p.log_weight += st.log_w_target[pv.index] - std::log(double(active_now)) - pv.log_prob;
      p.state.remove_vertex(pv.vertex);
      auto [it, fresh] = trie.try_emplace((std::uint64_t(p.path_id) << 32) | pv.vertex,
                                          next_path_id);
      if (fresh) ++next_path_id;
      p.path_id = it->second;
      if (capture && capture->keep_paths) {
        p.path.push_back(pv.vertex);
        p.path_log_probs.push_back(pv.log_prob);
      }
      // Absorption is structural only. Zero-weight particles keep stepping:
      // cutting them short would truncate the sampled path measure that
      // importance_reweight_curve replays under other parameters.
      if (cache.lookup(p.state).irreducible()) p.absorbed = true;
    }

    for (std::size_t i = 0; i < n; ++i) lw[i] = pool[i].log_weight;
    double seg_lse = log_sum_exp(lw);

    StepDiag diag;
    diag.step = step;
    diag.unique = distinct_paths(pool, id_scratch);

    if (seg_lse == kNegInf) {
      diag.ess = 0.0;
      diag.log_increment = kNegInf;
      est.trace.push_back(diag);
      seg_mass = kNegInf;
      ++seg_steps;
      est.collapsed = true;
      break;
    }

    diag.ess = effective_sample_size(lw);
    double mass = seg_lse - std::log(double(n));
    diag.log_increment = mass - seg_mass;
    seg_mass = mass;
    ++seg_steps;

    bool any_open = std::any_of(pool.begin(), pool.end(),
                                [](const Particle& p) { return !p.absorbed; });
    bool fire = opt.ess_threshold > 0.0 && any_open &&
                (opt.ess_threshold >= 1.0 || diag.ess < opt.ess_threshold * double(n));
    if (fire) {
      RngStream rng = RngStream::derive(seed, StreamTag::resample, step);
      std::vector<std::uint32_t> anc = resample_indices(lw, n, opt.scheme, rng);
      std::vector<Particle> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = pool[anc[i]];
        next[i].log_weight = 0.0;
      }
      pool = std::move(next);
      est.resample_times.push_back(step);
      close_segment();
      seg_mass = 0.0;
      seg_steps = 0;
      diag.resampled = true;
    }
    est.trace.push_back(diag);
  }

  close_segment();
  est.log_value = est.collapsed ? kNegInf : closed_log;

  if (capture && capture->keep_finals) {
    capture->finals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      capture->finals[i] = {pool[i].state.active_mask(), pool[i].log_weight,
                            pool[i].absorbed};
    }
  }
  if (capture && capture->keep_paths) {
    capture->paths.resize(n);
    capture->path_log_probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      capture->paths[i] = std::move(pool[i].path);
      capture->path_log_probs[i] = std::move(pool[i].path_log_probs);
    }
  }

  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

LikelihoodEstimate importance_estimate(const Graph& g, const Theta& theta,
                                       const SmcOptions& opt, std::uint64_t seed) {
  SmcOptions is = opt;
  is.ess_threshold = 0.0;
  LikelihoodEstimate est = smc_estimate(g, theta, is, seed);
  est.method = "importance";
  return est;
}

std::vector<double> importance_reweight_curve(const Graph& g, std::span<const Theta> grid,
                                              const SmcOptions& opt, std::uint64_t seed) {
  if (!opt.driving)
    throw std::invalid_argument("reweight curve needs explicit driving parameters");
  if (g.label_count() > 64)
    throw CapacityError("reweight curve needs the graph to fit an active mask");

  SmcOptions is = opt;
  is.ess_threshold = 0.0;
  ParticleCapture cap;
  cap.keep_paths = true;
  LikelihoodEstimate base = smc_estimate(g, *opt.driving, is, seed, &cap);
  if (base.collapsed) {
    // Every sampled path died under the driving parameters, so the captured
    // paths are truncated and replaying them anywhere would be biased.
    return std::vector<double>(grid.size(), kNegInf);
  }

  const std::size_t n = opt.particles;
  std::vector<double> out;
  out.reserve(grid.size());
  std::vector<double> lw(n);
  for (const Theta& theta : grid) {
    theta.validate();
    StepCache cache(g, theta, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      std::uint64_t mask = g.active_mask();
      const auto& path = cap.paths[i];
      const auto& lps = cap.path_log_probs[i];
      for (std::size_t k = 0; k < path.size(); ++k) {
        const StepCache::State& st = cache.lookup_mask(mask);
        // Removability never depends on the parameters, so the sampled vertex
        // is present in every grid point's removable list.
        auto it = std::lower_bound(st.removable.begin(), st.removable.end(), path[k]);
        if (it == st.removable.end() || *it != path[k])
          throw std::logic_error("replayed path left the removable set");
        std::size_t idx = std::size_t(it - st.removable.begin());
        std::uint32_t active_now = std::uint32_t(std::popcount(mask));
        acc += st.log_w_target[idx] - std::log(double(active_now)) - lps[k];
        mask &= ~(std::uint64_t(1) << path[k]);
      }
      lw[i] = acc;
    }
    out.push_back(log_sum_exp(lw) - std::log(double(n)));
  }
  return out;
}

}  // namespace danet
