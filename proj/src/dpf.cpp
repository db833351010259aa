#include "danet/dpf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "danet/errors.hpp"
#include "danet/model.hpp"
#include "danet/numeric.hpp"
#include "danet/resample.hpp"
#include "danet/rng.hpp"
#include "danet/step_cache.hpp"

namespace danet {

double dpf_threshold_solve(std::span<const double> weights, std::size_t capacity) {
  if (capacity == 0) throw std::invalid_argument("capacity must be positive");
  if (weights.size() <= capacity)
    throw std::logic_error("pool already fits; nothing to solve");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("threshold solve needs positive finite weights");
  }

  std::vector<double> sorted(weights.begin(), weights.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double tail = 0.0;
  for (double w : sorted) tail += w;

  // Smallest kept-count j where thinning the tail at rate C_j = (cap-j)/tail_j
  // keeps every remaining weight at or below the 1/C_j threshold. j = cap-1
  // always satisfies it, so the scan terminates.
  for (std::size_t j = 0; j < capacity; ++j) {
    double c = (double(capacity) - double(j)) / tail;
    if (c * sorted[j] <= 1.0) return c;
    tail -= sorted[j];
  }
  throw std::invalid_argument("threshold scan failed; weights are degenerate");
}

namespace {

struct Entry {
  Graph state;
  double log_carry = 0.0;
  bool absorbed = false;
};

}  // namespace

LikelihoodEstimate dpf_estimate(const Graph& g, const Theta& theta, std::size_t particles,
                                std::uint64_t seed) {
  theta.validate();
  if (particles == 0) throw std::invalid_argument("particle count must be positive");
  auto t0 = std::chrono::steady_clock::now();

  StepCache cache(g, theta, std::nullopt);
  LikelihoodEstimate est;
  est.method = "dpf";

  std::vector<Entry> pool;
  pool.push_back({g, 0.0, cache.lookup(g).irreducible()});

  const std::uint32_t initial_active = g.active_count();
  double total_log = 0.0;

  for (std::uint32_t step = 1;; ++step) {
    bool any_live = std::any_of(pool.begin(), pool.end(),
                                [](const Entry& e) { return !e.absorbed; });
    if (!any_live) break;

    std::uint32_t active_now = initial_active - (step - 1);
    double log_active = std::log(double(active_now));
    std::vector<Entry> next;
    next.reserve(pool.size() * 2);
    for (const Entry& e : pool) {
      if (e.absorbed) {
        next.push_back(e);
        continue;
      }
      const StepCache::State& st = cache.lookup(e.state);
      for (std::size_t i = 0; i < st.removable.size(); ++i) {
        double lw = e.log_carry + st.log_w_target[i] - log_active;
        if (lw == kNegInf) continue;  // zero-mass path, drop it
        Entry child;
        child.state = e.state;
        child.state.remove_vertex(st.removable[i]);
        child.log_carry = lw;
        child.absorbed = cache.lookup(child.state).irreducible();
        next.push_back(std::move(child));
      }
    }
    pool = std::move(next);

    StepDiag diag;
    diag.step = step;
    diag.unique = std::uint32_t(std::min<std::size_t>(pool.size(), UINT32_MAX));

    if (pool.empty()) {
      diag.ess = 0.0;
      diag.log_increment = kNegInf;
      est.trace.push_back(diag);
      est.segment_log_increments.push_back(kNegInf);
      est.collapsed = true;
      total_log = kNegInf;
      break;
    }

    std::vector<double> lw(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) lw[i] = pool[i].log_carry;
    double lse = log_sum_exp(lw);
    diag.ess = effective_sample_size(lw);
    diag.log_increment = lse;
    total_log += lse;
    est.segment_log_increments.push_back(lse);

    // Renormalize carries; the logged mass just moved into the estimate.
    for (Entry& e : pool) e.log_carry -= lse;

    if (pool.size() > particles) {
      diag.resampled = true;
      est.resample_times.push_back(step);

      std::vector<double> wbar(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) wbar[i] = std::exp(pool[i].log_carry);
      double c = dpf_threshold_solve(wbar, particles);
      double keep_cut = 1.0 / c;

      std::vector<Entry> trimmed;
      trimmed.reserve(particles + 1);
      std::vector<std::size_t> rest;
      double rest_mass = 0.0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (wbar[i] > keep_cut) {
          trimmed.push_back(std::move(pool[i]));
        } else {
          rest.push_back(i);
          rest_mass += wbar[i];
        }
      }

      std::size_t slots = particles - trimmed.size();
      if (slots > 0 && !rest.empty()) {
        RngStream rng = RngStream::derive(seed, StreamTag::dpf_resample, step);
        double spacing = 1.0 / double(slots);
        double u = (1.0 - rng.uniform()) * spacing;  // in (0, spacing]
        double cum = 0.0;
        std::size_t m = 0;
        double log_survivor = -std::log(c);
        for (std::size_t k = 0; k < rest.size(); ++k) {
          cum = (k + 1 == rest.size()) ? 1.0 : cum + wbar[rest[k]] / rest_mass;
          if (m < slots && u + double(m) * spacing <= cum) {
            Entry kept = std::move(pool[rest[k]]);
            kept.log_carry = log_survivor;
            trimmed.push_back(std::move(kept));
            ++m;
          }
        }
      }
      pool = std::move(trimmed);
    }
    est.trace.push_back(diag);
  }

  est.log_value = total_log;
  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return est;
}

std::uint64_t dpf_support_census(const Graph& g, std::uint64_t cap) {
  if (g.label_count() > 64)
    throw CapacityError("support census needs the graph to fit an active mask");
  auto clamp_add = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s > cap ? cap + 1 : s;
  };

  std::unordered_map<std::uint64_t, std::uint64_t> frontier;
  std::uint64_t terminal_paths = 0;
  std::uint64_t best = 0;
  if (removable_set(g).empty()) return 1;  // single terminal entry
  frontier.emplace(g.active_mask(), 1);

  while (!frontier.empty()) {
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    for (const auto& [mask, count] : frontier) {
      Graph sub = induced_subgraph(g, mask);
      for (std::uint32_t v : removable_set(sub)) {
        std::uint64_t child = mask & ~(std::uint64_t(1) << v);
        Graph child_sub = induced_subgraph(g, child);
        if (removable_set(child_sub).empty()) {
          terminal_paths = clamp_add(terminal_paths, count);
        } else {
          std::uint64_t& slot = next[child];
          slot = clamp_add(slot, count);
        }
      }
    }
    std::uint64_t level = terminal_paths;
    for (const auto& [mask, count] : next) level = clamp_add(level, count);
    best = std::max(best, level);
    if (best > cap) return cap + 1;
    frontier = std::move(next);
  }
  return best;
}

}  // namespace danet
