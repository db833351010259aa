#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "danet/graph.hpp"
#include "danet/model.hpp"
#include "danet/numeric.hpp"
#include "danet/theta.hpp"

namespace danet {

/// Per-evaluation cache of everything a backward step needs about one reduced
/// state: its removable vertices, their log transition weights under the
/// target parameters, and (optionally) under a driving parameter set together
/// with the normalized proposal CDF. Keyed by active mask when the base graph
/// fits in 64 labels; larger graphs are recomputed into a scratch slot, so a
/// returned reference is only valid until the next lookup.
///
/// The same reduced state recurs across particles and paths constantly; this
/// cache is what keeps the estimators near exact-recursion cost on small
/// graphs.
class StepCache {
 public:
  struct State {
    std::vector<std::uint32_t> removable;  // ascending
    std::vector<double> log_w_target;      // aligned with removable
    std::vector<double> log_w_driving;
    std::vector<double> driving_cdf;       // normalized cumulative masses
    double log_driving_sum = kNegInf;
    bool irreducible() const { return removable.empty(); }
  };

  StepCache(const Graph& base, const Theta& target, const std::optional<Theta>& driving)
      : base_(&base),
        target_(target),
        cacheable_(base.label_count() <= 64) {
    if (driving) driving_.emplace(*driving);
  }

  const State& lookup(const Graph& reduced) {
    if (!cacheable_) {
      scratch_ = compute(reduced);
      return scratch_;
    }
    std::uint64_t key = reduced.active_mask();
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    return map_.emplace(key, compute(reduced)).first->second;
  }

  /// Lookup by active mask; builds the induced subgraph of the base graph on
  /// demand. Requires label_count() <= 64.
  const State& lookup_mask(std::uint64_t mask) {
    auto it = map_.find(mask);
    if (it != map_.end()) return it->second;
    return map_.emplace(mask, compute(induced(mask))).first->second;
  }

  std::size_t states_evaluated() const { return cacheable_ ? map_.size() : 0; }

  Graph induced(std::uint64_t mask) const { return induced_subgraph(*base_, mask); }

 private:
  State compute(const Graph& reduced) const {
    State st;
    if (reduced.active_count() < 2) return st;
    const ThetaLog* drv = driving_ ? &*driving_ : nullptr;
    reduced.active_set().for_each([&](std::uint32_t v) {
      double lw = kNegInf, ld = kNegInf;
      if (!transition_weight_dual(reduced, v, target_, drv, lw, ld)) return;
      st.removable.push_back(v);
      st.log_w_target.push_back(lw);
      if (drv) st.log_w_driving.push_back(ld);
    });
    if (drv && !st.removable.empty()) {
      st.log_driving_sum = log_sum_exp(st.log_w_driving);
      if (st.log_driving_sum != kNegInf) {
        st.driving_cdf.resize(st.removable.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < st.removable.size(); ++i) {
          acc += std::exp(st.log_w_driving[i] - st.log_driving_sum);
          st.driving_cdf[i] = acc;
        }
        st.driving_cdf.back() = 1.0;  // kill rounding gap for inversion
      }
    }
    return st;
  }

  const Graph* base_;
  ThetaLog target_;
  std::optional<ThetaLog> driving_;
  bool cacheable_;
  std::unordered_map<std::uint64_t, State> map_;
  State scratch_;
};

}  // namespace danet
