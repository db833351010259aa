#include "danet/exact.hpp"

#include <bit>
#include <cmath>
#include <optional>

#include "danet/errors.hpp"
#include "danet/model.hpp"
#include "danet/numeric.hpp"
#include "danet/step_cache.hpp"

namespace danet {

namespace {

struct Recursion {
  StepCache& cache;
  MemoTable& memo;
  ExactResult& res;

  double run(std::uint64_t mask) {
    auto hit = memo.log_like.find(mask);
    if (hit != memo.log_like.end()) return hit->second;

    const StepCache::State& st = cache.lookup_mask(mask);
    double value;
    if (st.irreducible()) {
      res.terminal_masks.insert(mask);
      value = 0.0;
    } else {
      RunningLse acc;
      for (std::size_t i = 0; i < st.removable.size(); ++i) {
        if (st.log_w_target[i] == kNegInf) continue;
        double child = run(mask & ~(std::uint64_t(1) << st.removable[i]));
        acc.add(st.log_w_target[i] + child);
      }
      double lse = acc.value();
      value = lse == kNegInf ? kNegInf : lse - std::log(double(std::popcount(mask)));
    }
    memo.log_like.emplace(mask, value);
    return value;
  }
};

}  // namespace

ExactResult exact_likelihood(const Graph& g, const Theta& theta, MemoTable* memo_in) {
  theta.validate();
  if (g.label_count() > 64)
    throw CapacityError("exact likelihood supports at most 64 labels; use an estimator");

  MemoTable local;
  MemoTable& memo = memo_in ? *memo_in : local;
  StepCache cache(g, theta, std::nullopt);

  ExactResult res{};
  Recursion rec{cache, memo, res};
  res.log_likelihood = rec.run(g.active_mask());
  res.evaluated_states = cache.states_evaluated();

  std::set<std::uint32_t> sizes;
  for (std::uint64_t m : res.terminal_masks) sizes.insert(std::uint32_t(std::popcount(m)));
  res.terminal_sizes.assign(sizes.begin(), sizes.end());
  res.heterogeneous_terminals = sizes.size() > 1;
  return res;
}

namespace {

// Sum over all removal orderings of the per-path factor products, carried in
// linear long double. Deliberately free of the memoized machinery: this is
// the reference the recursion is checked against.
long double enumerate_paths(const Graph& g, const ThetaLog& tl, long double prefix) {
  std::vector<std::uint32_t> rem = removable_set(g);
  if (rem.empty()) return prefix;
  long double total = 0.0L;
  double inv_n = 1.0 / double(g.active_count());
  for (std::uint32_t v : rem) {
    double la = kNegInf, lb = kNegInf;
    transition_weight_dual(g, v, tl, nullptr, la, lb);
    if (la == kNegInf) continue;
    long double w = (long double)std::exp(la) * inv_n;
    total += enumerate_paths(delete_vertex(g, v), tl, prefix * w);
  }
  return total;
}

}  // namespace

double brute_force_likelihood(const Graph& g, const Theta& theta) {
  theta.validate();
  if (g.active_count() > 9)
    throw CapacityError("brute-force enumeration capped at 9 active vertices");
  long double sum = enumerate_paths(g, ThetaLog(theta), 1.0L);
  return sum <= 0.0L ? kNegInf : double(std::log(sum));
}

}  // namespace danet
