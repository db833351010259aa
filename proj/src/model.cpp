#include "danet/model.hpp"

#include <stdexcept>

#include "danet/numeric.hpp"
#include "danet/rng.hpp"

namespace danet {

namespace {

// N(v)\{u} subset of N(u)\{v}. v never appears in N(v), so clearing v from
// N(u) is unnecessary for the test.
bool copied_links_explained(const Bits& nv, const Bits& nu, std::uint32_t u) {
  std::size_t uw = u >> 6;
  std::uint64_t um = std::uint64_t(1) << (u & 63);
  for (std::size_t i = 0; i < nv.word_count(); ++i) {
    std::uint64_t w = nv.word(i);
    if (i == uw) w &= ~um;
    if (w & ~nu.word(i)) return false;
  }
  return true;
}

void require_backward_step(const Graph& g, std::uint32_t v) {
  if (v >= g.label_count() || !g.is_active(v))
    throw std::invalid_argument("vertex not active");
  if (g.active_count() < 2)
    throw std::invalid_argument("backward step needs at least two active vertices");
}

}  // namespace

ParentCandidates candidate_parents(const Graph& g, std::uint32_t v) {
  require_backward_step(g, v);
  ParentCandidates out;
  const Bits& nv = g.neighbors(v);
  std::uint32_t deg_v = nv.count();
  g.active_set().for_each([&](std::uint32_t u) {
    if (u == v) return;
    if (!copied_links_explained(nv, g.neighbors(u), u)) return;
    out.parents.push_back(u);
    std::uint32_t e = nv.test(u) ? 1 : 0;
    if (deg_v - e == 0) out.attachment_parents.push_back(u);
  });
  return out;
}

bool is_removable(const Graph& g, std::uint32_t v) {
  if (v >= g.label_count() || !g.is_active(v)) return false;
  if (g.active_count() < 2) return false;
  const Bits& nv = g.neighbors(v);
  bool found = false;
  g.active_set().for_each([&](std::uint32_t u) {
    if (found || u == v) return;
    if (copied_links_explained(nv, g.neighbors(u), u)) found = true;
  });
  return found;
}

std::vector<std::uint32_t> removable_set(const Graph& g) {
  std::vector<std::uint32_t> out;
  g.active_set().for_each([&](std::uint32_t v) {
    if (is_removable(g, v)) out.push_back(v);
  });
  return out;
}

bool transition_weight_dual(const Graph& g, std::uint32_t v, const ThetaLog& a,
                            const ThetaLog* b, double& log_a, double& log_b) {
  require_backward_step(g, v);
  const Bits& nv = g.neighbors(v);
  std::uint32_t deg_v = nv.count();
  RunningLse acc_a, acc_b;
  bool any_parent = false;

  g.active_set().for_each([&](std::uint32_t u) {
    if (u == v) return;
    const Bits& nu = g.neighbors(u);
    if (!copied_links_explained(nv, nu, u)) return;
    any_parent = true;
    std::uint32_t e = nv.test(u) ? 1 : 0;
    std::uint32_t c = deg_v - e;
    std::uint32_t d = nu.count() - e - c;

    auto add_terms = [&](const ThetaLog& t, RunningLse& acc) {
      // Duplication explanation. Guards keep 0 * (-inf) out.
      double x = t.log_pi;
      if (x != kNegInf) {
        if (c) x += double(c) * t.log_p;
        if (d) x += double(d) * t.log_1p;
        x += e ? t.log_q : t.log_1q;
        acc.add(x);
      }
      // Pure-attachment explanation, only when v has no copied links.
      if (c == 0 && t.log_1pi != kNegInf) {
        acc.add(t.log_1pi + (e ? t.log_r : t.log_1r));
      }
    };
    add_terms(a, acc_a);
    if (b) add_terms(*b, acc_b);
  });

  double denom = std::log(double(g.active_count() - 1));
  log_a = acc_a.value() == kNegInf ? kNegInf : acc_a.value() - denom;
  if (b) log_b = acc_b.value() == kNegInf ? kNegInf : acc_b.value() - denom;
  return any_parent;
}

TransitionWeight transition_weight(const Graph& g, std::uint32_t v, const Theta& theta) {
  theta.validate();
  ThetaLog tl(theta);
  double lw = kNegInf, unused = kNegInf;
  transition_weight_dual(g, v, tl, nullptr, lw, unused);
  return {lw == kNegInf ? 0.0 : std::exp(lw), lw};
}

SimulationResult simulate_da(const Graph& seed_graph, const Theta& theta,
                             std::uint32_t target_size, std::uint64_t rng_seed) {
  theta.validate();
  if (seed_graph.active_count() == 0)
    throw std::invalid_argument("simulate_da: seed graph must have an active vertex");
  if (target_size < seed_graph.active_count())
    throw std::invalid_argument("simulate_da: target size below seed size");

  Graph g = seed_graph;
  std::vector<std::uint32_t> added;
  RngStream rng = RngStream::derive(rng_seed, StreamTag::simulate);

  while (g.active_count() < target_size) {
    std::uint32_t parent = g.active_set().select(rng.uniform_index(g.active_count()));
    bool duplicate = rng.uniform() < theta.pi;
    std::vector<std::uint32_t> links;
    if (duplicate) {
      g.neighbors(parent).for_each([&](std::uint32_t w) {
        if (rng.uniform() < theta.p) links.push_back(w);
      });
      if (rng.uniform() < theta.q) links.push_back(parent);
    } else {
      if (rng.uniform() < theta.r) links.push_back(parent);
    }
    std::uint32_t nv = g.add_vertex();
    for (std::uint32_t w : links) g.add_edge(nv, w);
    added.push_back(nv);
  }

  RemovalPath hist;
  hist.order.assign(added.rbegin(), added.rend());
  return {std::move(g), std::move(hist)};
}

}  // namespace danet
