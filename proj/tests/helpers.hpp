#pragma once

#include <cstdint>

#include "danet/graph.hpp"
#include "danet/model.hpp"
#include "danet/theta.hpp"

namespace danet::testing {

inline Graph make_path(std::uint32_t n) {
  Graph g(n);
  for (std::uint32_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph make_cycle(std::uint32_t n) {
  Graph g = make_path(n);
  if (n >= 3) g.add_edge(0, n - 1);
  return g;
}

inline Graph make_complete(std::uint32_t n) {
  Graph g(n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Theta make_theta(double pi, double p, double q, double r) {
  Theta t;
  t.pi = pi;
  t.p = p;
  t.q = q;
  t.r = r;
  return t;
}

inline Graph sim_graph(std::uint32_t size, const Theta& theta, std::uint64_t seed) {
  return simulate_da(Graph::single(), theta, size, seed).graph;
}

}  // namespace danet::testing
