#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "danet/bits.hpp"

namespace danet {

/// Undirected simple graph over labels 0..label_count()-1 with an active
/// subset. Reduction deactivates vertices; labels are never reused, so a
/// reduced graph remembers which original vertices survive.
///
/// Invariants: no self-loops, adjacency symmetric, every neighbor of an
/// active vertex is active.
class Graph {
 public:
  Graph() = default;
  /// n isolated active vertices.
  explicit Graph(std::uint32_t n);
  static Graph single() { return Graph(1); }

  std::uint32_t label_count() const { return n_; }
  std::uint32_t active_count() const { return active_n_; }
  bool is_active(std::uint32_t v) const { return active_.test(v); }
  const Bits& active_set() const { return active_; }
  const Bits& neighbors(std::uint32_t v) const { return adj_[v]; }
  std::uint32_t degree(std::uint32_t v) const { return adj_[v].count(); }
  bool has_edge(std::uint32_t u, std::uint32_t v) const { return adj_[u].test(v); }
  std::uint64_t edge_count() const;

  /// Both endpoints must be active and distinct.
  void add_edge(std::uint32_t u, std::uint32_t v);

  /// Appends a fresh active isolated vertex, returns its label.
  std::uint32_t add_vertex();

  /// Deactivates v and strips its incident edges, in place.
  void remove_vertex(std::uint32_t v);

  /// Active set as one word; requires label_count() <= 64.
  std::uint64_t active_mask() const;

  bool operator==(const Graph& o) const = default;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t active_n_ = 0;
  Bits active_;
  std::vector<Bits> adj_;
};

/// Copy of g with v removed; g itself is untouched.
Graph delete_vertex(const Graph& g, std::uint32_t v);

/// Copy of g reduced to the active vertices named by mask (a subset of the
/// current active set). Requires label_count() <= 64.
Graph induced_subgraph(const Graph& g, std::uint64_t mask);

/// Ordered removals: order[k] is the vertex removed at step k (so the most
/// recently added vertex of a simulation history comes first).
struct RemovalPath {
  std::vector<std::uint32_t> order;
};

/// Checks that applying path to g removes a removable vertex at every step.
bool validate_removal_path(const Graph& g, const RemovalPath& path);

/// Text format: header "n m", then m lines "u v" with 0 <= u < v < n,
/// no duplicates. Throws ParseError with a 1-based line number.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph for fully active graphs; edges ascending.
std::string serialize_graph(const Graph& g);

Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

}  // namespace danet
