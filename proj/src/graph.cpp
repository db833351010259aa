#include "danet/graph.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "danet/errors.hpp"
#include "danet/model.hpp"

namespace danet {

Graph::Graph(std::uint32_t n) : n_(n), active_n_(n), active_(n), adj_(n, Bits(n)) {
  for (std::uint32_t v = 0; v < n; ++v) active_.set(v);
}

std::uint64_t Graph::edge_count() const {
  std::uint64_t twice = 0;
  for (std::uint32_t v = 0; v < n_; ++v)
    if (active_.test(v)) twice += adj_[v].count();
  return twice / 2;
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= n_ || v >= n_ || u == v || !active_.test(u) || !active_.test(v))
    throw std::invalid_argument("add_edge: endpoints must be distinct active vertices");
  adj_[u].set(v);
  adj_[v].set(u);
}

std::uint32_t Graph::add_vertex() {
  std::uint32_t v = n_++;
  active_.resize(n_);
  active_.set(v);
  for (auto& row : adj_) row.resize(n_);
  adj_.emplace_back(n_);
  ++active_n_;
  return v;
}

void Graph::remove_vertex(std::uint32_t v) {
  if (v >= n_ || !active_.test(v))
    throw std::invalid_argument("remove_vertex: vertex not active");
  adj_[v].for_each([&](std::uint32_t u) { adj_[u].reset(v); });
  adj_[v] = Bits(n_);
  active_.reset(v);
  --active_n_;
}

std::uint64_t Graph::active_mask() const {
  if (n_ > 64) throw CapacityError("active_mask requires at most 64 labels");
  return n_ == 0 ? 0 : active_.word(0);
}

Graph delete_vertex(const Graph& g, std::uint32_t v) {
  Graph out = g;
  out.remove_vertex(v);
  return out;
}

Graph induced_subgraph(const Graph& g, std::uint64_t mask) {
  if (g.label_count() > 64)
    throw CapacityError("induced_subgraph requires at most 64 labels");
  Graph out = g;
  for (std::uint32_t v = 0; v < g.label_count(); ++v) {
    if (out.is_active(v) && !((mask >> v) & 1)) out.remove_vertex(v);
  }
  return out;
}

bool validate_removal_path(const Graph& g, const RemovalPath& path) {
  Graph work = g;
  for (std::uint32_t v : path.order) {
    if (v >= work.label_count() || !work.is_active(v)) return false;
    if (!is_removable(work, v)) return false;
    work.remove_vertex(v);
  }
  return true;
}

namespace {

// One whitespace-trimmed, comment-free view of a line.
std::string_view trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_u32_pair(std::string_view s, std::uint64_t& x, std::uint64_t& y) {
  std::istringstream in{std::string(s)};
  if (!(in >> x >> y)) return false;
  std::string rest;
  if (in >> rest) return false;
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& out) -> bool {
    while (pos <= text.size()) {
      if (pos == text.size()) return false;
      std::size_t nl = text.find('\n', pos);
      std::string_view raw =
          nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
      pos = nl == std::string_view::npos ? text.size() : nl + 1;
      ++lineno;
      out = trim(raw);
      return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_line(line) || line.empty()) throw ParseError(1, "missing header \"n m\"");
  std::uint64_t n = 0, m = 0;
  if (!parse_u32_pair(line, n, m)) throw ParseError(lineno, "header must be \"n m\"");

  Graph g{std::uint32_t(n)};
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::uint64_t k = 0; k < m; ++k) {
    do {
      if (!next_line(line)) throw ParseError(lineno + 1, "expected " + std::to_string(m) +
                                                             " edge lines, got " + std::to_string(k));
    } while (line.empty());
    std::uint64_t u = 0, v = 0;
    if (!parse_u32_pair(line, u, v)) throw ParseError(lineno, "edge line must be \"u v\"");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (u > v) throw ParseError(lineno, "edge endpoints must satisfy u < v");
    if (v >= n) throw ParseError(lineno, "vertex label out of range");
    if (!seen.insert({u, v}).second) throw ParseError(lineno, "duplicate edge");
    g.add_edge(std::uint32_t(u), std::uint32_t(v));
  }
  while (next_line(line)) {
    if (!line.empty()) throw ParseError(lineno, "trailing content after edge list");
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::string out = std::to_string(g.label_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (std::uint32_t u = 0; u < g.label_count(); ++u) {
    if (!g.is_active(u)) continue;
    g.neighbors(u).for_each([&](std::uint32_t v) {
      if (u < v) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    });
  }
  return out;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph file: " + path);
  out << serialize_graph(g);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace danet
