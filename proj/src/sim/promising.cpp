#include "hcrawl/sim/promising.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hcrawl/error.hpp"

namespace hcrawl::sim {

bool is_promising_path(const Webgraph& g, const std::vector<NodeIndex>& path, double ht,
                       std::size_t m) {
  if (m == 0) throw DomainError("promising path: m must be positive");
  if (path.size() < 2) throw DomainError("promising path: need at least two nodes");
  for (NodeIndex n : path) {
    if (n >= g.node_count()) throw DomainError("promising path: node outside the graph");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.has_edge(path[i], path[i + 1])) {
      throw DomainError("promising path: " + g.name(path[i]) + " -> " + g.name(path[i + 1]) +
                        " is not an edge");
    }
  }
  const std::span<const NodeIndex> p(path);
  if (p.size() >= m) {
    for (std::size_t start = 0; start + m <= p.size(); ++start) {
      if (h_m(p.subspan(start, m), g, m) <= ht) return false;
    }
  }
  // Prefixes ⟨u, p1..pt⟩ for 0 <= t < min(m, h + 1), where h = |p| - 2.
  const std::size_t prefixes = std::min(m, p.size() - 1);
  for (std::size_t len = 1; len <= prefixes; ++len) {
    if (h_m(p.first(len), g, m) <= ht) return false;
  }
  return true;
}

std::optional<std::vector<NodeIndex>> find_promising_path(const Webgraph& g, NodeIndex from,
                                                          NodeIndex to, double ht, std::size_t m,
                                                          std::size_t max_edges) {
  if (m == 0) throw DomainError("promising path: m must be positive");
  if (from >= g.node_count() || to >= g.node_count()) {
    throw LookupError("promising path: endpoint outside the graph");
  }

  struct State {
    std::vector<NodeIndex> window;  // the last min(m, length) nodes
    std::size_t parent;
    std::size_t edges;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<State> states;
  std::set<std::vector<NodeIndex>> seen;
  std::deque<std::size_t> pending;

  auto path_to = [&](std::size_t idx, NodeIndex last) {
    std::vector<NodeIndex> path{last};
    for (std::size_t s = idx; s != kNone; s = states[s].parent) path.push_back(states[s].window.back());
    std::reverse(path.begin(), path.end());
    return path;
  };

  // ⟨u⟩ is either a full window (m == 1) or a prefix that must pass.
  if (g.r(from) <= ht) return std::nullopt;
  states.push_back({{from}, kNone, 0});
  seen.insert(states.back().window);
  pending.push_back(0);

  while (!pending.empty()) {
    const std::size_t idx = pending.front();
    pending.pop_front();
    if (states[idx].edges >= max_edges) continue;
    // The current node becomes interior: a short prefix must pass.
    if (states[idx].window.size() < m && h_m(states[idx].window, g, m) <= ht) continue;
    const NodeIndex node = states[idx].window.back();
    for (NodeIndex next : g.successors(node)) {
      std::vector<NodeIndex> window = states[idx].window;
      if (window.size() == m) window.erase(window.begin());
      window.push_back(next);
      if (window.size() == m && h_m(window, g, m) <= ht) continue;
      if (next == to) return path_to(idx, next);
      if (!seen.insert(window).second) continue;
      states.push_back({std::move(window), idx, states[idx].edges + 1});
      pending.push_back(states.size() - 1);
    }
  }
  return std::nullopt;
}

bool exists_promising_path(const Webgraph& g, NodeIndex from, NodeIndex to, double ht,
                           std::size_t m, std::size_t max_edges) {
  return find_promising_path(g, from, to, ht, m, max_edges).has_value();
}

}  // namespace hcrawl::sim
