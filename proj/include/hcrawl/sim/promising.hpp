#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::sim {

/// A path ⟨u, p1..ph, v⟩ is promising when every contiguous run of m nodes
/// has window mean above `ht`, and so does every prefix shorter than m that
/// ends before v (starting with ⟨u⟩ alone). Throws DomainError unless `path`
/// has at least two nodes joined by edges of `g`.
bool is_promising_path(const Webgraph& g, const std::vector<NodeIndex>& path, double ht,
                       std::size_t m);

/// Exhaustive search for a promising path from `from` to `to` with at most
/// `max_edges` edges; paths need not be simple. Returns a witness.
/// Exponential in general: intended for graphs of about ten nodes.
std::optional<std::vector<NodeIndex>> find_promising_path(const Webgraph& g, NodeIndex from,
                                                          NodeIndex to, double ht, std::size_t m,
                                                          std::size_t max_edges);

bool exists_promising_path(const Webgraph& g, NodeIndex from, NodeIndex to, double ht,
                           std::size_t m, std::size_t max_edges);

}  // namespace hcrawl::sim
