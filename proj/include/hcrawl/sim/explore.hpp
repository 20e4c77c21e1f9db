#pragma once

#include <cstddef>
#include <vector>

#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::sim {

struct ExploreConfig {
  double ht = 0.0;     ///< happiness threshold gating expansion
  double dt = 0.0;     ///< display threshold gating output
  std::size_t m = 1;   ///< window size
  /// Upper bound on extractions; 0 means unbounded.
  std::size_t max_steps = 0;
};

struct ExploreTrace {
  /// Emitted nodes in first-emission order.
  std::vector<NodeIndex> output;
  /// Extractions per node.
  std::vector<std::size_t> visits;
  /// Insertions into the frontier per node.
  std::vector<std::size_t> enqueues;
  std::size_t frontier_peak = 0;
  std::size_t steps = 0;
  bool truncated = false;

  bool visited(NodeIndex n) const { return visits.at(n) > 0; }
  bool emitted(NodeIndex n) const;
  std::size_t total_visits() const;
};

/// Best-first exploration where every node enters the frontier at most once.
/// Frontier entries carry the window of the last m nodes of the path that
/// reached them; the entry with the highest window mean is extracted first
/// (insertion order breaks ties). Nodes are marked when enqueued.
ExploreTrace explore_single_visit(const Webgraph& g, NodeIndex start, const ExploreConfig& cfg);

/// Best-first exploration with revisits. Entries carry a window of r values.
/// A successor is (re-)enqueued only when the best window mean it was ever
/// offered from, M(v) (initially 0), is strictly lower than the current one.
/// `seed_window` holds r values visited before the start node.
ExploreTrace explore_revisit(const Webgraph& g, NodeIndex start, const ExploreConfig& cfg,
                             const std::vector<double>& seed_window = {});

}  // namespace hcrawl::sim
