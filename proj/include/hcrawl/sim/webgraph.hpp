#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hcrawl::sim {

using NodeIndex = std::size_t;

/// Directed graph whose nodes carry a quality value r in [0, 1].
class Webgraph {
 public:
  /// Throws DomainError on a duplicate name or r outside [0, 1].
  NodeIndex add_node(std::string name, double r);
  /// Parallel edges are ignored. Throws LookupError on unknown endpoints.
  void add_edge(NodeIndex from, NodeIndex to);
  void add_edge(std::string_view from, std::string_view to);

  NodeIndex index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_.contains(std::string(name)); }
  const std::string& name(NodeIndex n) const { return names_.at(n); }
  double r(NodeIndex n) const { return r_.at(n); }
  std::span<const NodeIndex> successors(NodeIndex n) const { return out_.at(n); }
  bool has_edge(NodeIndex from, NodeIndex to) const;

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

  friend bool operator==(const Webgraph& a, const Webgraph& b) {
    return a.names_ == b.names_ && a.r_ == b.r_ && a.out_ == b.out_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<double> r_;
  std::vector<std::vector<NodeIndex>> out_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::size_t edges_ = 0;
};

/// Line-oriented text format: `node <id> <r>` and `edge <from> <to>`; blank
/// lines and lines starting with '#' are ignored. Throws ParseError.
Webgraph parse_graph(std::istream& in);
Webgraph load_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Webgraph& g);

/// Mean of r over the last min(m, |path|) nodes. Throws DomainError on an
/// empty path or m == 0.
double h_m(std::span<const NodeIndex> path, const Webgraph& g, std::size_t m);

/// Same mean over plain values.
double window_mean(std::span<const double> values, std::size_t m);

}  // namespace hcrawl::sim
