#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hcrawl::concept_tree {

using NodeId = std::uint64_t;

enum class NodeKind { kConcept, kQuery };

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::kConcept;
  std::vector<std::string> words;
  std::optional<NodeId> parent;  ///< empty only for the root

  friend bool operator==(const Node&, const Node&) = default;
};

/// Rooted tree of word sets. Queries are leaves, concepts are interior nodes.
/// The root is always a concept; a forest entered by the user hangs below a
/// root with an empty word set.
class ConceptTree {
 public:
  /// A tree holding only the empty dummy root (id 0).
  ConceptTree();

  NodeId root() const noexcept { return root_; }
  const Node& node(NodeId id) const;
  bool contains(NodeId id) const noexcept { return nodes_.contains(id); }
  std::vector<NodeId> children(NodeId id) const;
  const std::map<NodeId, Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId next_id() const noexcept { return next_id_; }

  NodeId add_concept(NodeId parent, std::vector<std::string> words);
  NodeId add_query(NodeId parent, std::vector<std::string> words);
  /// Removes the node and its subtree. The root cannot be removed.
  void remove(NodeId id);
  void rename(NodeId id, std::vector<std::string> words);
  /// Throws DomainError when the move would create a cycle or put a node
  /// below a query.
  void reparent(NodeId id, NodeId new_parent);

  /// Depth of `id` below the root (the root has depth 0).
  int depth(NodeId id) const;

  /// Rebuilds a tree from a flat node list, keeping ids. Validates every
  /// structural invariant and throws DomainError on violation. Fresh ids
  /// start at `next_id` or past the largest id, whichever is greater.
  static ConceptTree from_nodes(std::vector<Node> nodes, NodeId next_id = 0);

  friend bool operator==(const ConceptTree&, const ConceptTree&) = default;

 private:
  NodeId add(NodeId parent, NodeKind kind, std::vector<std::string> words);
  void validate() const;

  std::map<NodeId, Node> nodes_;
  NodeId root_ = 0;
  NodeId next_id_ = 1;
};

/// Word sets from the query `query` up to the root, query first. Concepts with
/// an empty word set (the dummy forest root) are skipped. Throws LookupError if
/// the id is unknown and DomainError if it is not a query.
std::vector<std::vector<std::string>> ancestor_chain(const ConceptTree& tree, NodeId query);

}  // namespace hcrawl::concept_tree
