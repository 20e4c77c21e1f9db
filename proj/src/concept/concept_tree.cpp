#include "hcrawl/concept/concept_tree.hpp"

#include <set>

#include "hcrawl/error.hpp"
#include "hcrawl/ranking/rank.hpp"
#include "hcrawl/text/tokenizer.hpp"

namespace hcrawl::concept_tree {

namespace {

std::vector<std::string> normalize(const std::vector<std::string>& words) {
  std::vector<std::string> tokens;
  for (const auto& w : words) {
    for (auto& t : text::tokenize_text(text::decode(w)).words) tokens.push_back(std::move(t));
  }
  return ranking::unique_words(tokens);
}

}  // namespace

ConceptTree::ConceptTree() { nodes_.emplace(0, Node{0, NodeKind::kConcept, {}, std::nullopt}); }

const Node& ConceptTree::node(NodeId id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) throw LookupError("unknown concept tree node " + std::to_string(id));
  return it->second;
}

std::vector<NodeId> ConceptTree::children(NodeId id) const {
  node(id);
  std::vector<NodeId> out;
  for (const auto& [nid, n] : nodes_) {
    if (n.parent == id) out.push_back(nid);
  }
  return out;
}

NodeId ConceptTree::add(NodeId parent, NodeKind kind, std::vector<std::string> words) {
  if (node(parent).kind == NodeKind::kQuery) {
    throw DomainError("a query is a leaf and cannot have children");
  }
  words = normalize(words);
  if (words.empty()) throw DomainError("only the root may have an empty word set");
  const NodeId id = next_id_++;
  nodes_.emplace(id, Node{id, kind, std::move(words), parent});
  return id;
}

NodeId ConceptTree::add_concept(NodeId parent, std::vector<std::string> words) {
  return add(parent, NodeKind::kConcept, std::move(words));
}

NodeId ConceptTree::add_query(NodeId parent, std::vector<std::string> words) {
  return add(parent, NodeKind::kQuery, std::move(words));
}

void ConceptTree::remove(NodeId id) {
  node(id);
  if (id == root_) throw DomainError("the root cannot be removed");
  std::vector<NodeId> pending{id};
  while (!pending.empty()) {
    const NodeId current = pending.back();
    pending.pop_back();
    for (NodeId child : children(current)) pending.push_back(child);
    nodes_.erase(current);
  }
}

void ConceptTree::rename(NodeId id, std::vector<std::string> words) {
  node(id);
  words = normalize(words);
  if (words.empty() && id != root_) {
    throw DomainError("only the root may have an empty word set");
  }
  nodes_.at(id).words = std::move(words);
}

void ConceptTree::reparent(NodeId id, NodeId new_parent) {
  node(id);
  if (node(new_parent).kind == NodeKind::kQuery) {
    throw DomainError("a query is a leaf and cannot have children");
  }
  if (id == root_) throw DomainError("the root cannot be moved");
  for (std::optional<NodeId> cur = new_parent; cur; cur = nodes_.at(*cur).parent) {
    if (*cur == id) throw DomainError("reparent would create a cycle");
  }
  nodes_.at(id).parent = new_parent;
}

int ConceptTree::depth(NodeId id) const {
  int d = 0;
  for (auto p = node(id).parent; p; p = node(*p).parent) ++d;
  return d;
}

ConceptTree ConceptTree::from_nodes(std::vector<Node> nodes, NodeId next_id) {
  ConceptTree tree;
  tree.nodes_.clear();
  std::optional<NodeId> root;
  NodeId max_id = 0;
  for (auto& n : nodes) {
    if (!n.parent) {
      if (root) throw DomainError("concept tree has more than one root");
      root = n.id;
    }
    max_id = std::max(max_id, n.id);
    const NodeId id = n.id;
    if (!tree.nodes_.emplace(id, std::move(n)).second) {
      throw DomainError("duplicate concept tree node id " + std::to_string(id));
    }
  }
  if (!root) throw DomainError("concept tree has no root");
  tree.root_ = *root;
  tree.next_id_ = std::max(max_id + 1, next_id);
  tree.validate();
  return tree;
}

void ConceptTree::validate() const {
  if (node(root_).kind != NodeKind::kConcept) throw DomainError("the root must be a concept");
  for (const auto& [id, n] : nodes_) {
    if (id != n.id) throw DomainError("node id mismatch");
    if (n.parent) {
      if (!nodes_.contains(*n.parent)) {
        throw DomainError("node " + std::to_string(id) + " has an unknown parent");
      }
      if (nodes_.at(*n.parent).kind == NodeKind::kQuery) {
        throw DomainError("node " + std::to_string(id) + " hangs below a query");
      }
      if (n.words.empty()) throw DomainError("only the root may have an empty word set");
    }
    // Walking up must reach the root within size() steps.
    std::size_t steps = 0;
    for (auto p = n.parent; p; p = nodes_.at(*p).parent) {
      if (++steps > nodes_.size()) throw DomainError("concept tree contains a cycle");
    }
  }
}

std::vector<std::vector<std::string>> ancestor_chain(const ConceptTree& tree, NodeId query) {
  const Node& q = tree.node(query);
  if (q.kind != NodeKind::kQuery) {
    throw DomainError("node " + std::to_string(query) + " is not a query");
  }
  std::vector<std::vector<std::string>> chain{q.words};
  for (auto p = q.parent; p; p = tree.node(*p).parent) {
    const Node& n = tree.node(*p);
    if (!n.words.empty()) chain.push_back(n.words);
  }
  return chain;
}

}  // namespace hcrawl::concept_tree
