#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rfsmc/actor_set.hpp"
#include "rfsmc/dependency.hpp"
#include "rfsmc/wakeup_tree.hpp"

namespace rfsmc {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = ~NodeId{0};

/// A node of the exploration tree: one explored execution prefix.
struct ExplorationNode {
  NodeId parent = kNoNode;
  ActorId via{};
  std::uint32_t depth = 0;
  /// Program counters after the prefix; determines every actor's next statement.
  std::vector<std::uint32_t> pcs;
  ActorSet enabled;
  ActorSet sleep;
  /// Explored children, in insertion order. Append-only.
  std::vector<ActorId> done;
  /// Live children; a GC'd child keeps its `done` entry.
  std::vector<std::pair<ActorId, NodeId>> children;
  WakeupTree wut;
  bool alive = true;

  NodeId child(ActorId p) const;
};

class ExplorationTree {
 public:
  explicit ExplorationTree(const DependencyTable& deps) : deps_(&deps) {}

  NodeId create_root(std::vector<std::uint32_t> pcs, ActorSet enabled);

  /// Appends p to done(parent), creates parent·p with its sleep set, and
  /// moves wut(parent)'s subtree under p (if any) into the child.
  NodeId add_child(NodeId parent, ActorId p, std::vector<std::uint32_t> pcs, ActorSet enabled);

  /// sleep(E·p) = {q in sleep(E) ∪ done(E), q != p : next(q) independent of next(p)}.
  ActorSet child_sleep(NodeId node, ActorId p) const;

  /// Prefix of done(node) strictly before p. Throws std::logic_error if p is not done.
  std::vector<ActorId> done_before(NodeId node, ActorId p) const;

  /// Removes p's height-one subtree from wut(node) and returns it.
  WakeupTree wut_extract(NodeId node, ActorId p);

  /// Inserts v below `node`, following done children whose label is a weak
  /// initial. Returns the node whose wut received v, or kNoNode when v was
  /// already covered.
  NodeId tree_insert(NodeId node, std::vector<ActorId> v);

  /// Called on a completed maximal leaf; returns the removed nodes in order.
  std::vector<NodeId> garbage_collect(NodeId leaf);

  const ExplorationNode& node(NodeId id) const { return nodes_.at(id); }
  ExplorationNode& node(NodeId id) { return nodes_.at(id); }
  bool alive(NodeId id) const { return id < nodes_.size() && nodes_[id].alive; }
  NodeId root() const { return nodes_.empty() ? kNoNode : 0; }

  /// Actor sequence from the root to `id`.
  std::vector<ActorId> path(NodeId id) const;
  /// Ancestors of `id` from the root down to `id` inclusive.
  std::vector<NodeId> lineage(NodeId id) const;

  std::size_t live_nodes() const { return live_; }
  std::size_t peak_nodes() const { return peak_; }
  std::size_t created_nodes() const { return nodes_.size(); }

  /// Deterministic indented dump of live nodes (done, sleep, wut).
  void dump(std::ostream& os) const;

  const DependencyTable& deps() const { return *deps_; }

 private:
  bool is_leftmost(NodeId id) const;
  bool closed(NodeId id) const;
  void remove(NodeId id);
  NodeId leftmost_leaf(NodeId id) const;
  void dump_node(std::ostream& os, NodeId id, std::size_t indent) const;

  const DependencyTable* deps_;
  std::vector<ExplorationNode> nodes_;
  std::size_t live_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace rfsmc
