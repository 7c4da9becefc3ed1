#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rfsmc/actor_set.hpp"
#include "rfsmc/dependency.hpp"

namespace rfsmc {

struct WutNode {
  ActorId actor{};
  std::vector<WutNode> children;
  bool operator==(const WutNode&) const = default;
};

/// Ordered, prefix-closed set of pending continuation sequences.
/// Children are ordered by insertion time.
class WakeupTree {
 public:
  enum class InsertResult { Inserted, Covered };

  bool empty() const { return roots_.empty(); }
  const std::vector<WutNode>& roots() const { return roots_; }

  /// Actors labelling height-one nodes, in order.
  std::vector<ActorId> heads() const;
  bool has_head(ActorId p) const;

  /// Removes p's height-one subtree and returns it re-rooted.
  /// Throws std::logic_error if p is not at height one.
  WakeupTree extract(ActorId p);

  /// Inserts v anchored where the program counters are `pcs`. Descends into
  /// the first child whose label is a weak initial of the remaining sequence;
  /// reports Covered when an existing branch already subsumes v.
  InsertResult insert(const DependencyTable& deps, std::span<const std::uint32_t> pcs, std::vector<ActorId> v);

  /// All root-to-leaf sequences, in order.
  std::vector<std::vector<ActorId>> leaves() const;
  std::size_t node_count() const;

  /// Single-line bracket form, e.g. "P2(P3(P3)) P1".
  void print(std::ostream& os, const Program& program) const;

  bool operator==(const WakeupTree&) const = default;

  static WakeupTree branch(std::span<const ActorId> v);

 private:
  std::vector<WutNode> roots_;
};

}  // namespace rfsmc
