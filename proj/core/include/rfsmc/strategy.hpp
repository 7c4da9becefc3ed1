#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "rfsmc/actor_set.hpp"
#include "rfsmc/exploration_tree.hpp"

namespace rfsmc {

enum class StrategyKind : std::uint8_t { Dfs, UniformDfs, RfsStep, RfsBranch };

inline constexpr StrategyKind kAllStrategies[] = {StrategyKind::Dfs, StrategyKind::UniformDfs, StrategyKind::RfsStep,
                                                  StrategyKind::RfsBranch};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

struct Strategy {
  StrategyKind kind = StrategyKind::Dfs;
  std::uint64_t seed = 0;
};

/// A candidate exploration head with the data the policies need.
struct HeadInfo {
  NodeId node = kNoNode;
  std::uint32_t depth = 0;
  /// Insertion sequence number; larger is more recent.
  std::uint64_t seq = 0;
};

/// Seeded choice policy for heads, wakeup-tree children and seed actors.
class StrategyPicker {
 public:
  explicit StrategyPicker(Strategy strategy) : strategy_(strategy), rng_(strategy.seed) {}

  StrategyKind kind() const { return strategy_.kind; }

  /// `current` is the most recently created node (kNoNode if none); rfs-branch
  /// keeps extending it while it is among the candidates.
  NodeId pick_head(std::span<const HeadInfo> heads, NodeId current);
  ActorId pick_child(std::span<const ActorId> wut_heads);
  ActorId pick_seed(ActorSet candidates);

 private:
  std::size_t uniform(std::size_t n);

  Strategy strategy_;
  std::mt19937_64 rng_;
};

}  // namespace rfsmc
