#include "rfsmc/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace rfsmc {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Dfs: return "dfs";
    case StrategyKind::UniformDfs: return "uniform-dfs";
    case StrategyKind::RfsStep: return "rfs-step";
    case StrategyKind::RfsBranch: return "rfs-branch";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (StrategyKind k : kAllStrategies)
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::size_t StrategyPicker::uniform(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

NodeId StrategyPicker::pick_head(std::span<const HeadInfo> heads, NodeId current) {
  if (heads.empty()) throw std::logic_error("pick_head: no heads");
  switch (strategy_.kind) {
    case StrategyKind::Dfs:
    case StrategyKind::UniformDfs: {
      const auto it = std::max_element(heads.begin(), heads.end(), [](const HeadInfo& a, const HeadInfo& b) {
        return a.depth != b.depth ? a.depth < b.depth : a.seq < b.seq;
      });
      return it->node;
    }
    case StrategyKind::RfsBranch:
      for (const auto& h : heads)
        if (h.node == current) return current;
      [[fallthrough]];
    case StrategyKind::RfsStep:
      return heads[uniform(heads.size())].node;
  }
  return heads.front().node;
}

ActorId StrategyPicker::pick_child(std::span<const ActorId> wut_heads) {
  if (wut_heads.empty()) throw std::logic_error("pick_child: empty wakeup tree");
  return wut_heads.front();
}

ActorId StrategyPicker::pick_seed(ActorSet candidates) {
  if (candidates.empty()) throw std::logic_error("pick_seed: no candidates");
  if (strategy_.kind == StrategyKind::Dfs) return candidates.first();
  const auto v = candidates.to_vector();
  return v[uniform(v.size())];
}

}  // namespace rfsmc
