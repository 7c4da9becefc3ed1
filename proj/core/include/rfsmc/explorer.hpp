#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfsmc/dependency.hpp"
#include "rfsmc/exploration_tree.hpp"
#include "rfsmc/program.hpp"
#include "rfsmc/simulator.hpp"
#include "rfsmc/strategy.hpp"

namespace rfsmc {

struct Budget {
  std::optional<std::uint64_t> max_traces;
  std::optional<std::uint64_t> max_states;
  std::optional<double> timeout_s;
};

struct ExploreOptions {
  Strategy strategy;
  Budget budget;
  bool stop_at_first_bug = true;
  bool gc = true;
  /// Keep every maximal execution with its outcome.
  bool record_runs = false;
  bool record_transcript = false;
};

struct ExplorationStats {
  std::uint64_t traces_explored = 0;
  std::uint64_t states_visited = 0;
  /// states_visited when the first faulty execution was reached; 0 if none.
  std::uint64_t states_before_first_bug = 0;
  std::uint64_t ssb_count = 0;
  std::uint64_t peak_tree_nodes = 0;
  std::uint64_t races_inserted = 0;
  std::uint64_t races_skipped = 0;
  double wall_time_s = 0.0;
};

enum class VerdictKind : std::uint8_t { AllSafe, Deadlock, Crash, Exhausted };
std::string_view to_string(VerdictKind kind);

struct Verdict {
  VerdictKind outcome = VerdictKind::AllSafe;
  std::optional<Execution> counterexample;
  ExplorationStats stats;
  /// Which limit stopped an Exhausted run: "traces", "states" or "timeout".
  std::string exhausted_budget;
  std::vector<std::string> transcript;
};

struct RunRecord {
  Execution execution;
  Outcome outcome = Outcome::Safe;
  NodeId leaf = kNoNode;
};

/// RFS ODPOR over one program. Single-threaded; one instance per exploration.
class Explorer {
 public:
  /// `program` must outlive the explorer.
  Explorer(const Program& program, ExploreOptions options);
  Explorer(Program&&, ExploreOptions) = delete;

  Explorer(const Explorer&) = delete;
  Explorer& operator=(const Explorer&) = delete;

  using HeadFilter = std::function<bool(NodeId)>;

  struct Iteration {
    bool progressed = false;
    std::optional<RunRecord> maximal;
  };

  /// One loop iteration over heads accepted by `filter` (all heads if empty).
  Iteration iterate(const HeadFilter& filter = {});

  /// Runs until no head remains, a bug is found (if stopping), or a budget trips.
  Verdict run();

  /// True when a budget limit has been reached; sets the reason.
  bool budget_exhausted();

  const Program& program() const { return *program_; }
  const DependencyTable& deps() const { return deps_; }
  const ExplorationTree& tree() const { return tree_; }
  const ExplorationStats& stats() const { return stats_; }
  const std::vector<NodeId>& heads() const { return heads_; }
  bool is_head(NodeId id) const { return id < head_pos_.size() && head_pos_[id] != kNotHead; }
  const std::vector<RunRecord>& runs() const { return runs_; }
  const std::optional<RunRecord>& first_bug() const { return first_bug_; }
  const std::vector<std::string>& transcript() const { return transcript_; }
  const ExploreOptions& options() const { return options_; }

  /// Snapshot of the current stats and verdict fields.
  Verdict verdict() const;

 private:
  static constexpr std::uint32_t kNotHead = ~std::uint32_t{0};

  void add_head(NodeId id);
  void remove_head(NodeId id);
  const SimState& state_of(NodeId id);
  void on_maximal(NodeId leaf, const SimState& state, RunRecord& record);
  void insert_race(NodeId at, ActorId racing, std::vector<ActorId> v, const std::string& label);
  void log(std::string line);
  std::string name(ActorId a) const;
  std::string seq(const std::vector<ActorId>& v) const;

  const Program* program_;
  ExploreOptions options_;
  DependencyTable deps_;
  ExplorationTree tree_;
  StrategyPicker picker_;
  ExplorationStats stats_;

  std::vector<NodeId> heads_;
  std::vector<std::uint32_t> head_pos_;
  std::vector<std::uint64_t> head_seq_;
  std::uint64_t next_seq_ = 0;
  NodeId current_ = kNoNode;

  NodeId cached_node_ = kNoNode;
  SimState cached_state_;

  std::vector<RunRecord> runs_;
  std::optional<RunRecord> first_bug_;
  std::vector<std::string> transcript_;
  std::string exhausted_;
  std::chrono::steady_clock::time_point start_;
};

/// Convenience wrapper: build an Explorer and run it.
Verdict explore(const Program& program, const ExploreOptions& options);

}  // namespace rfsmc
