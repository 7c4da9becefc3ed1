#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rfsmc/actor_set.hpp"
#include "rfsmc/program.hpp"

namespace rfsmc {

struct MailboxState {
  std::vector<CommRef> pending_sends;
  std::vector<CommRef> pending_recvs;
  bool operator==(const MailboxState&) const = default;
};

struct MutexState {
  /// Requesters in arrival order; the head owns the mutex once it waited.
  std::vector<ActorId> queue;
  bool operator==(const MutexState&) const = default;
};

struct SemaphoreState {
  std::int32_t tokens = 0;
  std::vector<ActorId> queue;
  bool operator==(const SemaphoreState&) const = default;
};

struct BarrierState {
  std::uint32_t arrived = 0;
  std::uint32_t completed = 0;
  /// Generation of each actor's pending arrival, -1 when none.
  std::vector<std::int32_t> arrival_gen;
  bool operator==(const BarrierState&) const = default;
};

/// Explicit simulator state. Value type; equality is structural.
struct SimState {
  std::vector<std::uint32_t> pc;
  std::vector<MailboxState> mailboxes;
  std::vector<MutexState> mutexes;
  std::vector<SemaphoreState> semaphores;
  std::vector<BarrierState> barriers;
  /// Per posting statement (global index): partner's global index, or -1.
  std::vector<std::int32_t> comm_partner;
  bool crashed = false;
  std::optional<ActorId> fail_witness;

  bool operator==(const SimState&) const = default;
};

std::size_t hash_value(const SimState& s);

struct SimStateHash {
  std::size_t operator()(const SimState& s) const { return hash_value(s); }
};

enum class Outcome : std::uint8_t { Safe, Deadlock, Crash };
std::string_view to_string(Outcome o);

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, const std::string& what) : std::runtime_error(what), index_(index) {}
  /// 1-based position of the offending step.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

SimState initial_state(const Program& program);
bool finished(const Program& program, const SimState& state, ActorId actor);
bool is_enabled(const Program& program, const SimState& state, ActorId actor);
ActorSet enabled(const Program& program, const SimState& state);

/// Next statement of `actor`. Throws std::logic_error if the actor is finished.
const Action& peek(const Program& program, const SimState& state, ActorId actor);

/// Fires `actor`'s next statement. Throws std::logic_error if it is not enabled.
void step_in_place(const Program& program, SimState& state, ActorId actor);
SimState step(const Program& program, SimState state, ActorId actor);

SimState replay(const Program& program, std::span<const ActorId> actors);

/// Requires a maximal state (nothing enabled).
Outcome classify(const Program& program, const SimState& state);

/// One step of an execution: who moved, which statement, and its 1-based position.
struct Transition {
  ActorId actor{};
  std::uint32_t stmt = 0;
  std::uint32_t index = 0;
  bool operator==(const Transition&) const = default;
};

/// A sequence of transitions from the initial state.
class Execution {
 public:
  Execution() = default;

  /// Resolves statement indices by counting; does not check enabledness.
  static Execution from_actors(const Program& program, std::span<const ActorId> actors);

  std::size_t size() const { return transitions_.size(); }
  bool empty() const { return transitions_.empty(); }
  /// 1-based access, matching dom(E) = {1..n}.
  const Transition& at(std::size_t i) const { return transitions_.at(i - 1); }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::vector<ActorId> actors() const;
  /// First `n` transitions.
  Execution prefix(std::size_t n) const;

  void push_back(ActorId actor, std::uint32_t stmt);
  bool operator==(const Execution&) const = default;

 private:
  std::vector<Transition> transitions_;
};

Outcome classify(const Program& program, const Execution& execution);

}  // namespace rfsmc
