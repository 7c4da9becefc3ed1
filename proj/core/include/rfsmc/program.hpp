#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rfsmc/actor_set.hpp"

namespace rfsmc {

enum class ObjectKind : std::uint8_t { Mailbox, Mutex, Semaphore, Barrier };

struct ObjectId {
  ObjectKind kind = ObjectKind::Mailbox;
  std::uint32_t index = 0;
  auto operator<=>(const ObjectId&) const = default;
};

enum class ActionKind : std::uint8_t {
  AsyncSend,
  AsyncRecv,
  Wait,
  WaitAll,
  MutexAsyncLock,
  MutexWait,
  MutexUnlock,
  SemAsyncAcquire,
  SemWait,
  SemRelease,
  BarrierAsyncArrive,
  BarrierWait,
  Fail,
  LocalStep,
};

std::string_view to_string(ActionKind kind);
std::string_view to_string(ObjectKind kind);

/// Identifies a communication by the statement that posted it.
struct CommRef {
  ActorId owner{};
  std::uint32_t stmt = 0;
  auto operator<=>(const CommRef&) const = default;
};

struct Action {
  ActionKind kind = ActionKind::LocalStep;
  std::optional<ObjectId> object;
  /// AsyncRecv only; empty means the `any` wildcard.
  std::optional<ActorId> source_filter;
  /// Wait / WaitAll only.
  std::vector<CommRef> comm_refs;
  /// Name bound by a post (AsyncSend / AsyncRecv), kept for the DSL.
  std::string var;

  bool operator==(const Action&) const = default;
};

/// True for actions that are firable whenever they are the actor's next statement.
bool always_firable(ActionKind kind);

class ProgramError : public std::runtime_error {
 public:
  explicit ProgramError(const std::string& what) : std::runtime_error(what) {}
  ProgramError(const std::string& what, ActorId actor, std::uint32_t stmt)
      : std::runtime_error(what), actor_(actor), stmt_(stmt) {}

  /// Offending statement, when the error concerns one.
  std::optional<ActorId> actor() const { return actor_; }
  std::optional<std::uint32_t> statement() const { return stmt_; }

 private:
  std::optional<ActorId> actor_;
  std::optional<std::uint32_t> stmt_;
};

/// A validated, immutable actor program. Built with ProgramBuilder.
class Program {
 public:
  struct Semaphore {
    std::string name;
    std::int32_t tokens = 0;
  };
  struct Barrier {
    std::string name;
    std::uint32_t size = 1;
    /// At most `size` distinct actors use the barrier, so concurrent arrivals
    /// always land in the same generation.
    bool lockstep = true;
  };
  struct Actor {
    std::string name;
    std::vector<Action> statements;
  };

  std::size_t actor_count() const { return actors_.size(); }
  const Actor& actor(ActorId a) const { return actors_.at(index_of(a)); }
  const std::vector<Actor>& actors() const { return actors_; }
  const std::vector<Action>& statements(ActorId a) const { return actor(a).statements; }
  const Action& action(ActorId a, std::uint32_t pc) const { return actor(a).statements.at(pc); }
  const Action& comm(CommRef c) const { return action(c.owner, c.stmt); }

  std::size_t total_statements() const { return total_statements_; }
  std::size_t global_index(ActorId a, std::uint32_t pc) const { return offsets_[index_of(a)] + pc; }
  std::size_t global_index(CommRef c) const { return global_index(c.owner, c.stmt); }

  const std::vector<std::string>& mailboxes() const { return mailboxes_; }
  const std::vector<std::string>& mutexes() const { return mutexes_; }
  const std::vector<Semaphore>& semaphores() const { return semaphores_; }
  const std::vector<Barrier>& barriers() const { return barriers_; }

  const std::string& object_name(ObjectId id) const;
  std::optional<ActorId> find_actor(std::string_view name) const;
  std::optional<ObjectId> find_object(std::string_view name) const;

  bool operator==(const Program&) const;

 private:
  friend class ProgramBuilder;

  std::vector<std::string> mailboxes_;
  std::vector<std::string> mutexes_;
  std::vector<Semaphore> semaphores_;
  std::vector<Barrier> barriers_;
  std::vector<Actor> actors_;
  std::vector<std::size_t> offsets_;
  std::size_t total_statements_ = 0;
};

/// Mutable program under construction. `build()` validates and freezes it.
class ProgramBuilder {
 public:
  ObjectId mailbox(std::string name);
  ObjectId mutex(std::string name);
  ObjectId semaphore(std::string name, std::int32_t tokens);
  ObjectId barrier(std::string name, std::uint32_t size);
  ActorId actor(std::string name);

  /// Appends a primitive statement and returns its index in the actor's list.
  std::uint32_t append(ActorId a, Action action);

  std::uint32_t send(ActorId a, ObjectId mbox, std::string var = {});
  std::uint32_t recv(ActorId a, ObjectId mbox, std::optional<ActorId> from = std::nullopt,
                     std::string var = {});
  std::uint32_t wait(ActorId a, std::uint32_t comm_stmt);
  std::uint32_t wait_all(ActorId a, std::vector<std::uint32_t> comm_stmts);
  std::uint32_t async_lock(ActorId a, ObjectId mutex);
  std::uint32_t mutex_wait(ActorId a, ObjectId mutex);
  std::uint32_t unlock(ActorId a, ObjectId mutex);
  std::uint32_t async_acquire(ActorId a, ObjectId sem);
  std::uint32_t sem_wait(ActorId a, ObjectId sem);
  std::uint32_t release(ActorId a, ObjectId sem);
  std::uint32_t arrive(ActorId a, ObjectId barrier);
  std::uint32_t barrier_wait(ActorId a, ObjectId barrier);
  std::uint32_t local(ActorId a);
  std::uint32_t fail(ActorId a);

  // Blocking sugar: async post followed by its wait.
  void lock(ActorId a, ObjectId mutex);
  void acquire(ActorId a, ObjectId sem);
  void barrier_sync(ActorId a, ObjectId barrier);

  std::size_t actor_count() const { return program_.actors_.size(); }
  std::size_t statement_count(ActorId a) const { return program_.actors_.at(index_of(a)).statements.size(); }

  /// Throws ProgramError on any well-formedness violation.
  Program build() const;

 private:
  Program program_;
};

std::string describe(const Program& program, ActorId actor, const Action& action);

}  // namespace rfsmc
