#include "rfsmc/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rfsmc {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::AsyncSend: return "AsyncSend";
    case ActionKind::AsyncRecv: return "AsyncRecv";
    case ActionKind::Wait: return "Wait";
    case ActionKind::WaitAll: return "WaitAll";
    case ActionKind::MutexAsyncLock: return "MutexAsyncLock";
    case ActionKind::MutexWait: return "MutexWait";
    case ActionKind::MutexUnlock: return "MutexUnlock";
    case ActionKind::SemAsyncAcquire: return "SemAsyncAcquire";
    case ActionKind::SemWait: return "SemWait";
    case ActionKind::SemRelease: return "SemRelease";
    case ActionKind::BarrierAsyncArrive: return "BarrierAsyncArrive";
    case ActionKind::BarrierWait: return "BarrierWait";
    case ActionKind::Fail: return "Fail";
    case ActionKind::LocalStep: return "LocalStep";
  }
  return "?";
}

std::string_view to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Mailbox: return "mailbox";
    case ObjectKind::Mutex: return "mutex";
    case ObjectKind::Semaphore: return "semaphore";
    case ObjectKind::Barrier: return "barrier";
  }
  return "?";
}

bool always_firable(ActionKind kind) {
  switch (kind) {
    case ActionKind::Wait:
    case ActionKind::WaitAll:
    case ActionKind::MutexWait:
    case ActionKind::SemWait:
    case ActionKind::BarrierWait:
      return false;
    default:
      return true;
  }
}

namespace {

Action make_action(ActionKind kind, std::optional<ObjectId> object = std::nullopt) {
  Action a;
  a.kind = kind;
  a.object = object;
  return a;
}

std::optional<ObjectKind> required_object(ActionKind kind) {
  switch (kind) {
    case ActionKind::AsyncSend:
    case ActionKind::AsyncRecv:
      return ObjectKind::Mailbox;
    case ActionKind::MutexAsyncLock:
    case ActionKind::MutexWait:
    case ActionKind::MutexUnlock:
      return ObjectKind::Mutex;
    case ActionKind::SemAsyncAcquire:
    case ActionKind::SemWait:
    case ActionKind::SemRelease:
      return ObjectKind::Semaphore;
    case ActionKind::BarrierAsyncArrive:
    case ActionKind::BarrierWait:
      return ObjectKind::Barrier;
    default:
      return std::nullopt;
  }
}

std::size_t object_count(const Program& p, ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Mailbox: return p.mailboxes().size();
    case ObjectKind::Mutex: return p.mutexes().size();
    case ObjectKind::Semaphore: return p.semaphores().size();
    case ObjectKind::Barrier: return p.barriers().size();
  }
  return 0;
}

}  // namespace

const std::string& Program::object_name(ObjectId id) const {
  switch (id.kind) {
    case ObjectKind::Mailbox: return mailboxes_.at(id.index);
    case ObjectKind::Mutex: return mutexes_.at(id.index);
    case ObjectKind::Semaphore: return semaphores_.at(id.index).name;
    case ObjectKind::Barrier: return barriers_.at(id.index).name;
  }
  throw ProgramError("bad object kind");
}

std::optional<ActorId> Program::find_actor(std::string_view name) const {
  for (std::size_t i = 0; i < actors_.size(); ++i) {
    if (actors_[i].name == name) return actor_at(i);
  }
  return std::nullopt;
}

std::optional<ObjectId> Program::find_object(std::string_view name) const {
  for (std::uint32_t i = 0; i < mailboxes_.size(); ++i)
    if (mailboxes_[i] == name) return ObjectId{ObjectKind::Mailbox, i};
  for (std::uint32_t i = 0; i < mutexes_.size(); ++i)
    if (mutexes_[i] == name) return ObjectId{ObjectKind::Mutex, i};
  for (std::uint32_t i = 0; i < semaphores_.size(); ++i)
    if (semaphores_[i].name == name) return ObjectId{ObjectKind::Semaphore, i};
  for (std::uint32_t i = 0; i < barriers_.size(); ++i)
    if (barriers_[i].name == name) return ObjectId{ObjectKind::Barrier, i};
  return std::nullopt;
}

bool Program::operator==(const Program& o) const {
  auto sem_eq = [](const Semaphore& a, const Semaphore& b) { return a.name == b.name && a.tokens == b.tokens; };
  auto bar_eq = [](const Barrier& a, const Barrier& b) { return a.name == b.name && a.size == b.size; };
  auto act_eq = [](const Actor& a, const Actor& b) { return a.name == b.name && a.statements == b.statements; };
  return mailboxes_ == o.mailboxes_ && mutexes_ == o.mutexes_ &&
         std::equal(semaphores_.begin(), semaphores_.end(), o.semaphores_.begin(), o.semaphores_.end(), sem_eq) &&
         std::equal(barriers_.begin(), barriers_.end(), o.barriers_.begin(), o.barriers_.end(), bar_eq) &&
         std::equal(actors_.begin(), actors_.end(), o.actors_.begin(), o.actors_.end(), act_eq);
}

ObjectId ProgramBuilder::mailbox(std::string name) {
  program_.mailboxes_.push_back(std::move(name));
  return {ObjectKind::Mailbox, static_cast<std::uint32_t>(program_.mailboxes_.size() - 1)};
}

ObjectId ProgramBuilder::mutex(std::string name) {
  program_.mutexes_.push_back(std::move(name));
  return {ObjectKind::Mutex, static_cast<std::uint32_t>(program_.mutexes_.size() - 1)};
}

ObjectId ProgramBuilder::semaphore(std::string name, std::int32_t tokens) {
  program_.semaphores_.push_back({std::move(name), tokens});
  return {ObjectKind::Semaphore, static_cast<std::uint32_t>(program_.semaphores_.size() - 1)};
}

ObjectId ProgramBuilder::barrier(std::string name, std::uint32_t size) {
  program_.barriers_.push_back({std::move(name), size, true});
  return {ObjectKind::Barrier, static_cast<std::uint32_t>(program_.barriers_.size() - 1)};
}

ActorId ProgramBuilder::actor(std::string name) {
  if (program_.actors_.size() >= kMaxActors) throw ProgramError("too many actors (limit 64)");
  program_.actors_.push_back({std::move(name), {}});
  return actor_at(program_.actors_.size() - 1);
}

std::uint32_t ProgramBuilder::append(ActorId a, Action action) {
  auto& stmts = program_.actors_.at(index_of(a)).statements;
  stmts.push_back(std::move(action));
  return static_cast<std::uint32_t>(stmts.size() - 1);
}

std::uint32_t ProgramBuilder::send(ActorId a, ObjectId mbox, std::string var) {
  return append(a, Action{ActionKind::AsyncSend, mbox, std::nullopt, {}, std::move(var)});
}

std::uint32_t ProgramBuilder::recv(ActorId a, ObjectId mbox, std::optional<ActorId> from, std::string var) {
  return append(a, Action{ActionKind::AsyncRecv, mbox, from, {}, std::move(var)});
}

std::uint32_t ProgramBuilder::wait(ActorId a, std::uint32_t comm_stmt) {
  return append(a, Action{ActionKind::Wait, std::nullopt, std::nullopt, {CommRef{a, comm_stmt}}, {}});
}

std::uint32_t ProgramBuilder::wait_all(ActorId a, std::vector<std::uint32_t> comm_stmts) {
  Action act{ActionKind::WaitAll, std::nullopt, std::nullopt, {}, {}};
  for (auto s : comm_stmts) act.comm_refs.push_back(CommRef{a, s});
  return append(a, std::move(act));
}

std::uint32_t ProgramBuilder::async_lock(ActorId a, ObjectId m) { return append(a, make_action(ActionKind::MutexAsyncLock, m)); }
std::uint32_t ProgramBuilder::mutex_wait(ActorId a, ObjectId m) { return append(a, make_action(ActionKind::MutexWait, m)); }
std::uint32_t ProgramBuilder::unlock(ActorId a, ObjectId m) { return append(a, make_action(ActionKind::MutexUnlock, m)); }
std::uint32_t ProgramBuilder::async_acquire(ActorId a, ObjectId s) { return append(a, make_action(ActionKind::SemAsyncAcquire, s)); }
std::uint32_t ProgramBuilder::sem_wait(ActorId a, ObjectId s) { return append(a, make_action(ActionKind::SemWait, s)); }
std::uint32_t ProgramBuilder::release(ActorId a, ObjectId s) { return append(a, make_action(ActionKind::SemRelease, s)); }
std::uint32_t ProgramBuilder::arrive(ActorId a, ObjectId b) { return append(a, make_action(ActionKind::BarrierAsyncArrive, b)); }
std::uint32_t ProgramBuilder::barrier_wait(ActorId a, ObjectId b) { return append(a, make_action(ActionKind::BarrierWait, b)); }
std::uint32_t ProgramBuilder::local(ActorId a) { return append(a, make_action(ActionKind::LocalStep)); }
std::uint32_t ProgramBuilder::fail(ActorId a) { return append(a, make_action(ActionKind::Fail)); }

void ProgramBuilder::lock(ActorId a, ObjectId m) {
  async_lock(a, m);
  mutex_wait(a, m);
}

void ProgramBuilder::acquire(ActorId a, ObjectId s) {
  async_acquire(a, s);
  sem_wait(a, s);
}

void ProgramBuilder::barrier_sync(ActorId a, ObjectId b) {
  arrive(a, b);
  barrier_wait(a, b);
}

namespace {

std::string where(const Program::Actor& actor, std::size_t pc) {
  std::ostringstream os;
  os << "actor " << actor.name << ", statement " << pc << ": ";
  return os.str();
}

void check_names(const Program& p) {
  std::set<std::string> seen;
  auto add = [&](const std::string& n, std::string_view what) {
    if (n.empty()) throw ProgramError(std::string(what) + " with empty name");
    if (!seen.insert(n).second) throw ProgramError("duplicate object name '" + n + "'");
  };
  for (const auto& m : p.mailboxes()) add(m, "mailbox");
  for (const auto& m : p.mutexes()) add(m, "mutex");
  for (const auto& s : p.semaphores()) add(s.name, "semaphore");
  for (const auto& b : p.barriers()) add(b.name, "barrier");
  std::set<std::string> actors;
  for (const auto& a : p.actors()) {
    if (a.name.empty()) throw ProgramError("actor with empty name");
    if (!actors.insert(a.name).second) throw ProgramError("duplicate actor name '" + a.name + "'");
  }
}

void check_actor(const Program& p, ActorId self) {
  enum class Phase { Idle, Pending, Held };
  const auto& actor = p.actor(self);
  std::map<std::uint32_t, Phase> mutex_phase;
  std::map<std::uint32_t, bool> sem_pending;
  std::map<std::uint32_t, int> sem_held;
  std::map<std::uint32_t, bool> barrier_pending;
  std::set<std::uint32_t> waited;

  for (std::size_t pc = 0; pc < actor.statements.size(); ++pc) {
    const Action& a = actor.statements[pc];
    const auto needed = required_object(a.kind);
    if (needed) {
      if (!a.object || a.object->kind != *needed)
        throw ProgramError(where(actor, pc) + std::string(to_string(a.kind)) + " needs a " +
                           std::string(to_string(*needed)), self, static_cast<std::uint32_t>(pc));
      if (a.object->index >= object_count(p, *needed))
        throw ProgramError(where(actor, pc) + "undeclared " + std::string(to_string(*needed)), self, static_cast<std::uint32_t>(pc));
    } else if (a.object) {
      throw ProgramError(where(actor, pc) + std::string(to_string(a.kind)) + " takes no object", self, static_cast<std::uint32_t>(pc));
    }
    if (a.source_filter && (a.kind != ActionKind::AsyncRecv || index_of(*a.source_filter) >= p.actor_count()))
      throw ProgramError(where(actor, pc) + "invalid source filter", self, static_cast<std::uint32_t>(pc));
    const bool waits = a.kind == ActionKind::Wait || a.kind == ActionKind::WaitAll;
    if (!waits && !a.comm_refs.empty()) throw ProgramError(where(actor, pc) + "unexpected communication refs", self, static_cast<std::uint32_t>(pc));

    const std::uint32_t obj = a.object ? a.object->index : 0;
    switch (a.kind) {
      case ActionKind::Wait:
      case ActionKind::WaitAll: {
        if (a.comm_refs.empty() || (a.kind == ActionKind::Wait && a.comm_refs.size() != 1))
          throw ProgramError(where(actor, pc) + "wrong number of communications", self, static_cast<std::uint32_t>(pc));
        for (const CommRef& c : a.comm_refs) {
          if (c.owner != self || c.stmt >= pc)
            throw ProgramError(where(actor, pc) + "wait on a communication not posted earlier by this actor", self, static_cast<std::uint32_t>(pc));
          const auto k = actor.statements[c.stmt].kind;
          if (k != ActionKind::AsyncSend && k != ActionKind::AsyncRecv)
            throw ProgramError(where(actor, pc) + "wait on a non-communication statement", self, static_cast<std::uint32_t>(pc));
          if (!waited.insert(c.stmt).second)
            throw ProgramError(where(actor, pc) + "communication waited twice", self, static_cast<std::uint32_t>(pc));
        }
        break;
      }
      case ActionKind::MutexAsyncLock:
        if (mutex_phase[obj] != Phase::Idle) throw ProgramError(where(actor, pc) + "recursive lock", self, static_cast<std::uint32_t>(pc));
        mutex_phase[obj] = Phase::Pending;
        break;
      case ActionKind::MutexWait:
        if (mutex_phase[obj] != Phase::Pending) throw ProgramError(where(actor, pc) + "mutex_wait without async_lock", self, static_cast<std::uint32_t>(pc));
        mutex_phase[obj] = Phase::Held;
        break;
      case ActionKind::MutexUnlock:
        if (mutex_phase[obj] != Phase::Held) throw ProgramError(where(actor, pc) + "unlock of a mutex not held", self, static_cast<std::uint32_t>(pc));
        mutex_phase[obj] = Phase::Idle;
        break;
      case ActionKind::SemAsyncAcquire:
        if (sem_pending[obj]) throw ProgramError(where(actor, pc) + "acquire already pending", self, static_cast<std::uint32_t>(pc));
        sem_pending[obj] = true;
        break;
      case ActionKind::SemWait:
        if (!sem_pending[obj]) throw ProgramError(where(actor, pc) + "sem_wait without async_acquire", self, static_cast<std::uint32_t>(pc));
        sem_pending[obj] = false;
        ++sem_held[obj];
        break;
      case ActionKind::SemRelease:
        if (sem_held[obj] == 0) throw ProgramError(where(actor, pc) + "release without a completed acquire", self, static_cast<std::uint32_t>(pc));
        --sem_held[obj];
        break;
      case ActionKind::BarrierAsyncArrive:
        if (barrier_pending[obj]) throw ProgramError(where(actor, pc) + "arrive while an arrival is pending", self, static_cast<std::uint32_t>(pc));
        barrier_pending[obj] = true;
        break;
      case ActionKind::BarrierWait:
        if (!barrier_pending[obj]) throw ProgramError(where(actor, pc) + "barrier_wait without arrive", self, static_cast<std::uint32_t>(pc));
        barrier_pending[obj] = false;
        break;
      default:
        break;
    }
  }
}

}  // namespace

Program ProgramBuilder::build() const {
  Program p = program_;
  check_names(p);
  for (const auto& s : p.semaphores_)
    if (s.tokens < 0) throw ProgramError("semaphore '" + s.name + "' has negative tokens");
  for (const auto& b : p.barriers_)
    if (b.size == 0) throw ProgramError("barrier '" + b.name + "' has size 0");
  for (std::size_t a = 0; a < p.actors_.size(); ++a) check_actor(p, actor_at(a));

  std::vector<std::set<std::size_t>> barrier_users(p.barriers_.size());
  p.offsets_.clear();
  p.total_statements_ = 0;
  for (std::size_t a = 0; a < p.actors_.size(); ++a) {
    p.offsets_.push_back(p.total_statements_);
    p.total_statements_ += p.actors_[a].statements.size();
    for (const auto& s : p.actors_[a].statements)
      if (s.object && s.object->kind == ObjectKind::Barrier) barrier_users[s.object->index].insert(a);
  }
  for (std::size_t b = 0; b < p.barriers_.size(); ++b)
    p.barriers_[b].lockstep = barrier_users[b].size() <= p.barriers_[b].size;
  return p;
}

std::string describe(const Program& program, ActorId actor, const Action& a) {
  std::ostringstream os;
  os << to_string(a.kind);
  if (a.object) os << "(" << program.object_name(*a.object) << ")";
  if (a.kind == ActionKind::AsyncRecv)
    os << " from " << (a.source_filter ? program.actor(*a.source_filter).name : std::string("any"));
  if (!a.comm_refs.empty()) {
    os << "(";
    for (std::size_t i = 0; i < a.comm_refs.size(); ++i) {
      const CommRef& c = a.comm_refs[i];
      const Action& post = program.comm(c);
      os << (i ? "," : "") << (post.var.empty() ? "#" + std::to_string(c.stmt) : post.var);
    }
    os << ")";
  }
  (void)actor;
  return os.str();
}

}  // namespace rfsmc
