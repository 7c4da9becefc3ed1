#include "rfsmc/simulator.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace rfsmc {

namespace {

void mix(std::size_t& seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

bool accepts(const Program& program, CommRef recv, CommRef send) {
  const auto& filter = program.comm(recv).source_filter;
  return !filter || *filter == send.owner;
}

bool matched(const Program& program, const SimState& s, CommRef c) {
  return s.comm_partner[program.global_index(c)] >= 0;
}

void link(const Program& program, SimState& s, CommRef a, CommRef b) {
  s.comm_partner[program.global_index(a)] = static_cast<std::int32_t>(program.global_index(b));
  s.comm_partner[program.global_index(b)] = static_cast<std::int32_t>(program.global_index(a));
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Safe: return "Safe";
    case Outcome::Deadlock: return "Deadlock";
    case Outcome::Crash: return "Crash";
  }
  return "?";
}

std::size_t hash_value(const SimState& s) {
  std::size_t h = 0;
  std::hash<std::uint32_t> hu;
  for (auto v : s.pc) mix(h, hu(v));
  for (const auto& m : s.mailboxes) {
    mix(h, m.pending_sends.size());
    for (const auto& c : m.pending_sends) mix(h, index_of(c.owner) * 1315423911U + c.stmt);
    mix(h, m.pending_recvs.size());
    for (const auto& c : m.pending_recvs) mix(h, index_of(c.owner) * 2654435761U + c.stmt);
  }
  for (const auto& m : s.mutexes) {
    mix(h, m.queue.size());
    for (auto a : m.queue) mix(h, index_of(a));
  }
  for (const auto& m : s.semaphores) {
    mix(h, static_cast<std::size_t>(m.tokens));
    for (auto a : m.queue) mix(h, index_of(a));
  }
  for (const auto& b : s.barriers) {
    mix(h, b.arrived);
    mix(h, b.completed);
    for (auto g : b.arrival_gen) mix(h, static_cast<std::size_t>(g + 1));
  }
  for (auto p : s.comm_partner) mix(h, static_cast<std::size_t>(p + 1));
  mix(h, s.crashed ? 1 : 0);
  return h;
}

SimState initial_state(const Program& program) {
  SimState s;
  s.pc.assign(program.actor_count(), 0);
  s.mailboxes.resize(program.mailboxes().size());
  s.mutexes.resize(program.mutexes().size());
  for (const auto& sem : program.semaphores()) s.semaphores.push_back({sem.tokens, {}});
  for (std::size_t b = 0; b < program.barriers().size(); ++b)
    s.barriers.push_back({0, 0, std::vector<std::int32_t>(program.actor_count(), -1)});
  s.comm_partner.assign(program.total_statements(), -1);
  return s;
}

bool finished(const Program& program, const SimState& state, ActorId actor) {
  return state.pc[index_of(actor)] >= program.statements(actor).size();
}

const Action& peek(const Program& program, const SimState& state, ActorId actor) {
  if (finished(program, state, actor)) throw std::logic_error("peek on a finished actor");
  return program.action(actor, state.pc[index_of(actor)]);
}

bool is_enabled(const Program& program, const SimState& state, ActorId actor) {
  if (state.crashed || finished(program, state, actor)) return false;
  const Action& a = program.action(actor, state.pc[index_of(actor)]);
  switch (a.kind) {
    case ActionKind::Wait:
    case ActionKind::WaitAll:
      return std::all_of(a.comm_refs.begin(), a.comm_refs.end(),
                         [&](CommRef c) { return matched(program, state, c); });
    case ActionKind::MutexWait: {
      const auto& q = state.mutexes[a.object->index].queue;
      return !q.empty() && q.front() == actor;
    }
    case ActionKind::SemWait: {
      const auto& sem = state.semaphores[a.object->index];
      const auto it = std::find(sem.queue.begin(), sem.queue.end(), actor);
      return it != sem.queue.end() && (it - sem.queue.begin()) < sem.tokens;
    }
    case ActionKind::BarrierWait: {
      const auto& b = state.barriers[a.object->index];
      const auto gen = b.arrival_gen[index_of(actor)];
      return gen >= 0 && static_cast<std::uint32_t>(gen) < b.completed;
    }
    default:
      return true;
  }
}

ActorSet enabled(const Program& program, const SimState& state) {
  ActorSet out;
  if (state.crashed) return out;
  for (std::size_t i = 0; i < program.actor_count(); ++i)
    if (is_enabled(program, state, actor_at(i))) out.insert(actor_at(i));
  return out;
}

void step_in_place(const Program& program, SimState& s, ActorId actor) {
  if (!is_enabled(program, s, actor)) throw std::logic_error("step on a disabled actor");
  const std::uint32_t pc = s.pc[index_of(actor)];
  const Action& a = program.action(actor, pc);
  const CommRef self{actor, pc};
  switch (a.kind) {
    case ActionKind::AsyncSend: {
      auto& mb = s.mailboxes[a.object->index];
      auto it = std::find_if(mb.pending_recvs.begin(), mb.pending_recvs.end(),
                             [&](CommRef r) { return accepts(program, r, self); });
      if (it != mb.pending_recvs.end()) {
        link(program, s, self, *it);
        mb.pending_recvs.erase(it);
      } else {
        mb.pending_sends.push_back(self);
      }
      break;
    }
    case ActionKind::AsyncRecv: {
      auto& mb = s.mailboxes[a.object->index];
      auto it = std::find_if(mb.pending_sends.begin(), mb.pending_sends.end(),
                             [&](CommRef snd) { return accepts(program, self, snd); });
      if (it != mb.pending_sends.end()) {
        link(program, s, self, *it);
        mb.pending_sends.erase(it);
      } else {
        mb.pending_recvs.push_back(self);
      }
      break;
    }
    case ActionKind::MutexAsyncLock:
      s.mutexes[a.object->index].queue.push_back(actor);
      break;
    case ActionKind::MutexUnlock: {
      auto& q = s.mutexes[a.object->index].queue;
      if (q.empty() || q.front() != actor) throw std::logic_error("unlock by a non-owner");
      q.erase(q.begin());
      break;
    }
    case ActionKind::SemAsyncAcquire:
      s.semaphores[a.object->index].queue.push_back(actor);
      break;
    case ActionKind::SemWait: {
      auto& sem = s.semaphores[a.object->index];
      sem.queue.erase(std::find(sem.queue.begin(), sem.queue.end(), actor));
      --sem.tokens;
      break;
    }
    case ActionKind::SemRelease:
      ++s.semaphores[a.object->index].tokens;
      break;
    case ActionKind::BarrierAsyncArrive: {
      auto& b = s.barriers[a.object->index];
      b.arrival_gen[index_of(actor)] = static_cast<std::int32_t>(b.completed);
      if (++b.arrived == program.barriers()[a.object->index].size) {
        b.arrived = 0;
        ++b.completed;
      }
      break;
    }
    case ActionKind::BarrierWait:
      s.barriers[a.object->index].arrival_gen[index_of(actor)] = -1;
      break;
    case ActionKind::Fail:
      s.crashed = true;
      s.fail_witness = actor;
      break;
    case ActionKind::Wait:
    case ActionKind::WaitAll:
    case ActionKind::MutexWait:
    case ActionKind::LocalStep:
      break;
  }
  ++s.pc[index_of(actor)];
}

SimState step(const Program& program, SimState state, ActorId actor) {
  step_in_place(program, state, actor);
  return state;
}

SimState replay(const Program& program, std::span<const ActorId> actors) {
  SimState s = initial_state(program);
  for (std::size_t i = 0; i < actors.size(); ++i) {
    if (index_of(actors[i]) >= program.actor_count() || !is_enabled(program, s, actors[i]))
      throw ReplayError(i + 1, "replay: step " + std::to_string(i + 1) + " is not enabled");
    step_in_place(program, s, actors[i]);
  }
  return s;
}

Outcome classify(const Program& program, const SimState& state) {
  if (state.crashed) return Outcome::Crash;
  if (!enabled(program, state).empty()) throw std::logic_error("classify on a non-maximal state");
  for (std::size_t i = 0; i < program.actor_count(); ++i)
    if (!finished(program, state, actor_at(i))) return Outcome::Deadlock;
  return Outcome::Safe;
}

Execution Execution::from_actors(const Program& program, std::span<const ActorId> actors) {
  Execution e;
  std::vector<std::uint32_t> pc(program.actor_count(), 0);
  for (ActorId a : actors) e.push_back(a, pc.at(index_of(a))++);
  return e;
}

std::vector<ActorId> Execution::actors() const {
  std::vector<ActorId> out;
  out.reserve(transitions_.size());
  for (const auto& t : transitions_) out.push_back(t.actor);
  return out;
}

Execution Execution::prefix(std::size_t n) const {
  Execution e;
  e.transitions_.assign(transitions_.begin(), transitions_.begin() + static_cast<std::ptrdiff_t>(n));
  return e;
}

void Execution::push_back(ActorId actor, std::uint32_t stmt) {
  transitions_.push_back({actor, stmt, static_cast<std::uint32_t>(transitions_.size() + 1)});
}

Outcome classify(const Program& program, const Execution& execution) {
  const auto actors = execution.actors();
  return classify(program, replay(program, actors));
}

}  // namespace rfsmc
