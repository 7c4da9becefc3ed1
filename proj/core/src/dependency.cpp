#include "rfsmc/dependency.hpp"

#include <algorithm>

namespace rfsmc {

namespace {

bool is_post(ActionKind k) { return k == ActionKind::AsyncSend || k == ActionKind::AsyncRecv; }
bool is_wait(ActionKind k) { return k == ActionKind::Wait || k == ActionKind::WaitAll; }

// Could `post` (by `poster`) be the partner of communication `c`?
bool could_match(const Program& program, CommRef c, ActorId poster, const Action& post) {
  const Action& mine = program.comm(c);
  if (mine.object != post.object || mine.kind == post.kind) return false;
  if (mine.kind == ActionKind::AsyncRecv) return !mine.source_filter || *mine.source_filter == poster;
  return !post.source_filter || *post.source_filter == c.owner;
}

bool wait_vs_post(const Program& program, const Action& wait, ActorId poster, const Action& post) {
  return std::any_of(wait.comm_refs.begin(), wait.comm_refs.end(),
                     [&](CommRef c) { return could_match(program, c, poster, post); });
}

}  // namespace

bool dependent(const Program& program, ActorId a_actor, const Action& a, ActorId b_actor, const Action& b) {
  if (a_actor == b_actor) return true;
  if (a.kind == ActionKind::Fail || b.kind == ActionKind::Fail) return true;
  if (a.kind == ActionKind::LocalStep || b.kind == ActionKind::LocalStep) return false;

  if (is_wait(a.kind) && is_post(b.kind)) return wait_vs_post(program, a, b_actor, b);
  if (is_wait(b.kind) && is_post(a.kind)) return wait_vs_post(program, b, a_actor, a);
  if (is_wait(a.kind) || is_wait(b.kind)) return false;

  if (!a.object || !b.object || *a.object != *b.object) return false;
  switch (a.object->kind) {
    case ObjectKind::Mailbox:
      return a.kind == b.kind;
    case ObjectKind::Mutex:
      // An async lock only appends to the queue tail; it commutes with the
      // head's wait and unlock.
      return (a.kind == ActionKind::MutexAsyncLock) == (b.kind == ActionKind::MutexAsyncLock);
    case ObjectKind::Semaphore:
      return !(a.kind == ActionKind::SemRelease && b.kind == ActionKind::SemRelease);
    case ObjectKind::Barrier:
      if (a.kind != b.kind) return true;
      if (a.kind == ActionKind::BarrierAsyncArrive) return !program.barriers()[a.object->index].lockstep;
      return false;
  }
  return true;
}

DependencyTable::DependencyTable(const Program& program)
    : program_(&program), size_(program.total_statements()), matrix_(size_ * size_, false) {
  for (std::size_t a = 0; a < program.actor_count(); ++a) {
    for (std::size_t b = 0; b < program.actor_count(); ++b) {
      const auto& sa = program.statements(actor_at(a));
      const auto& sb = program.statements(actor_at(b));
      for (std::uint32_t i = 0; i < sa.size(); ++i) {
        for (std::uint32_t j = 0; j < sb.size(); ++j) {
          matrix_[program.global_index(actor_at(a), i) * size_ + program.global_index(actor_at(b), j)] =
              rfsmc::dependent(program, actor_at(a), sa[i], actor_at(b), sb[j]);
        }
      }
    }
  }
}

}  // namespace rfsmc
