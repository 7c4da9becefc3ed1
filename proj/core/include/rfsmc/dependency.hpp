#pragma once

#include <cstdint>
#include <vector>

#include "rfsmc/program.hpp"
#include "rfsmc/simulator.hpp"

namespace rfsmc {

/// Static dependency between two action instances of distinct actors.
///
/// Two posts on the same mailbox conflict when they are of the same kind;
/// a send and a receive always commute. A Wait/WaitAll conflicts with every
/// opposite-kind post that could match one of its communications. On the same
/// mutex, two async locks conflict, and so do any two non-lock operations; an
/// async lock commutes with a wait or unlock. Operations on the same semaphore
/// conflict except two releases. Barrier arrivals conflict with waits, and with each other
/// only when more actors than the barrier size use it. Fail conflicts with
/// everything, LocalStep with nothing but Fail.
bool dependent(const Program& program, ActorId a_actor, const Action& a, ActorId b_actor, const Action& b);

/// Precomputed dependency matrix over all statements of a program.
/// Same-actor pairs are reported dependent (program order).
class DependencyTable {
 public:
  explicit DependencyTable(const Program& program);

  const Program& program() const { return *program_; }

  bool dependent(ActorId a, std::uint32_t a_stmt, ActorId b, std::uint32_t b_stmt) const {
    if (a == b) return true;
    return matrix_[program_->global_index(a, a_stmt) * size_ + program_->global_index(b, b_stmt)];
  }
  bool dependent(const Transition& a, const Transition& b) const {
    return dependent(a.actor, a.stmt, b.actor, b.stmt);
  }

 private:
  const Program* program_;
  std::size_t size_;
  std::vector<bool> matrix_;
};

}  // namespace rfsmc
