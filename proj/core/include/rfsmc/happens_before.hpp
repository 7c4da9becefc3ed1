#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rfsmc/dependency.hpp"
#include "rfsmc/simulator.hpp"

namespace rfsmc {

/// Per-actor positions: entry b is the 1-based position of the latest
/// transition of actor b that happens before (or is) the owner, 0 if none.
class ClockVector {
 public:
  explicit ClockVector(std::size_t actors = 0) : c_(actors, 0) {}

  std::uint32_t operator[](ActorId a) const { return c_[index_of(a)]; }
  void set(ActorId a, std::uint32_t pos) { c_[index_of(a)] = pos; }
  void join(const ClockVector& o);
  std::size_t size() const { return c_.size(); }
  bool operator==(const ClockVector&) const = default;

 private:
  std::vector<std::uint32_t> c_;
};

/// Happens-before of one execution, computed by a vector-clock sweep.
class HbRelation {
 public:
  HbRelation(const DependencyTable& deps, const Execution& execution);

  std::size_t size() const { return actors_.size(); }
  /// i ->_E j for 1-based positions.
  bool ordered(std::size_t i, std::size_t j) const {
    return i < j && clocks_[j - 1][actors_[i - 1]] >= i;
  }
  const ClockVector& clock(std::size_t i) const { return clocks_.at(i - 1); }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

 private:
  std::vector<ActorId> actors_;
  std::vector<ClockVector> clocks_;
};

HbRelation happens_before(const DependencyTable& deps, const Execution& execution);

/// Canonical representative of a Mazurkiewicz trace: the lexicographically
/// least linearization (by actor index) of the happens-before order.
using TraceKey = std::vector<ActorId>;
TraceKey trace_key(const DependencyTable& deps, const Execution& execution);

/// Is `p` (assumed enabled where the program counters are `pcs`) a weak
/// initial of `w` executed from that point?
bool is_weak_initial(const DependencyTable& deps, std::span<const std::uint32_t> pcs, ActorId p,
                     std::span<const ActorId> w);

/// WI_prefix(w): enabled actors after `prefix` with no happens-before
/// predecessor in `w`.
ActorSet weak_initials(const DependencyTable& deps, const Execution& prefix, std::span<const ActorId> w);

/// Actors of the transitions after position i that do not happen after i.
std::vector<ActorId> notdep(const HbRelation& hb, const Execution& execution, std::size_t i);

struct Race {
  std::size_t i = 0;  // 1-based
  std::size_t j = 0;
  bool operator==(const Race&) const = default;
};

/// All reversible races of `execution`, ordered by (j, i).
std::vector<Race> reversible_races(const DependencyTable& deps, const Execution& execution, const HbRelation& hb);
std::vector<Race> reversible_races(const DependencyTable& deps, const Execution& execution);

}  // namespace rfsmc
