#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rfsmc/program.hpp"
#include "rfsmc/simulator.hpp"

namespace rfsmc::oracle {

/// Brute-force reference implementations. They rely on the simulator and the
/// pairwise dependency predicate only.

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Run {
  std::vector<ActorId> actors;
  Outcome outcome = Outcome::Safe;
};

/// Every maximal execution of the unreduced LTS, depth-first, smallest actor first.
std::vector<Run> enumerate_all(const Program& program, std::uint64_t max_runs = 1'000'000);

/// Happens-before closure (Floyd–Warshall): m[i][j] for 0-based i < j.
std::vector<std::vector<bool>> hb_closure(const Program& program, std::span<const ActorId> actors);

/// Same events (per actor) with the same happens-before order.
bool equivalent(const Program& program, std::span<const ActorId> a, std::span<const ActorId> b);

/// Lexicographically least linearization, computed from direct dependencies.
std::vector<ActorId> canonical(const Program& program, std::span<const ActorId> actors);

struct ClassCensus {
  /// Canonical key of every Mazurkiewicz class of maximal executions, with its outcome.
  std::map<std::vector<ActorId>, Outcome> classes;
  /// Prefix classes visited by the pruned search.
  std::uint64_t prefixes_visited = 0;
};

/// Depth-first search over prefixes that skips any prefix whose class was seen.
ClassCensus class_census(const Program& program, std::uint64_t max_prefixes = 50'000'000);
std::uint64_t count_classes(const Program& program);

/// Partition of enumerate_all's output by pairwise equivalence (no canonical keys).
std::size_t count_classes_pairwise(const Program& program, std::uint64_t max_runs = 200'000);

/// Does some maximal continuation of `prefix` end Safe?
class CorrectnessOracle {
 public:
  explicit CorrectnessOracle(const Program& program) : program_(&program) {}
  bool has_correct_continuation(std::span<const ActorId> prefix);
  bool has_correct_continuation(const SimState& state);
  /// Do all maximal continuations of `prefix` end faulty?
  bool all_faulty(std::span<const ActorId> prefix) { return !has_correct_continuation(prefix); }

 private:
  const Program* program_;
  std::unordered_map<SimState, bool, SimStateHash> memo_;
};

/// Critical transition of a faulty maximal execution, 1-based; 0 when no
/// correct execution exists at all.
std::size_t critical_transition(const Program& program, std::span<const ActorId> faulty);

}  // namespace rfsmc::oracle
