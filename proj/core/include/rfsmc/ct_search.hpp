#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfsmc/explorer.hpp"

namespace rfsmc {

struct CtReport {
  Execution faulty_execution;
  Outcome faulty_outcome = Outcome::Deadlock;
  /// 1-based index into faulty_execution; 0 is the start-transition case.
  std::size_t ct_index = 0;
  /// Indices i < ct_index with i -> ct_index.
  std::vector<std::size_t> causal_past;
  std::optional<Execution> correct_witness;
  /// sleep_nonempty[k]: the state after k transitions of the faulty run has a non-empty sleep set.
  std::vector<bool> sleep_nonempty;
  /// Number of leading states (k >= 1) with non-empty sleep sets (the S1 block).
  std::size_t s1_size = 0;
  /// Some deadlocked actor has no transition happens-before related to the CT.
  bool multi_cause = false;
  /// A budget ran out; ct_index is then a lower bound.
  bool inconclusive = false;
  std::uint64_t traces_during_ct = 0;
  std::uint64_t states_during_ct = 0;
  /// Explored classes already seen before the CT search started; 0 by optimality.
  std::uint64_t repeated_traces = 0;
};

/// Largest k such that the first k transitions of `e` form a
/// Mazurkiewicz prefix of `x`.
std::size_t prefix_depth(const DependencyTable& deps, const Execution& x, const Execution& e);

/// {i < index : i -> index}, 1-based.
std::vector<std::size_t> causal_past(const DependencyTable& deps, const Execution& execution, std::size_t index);

/// Runs the critical-transition search on an explorer that stopped at its
/// first bug. The explorer must run with gc = false and record_runs = true.
CtReport find_critical_transition(Explorer& explorer);

struct CtOutcome {
  Verdict verdict;
  std::optional<CtReport> report;
};
/// Explores until the first bug, then searches for its critical transition.
/// `report` is empty when no bug was found.
CtOutcome explore_with_ct(const Program& program, ExploreOptions options);

}  // namespace rfsmc
