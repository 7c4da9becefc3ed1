#pragma once

#include <deque>
#include <initializer_list>
#include <set>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rfsmc/bench.hpp"
#include "rfsmc/dependency.hpp"
#include "rfsmc/dsl.hpp"
#include "rfsmc/explorer.hpp"
#include "rfsmc/happens_before.hpp"
#include "rfsmc/oracle.hpp"
#include "rfsmc/program.hpp"
#include "rfsmc/simulator.hpp"

namespace rfsmc::test {

inline Program fig1() { return bench::mpi_any(0); }

inline ActorId id(const Program& p, std::string_view name) { return *p.find_actor(name); }

inline std::vector<ActorId> seq(const Program& p, std::initializer_list<std::string_view> names) {
  std::vector<ActorId> out;
  for (auto n : names) out.push_back(id(p, n));
  return out;
}

inline Execution exec(const Program& p, std::initializer_list<std::string_view> names) {
  const auto s = seq(p, names);
  return Execution::from_actors(p, s);
}

/// n actors S0..S(n-1), each sending once to mailbox m.
inline Program senders(std::uint32_t n) { return bench::factorial_bench(n); }

inline std::set<std::vector<ActorId>> oracle_keys(const Program& p) {
  std::set<std::vector<ActorId>> out;
  for (const auto& [k, o] : oracle::class_census(p).classes) out.insert(k);
  return out;
}

struct Explored {
  std::set<TraceKey> keys;
  std::size_t duplicates = 0;
  Verdict verdict;
};

inline Explored explore_keys(const Program& p, Strategy strategy, bool gc = true) {
  ExploreOptions o;
  o.strategy = strategy;
  o.stop_at_first_bug = false;
  o.record_runs = true;
  o.gc = gc;
  Explorer ex(p, o);
  Explored out;
  out.verdict = ex.run();
  const DependencyTable deps(p);
  for (const auto& r : ex.runs())
    if (!out.keys.insert(trace_key(deps, r.execution)).second) ++out.duplicates;
  return out;
}

/// Every reachable state of a program, breadth-first.
inline std::vector<SimState> reachable_states(const Program& p) {
  std::unordered_set<SimState, SimStateHash> seen;
  std::deque<SimState> todo{initial_state(p)};
  std::vector<SimState> out;
  seen.insert(todo.front());
  while (!todo.empty()) {
    SimState s = std::move(todo.front());
    todo.pop_front();
    enabled(p, s).for_each([&](ActorId a) {
      SimState t = step(p, s, a);
      if (seen.insert(t).second) todo.push_back(t);
    });
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rfsmc::test
