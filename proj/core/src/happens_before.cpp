#include "rfsmc/happens_before.hpp"

#include <algorithm>

namespace rfsmc {

void ClockVector::join(const ClockVector& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = std::max(c_[i], o.c_[i]);
}

HbRelation::HbRelation(const DependencyTable& deps, const Execution& e) {
  const std::size_t n = e.size();
  const std::size_t actors = deps.program().actor_count();
  actors_.reserve(n);
  clocks_.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const Transition& tj = e.at(j);
    ClockVector c(actors);
    for (std::size_t i = 1; i < j; ++i) {
      if (deps.dependent(e.at(i), tj)) c.join(clocks_[i - 1]);
    }
    c.set(tj.actor, static_cast<std::uint32_t>(j));
    actors_.push_back(tj.actor);
    clocks_.push_back(std::move(c));
  }
}

std::vector<std::pair<std::size_t, std::size_t>> HbRelation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 1; j <= size(); ++j)
    for (std::size_t i = 1; i < j; ++i)
      if (ordered(i, j)) out.emplace_back(i, j);
  return out;
}

HbRelation happens_before(const DependencyTable& deps, const Execution& execution) {
  return HbRelation(deps, execution);
}

TraceKey trace_key(const DependencyTable& deps, const Execution& e) {
  const HbRelation hb(deps, e);
  const std::size_t actors = deps.program().actor_count();
  std::vector<std::vector<std::uint32_t>> by_actor(actors);
  for (const auto& t : e.transitions()) by_actor[index_of(t.actor)].push_back(t.index);

  std::vector<std::size_t> next(actors, 0);
  std::vector<std::uint32_t> last_picked(actors, 0);
  TraceKey key;
  key.reserve(e.size());
  while (key.size() < e.size()) {
    bool progressed = false;
    for (std::size_t a = 0; a < actors && !progressed; ++a) {
      if (next[a] >= by_actor[a].size()) continue;
      const std::uint32_t pos = by_actor[a][next[a]];
      const ClockVector& c = hb.clock(pos);
      bool ready = true;
      for (std::size_t b = 0; b < actors && ready; ++b) {
        if (b != a && c[actor_at(b)] > last_picked[b]) ready = false;
      }
      if (ready) {
        key.push_back(actor_at(a));
        last_picked[a] = pos;
        ++next[a];
        progressed = true;
      }
    }
    if (!progressed) throw std::logic_error("trace_key: cyclic happens-before");
  }
  return key;
}

bool is_weak_initial(const DependencyTable& deps, std::span<const std::uint32_t> pcs, ActorId p,
                     std::span<const ActorId> w) {
  std::vector<std::uint32_t> pc(pcs.begin(), pcs.end());
  std::vector<Transition> ts;
  ts.reserve(w.size());
  for (ActorId a : w) ts.push_back({a, pc[index_of(a)]++, 0});

  const auto first = std::find(w.begin(), w.end(), p);
  if (first != w.end()) {
    const auto f = static_cast<std::size_t>(first - w.begin());
    for (std::size_t l = 0; l < f; ++l)
      if (deps.dependent(ts[l], ts[f])) return false;
    return true;
  }
  const Transition tp{p, pcs[index_of(p)], 0};
  return std::none_of(ts.begin(), ts.end(), [&](const Transition& t) { return deps.dependent(tp, t); });
}

ActorSet weak_initials(const DependencyTable& deps, const Execution& prefix, std::span<const ActorId> w) {
  const Program& program = deps.program();
  const auto actors = prefix.actors();
  const SimState s = replay(program, actors);
  ActorSet out;
  enabled(program, s).for_each([&](ActorId p) {
    if (is_weak_initial(deps, s.pc, p, w)) out.insert(p);
  });
  return out;
}

std::vector<ActorId> notdep(const HbRelation& hb, const Execution& e, std::size_t i) {
  std::vector<ActorId> out;
  for (std::size_t k = i + 1; k <= e.size(); ++k)
    if (!hb.ordered(i, k)) out.push_back(e.at(k).actor);
  return out;
}

std::vector<Race> reversible_races(const DependencyTable& deps, const Execution& e, const HbRelation& hb) {
  const Program& program = deps.program();
  std::vector<Race> races;
  // states_before[i-1] = pre(E, i)
  std::vector<SimState> states_before;
  states_before.reserve(e.size());
  SimState s = initial_state(program);
  for (const auto& t : e.transitions()) {
    states_before.push_back(s);
    step_in_place(program, s, t.actor);
  }

  for (std::size_t j = 2; j <= e.size(); ++j) {
    const Transition& tj = e.at(j);
    for (std::size_t i = 1; i < j; ++i) {
      const Transition& ti = e.at(i);
      if (ti.actor == tj.actor || !deps.dependent(ti, tj)) continue;
      bool intermediate = false;
      for (std::size_t k = i + 1; k < j && !intermediate; ++k)
        intermediate = hb.ordered(i, k) && hb.ordered(k, j);
      if (intermediate) continue;
      if (!always_firable(program.action(tj.actor, tj.stmt).kind)) {
        SimState f = states_before[i - 1];
        for (std::size_t k = i + 1; k < j; ++k)
          if (!hb.ordered(i, k)) step_in_place(program, f, e.at(k).actor);
        if (f.pc[index_of(tj.actor)] != tj.stmt || !is_enabled(program, f, tj.actor)) continue;
      }
      races.push_back({i, j});
    }
  }
  return races;
}

std::vector<Race> reversible_races(const DependencyTable& deps, const Execution& execution) {
  return reversible_races(deps, execution, HbRelation(deps, execution));
}

}  // namespace rfsmc
