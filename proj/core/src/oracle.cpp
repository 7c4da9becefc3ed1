#include "rfsmc/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rfsmc/dependency.hpp"

namespace rfsmc::oracle {

namespace {

struct Event {
  ActorId actor{};
  std::uint32_t stmt = 0;
};

std::vector<Event> events_of(std::span<const ActorId> actors, std::size_t actor_count) {
  std::vector<std::uint32_t> pc(actor_count, 0);
  std::vector<Event> out;
  out.reserve(actors.size());
  for (ActorId a : actors) out.push_back({a, pc.at(index_of(a))++});
  return out;
}

bool direct(const Program& program, const Event& a, const Event& b) {
  if (a.actor == b.actor) return true;
  return dependent(program, a.actor, program.action(a.actor, a.stmt), b.actor, program.action(b.actor, b.stmt));
}

void enumerate(const Program& program, const SimState& s, std::vector<ActorId>& path, std::vector<Run>& out,
               std::uint64_t max_runs) {
  const ActorSet en = enabled(program, s);
  if (en.empty()) {
    if (out.size() >= max_runs) throw BudgetExceeded("enumerate_all: more than " + std::to_string(max_runs) + " runs");
    out.push_back({path, classify(program, s)});
    return;
  }
  en.for_each([&](ActorId a) {
    path.push_back(a);
    enumerate(program, step(program, s, a), path, out, max_runs);
    path.pop_back();
  });
}

struct Census {
  const Program& program;
  std::uint64_t max_prefixes;
  std::set<std::vector<ActorId>> seen;
  ClassCensus result;

  void visit(const SimState& s, std::vector<ActorId>& path) {
    auto key = canonical(program, path);
    if (!seen.insert(key).second) return;
    if (++result.prefixes_visited > max_prefixes) throw BudgetExceeded("class_census: prefix budget exceeded");
    const ActorSet en = enabled(program, s);
    if (en.empty()) {
      result.classes.emplace(std::move(key), classify(program, s));
      return;
    }
    en.for_each([&](ActorId a) {
      path.push_back(a);
      visit(step(program, s, a), path);
      path.pop_back();
    });
  }
};

}  // namespace

std::vector<Run> enumerate_all(const Program& program, std::uint64_t max_runs) {
  std::vector<Run> out;
  std::vector<ActorId> path;
  enumerate(program, initial_state(program), path, out, max_runs);
  return out;
}

std::vector<std::vector<bool>> hb_closure(const Program& program, std::span<const ActorId> actors) {
  const auto ev = events_of(actors, program.actor_count());
  const std::size_t n = ev.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = direct(program, ev[i], ev[j]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

bool equivalent(const Program& program, std::span<const ActorId> a, std::span<const ActorId> b) {
  if (a.size() != b.size()) return false;
  const auto ea = events_of(a, program.actor_count());
  const auto eb = events_of(b, program.actor_count());
  // Position in b of each event of a, matched by (actor, statement).
  std::vector<std::size_t> pos_in_b(ea.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const auto it = std::find_if(eb.begin(), eb.end(), [&](const Event& e) {
      return e.actor == ea[i].actor && e.stmt == ea[i].stmt;
    });
    if (it == eb.end()) return false;
    pos_in_b[i] = static_cast<std::size_t>(it - eb.begin());
  }
  const auto ha = hb_closure(program, a);
  const auto hb = hb_closure(program, b);
  for (std::size_t i = 0; i < ea.size(); ++i)
    for (std::size_t j = i + 1; j < ea.size(); ++j) {
      const std::size_t bi = pos_in_b[i];
      const std::size_t bj = pos_in_b[j];
      if (ha[i][j] && !(bi < bj && hb[bi][bj])) return false;
      if (!ha[i][j] && bi < bj && hb[bi][bj]) return false;
    }
  return true;
}

std::vector<ActorId> canonical(const Program& program, std::span<const ActorId> actors) {
  const auto ev = events_of(actors, program.actor_count());
  const std::size_t n = ev.size();
  std::vector<bool> picked(n, false);
  std::vector<ActorId> out;
  out.reserve(n);
  while (out.size() < n) {
    std::size_t best = n;
    for (std::size_t e = 0; e < n; ++e) {
      if (picked[e]) continue;
      if (best != n && index_of(ev[e].actor) >= index_of(ev[best].actor)) continue;
      bool ready = true;
      for (std::size_t d = 0; d < e && ready; ++d)
        if (!picked[d] && direct(program, ev[d], ev[e])) ready = false;
      if (ready) best = e;
    }
    picked[best] = true;
    out.push_back(ev[best].actor);
  }
  return out;
}

ClassCensus class_census(const Program& program, std::uint64_t max_prefixes) {
  Census c{program, max_prefixes, {}, {}};
  std::vector<ActorId> path;
  c.visit(initial_state(program), path);
  return std::move(c.result);
}

std::uint64_t count_classes(const Program& program) { return class_census(program).classes.size(); }

std::size_t count_classes_pairwise(const Program& program, std::uint64_t max_runs) {
  const auto runs = enumerate_all(program, max_runs);
  std::vector<const std::vector<ActorId>*> reps;
  for (const auto& r : runs) {
    const bool known = std::any_of(reps.begin(), reps.end(),
                                   [&](const std::vector<ActorId>* rep) { return equivalent(program, *rep, r.actors); });
    if (!known) reps.push_back(&r.actors);
  }
  return reps.size();
}

bool CorrectnessOracle::has_correct_continuation(const SimState& state) {
  if (const auto it = memo_.find(state); it != memo_.end()) return it->second;
  const ActorSet en = enabled(*program_, state);
  bool result = false;
  if (en.empty()) {
    result = classify(*program_, state) == Outcome::Safe;
  } else {
    for (ActorId a : en.to_vector()) {
      if (has_correct_continuation(step(*program_, state, a))) {
        result = true;
        break;
      }
    }
  }
  memo_.emplace(state, result);
  return result;
}

bool CorrectnessOracle::has_correct_continuation(std::span<const ActorId> prefix) {
  return has_correct_continuation(replay(*program_, prefix));
}

std::size_t critical_transition(const Program& program, std::span<const ActorId> faulty) {
  CorrectnessOracle o(program);
  for (std::size_t k = faulty.size(); k-- > 0;)
    if (o.has_correct_continuation(faulty.first(k))) return k + 1;
  return 0;
}

}  // namespace rfsmc::oracle
