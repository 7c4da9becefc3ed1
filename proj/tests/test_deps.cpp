#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace rfsmc;
using namespace rfsmc::test;

namespace {

bool dep_stmt(const Program& p, std::string_view a, std::uint32_t i, std::string_view b, std::uint32_t j) {
  const ActorId x = id(p, a), y = id(p, b);
  return dependent(p, x, p.action(x, i), y, p.action(y, j));
}

// Maximal runs of small random programs, each at most 12 transitions long.
std::vector<std::pair<Program, std::vector<ActorId>>> sample_runs(std::uint64_t programs, std::size_t per_program) {
  std::vector<std::pair<Program, std::vector<ActorId>>> out;
  for (std::uint64_t seed = 0; seed < programs; ++seed) {
    Program p = bench::random_program(seed);
    const auto runs = oracle::enumerate_all(p);
    const std::size_t stride = std::max<std::size_t>(1, runs.size() / per_program);
    for (std::size_t i = 0; i < runs.size(); i += stride) out.emplace_back(p, runs[i].actors);
  }
  return out;
}

}  // namespace

TEST_SUITE("deps") {
  TEST_CASE("dependent: table examples") {
    const Program p = parse_program(
        "actors 2\nmailbox m0\nmutex mu1\nmutex mu2\n"
        "actor A:\n  send m0\n  lock mu1\n  unlock mu1\n"
        "actor B:\n  send m0\n  recv m0 -> r\n  wait r\n  lock mu2\n  unlock mu2\n");
    CHECK(dep_stmt(p, "A", 0, "B", 0));        // two sends to the same mailbox
    CHECK_FALSE(dep_stmt(p, "A", 0, "B", 1));  // send vs receive
    CHECK_FALSE(dep_stmt(p, "A", 1, "B", 3));  // async locks on different mutexes
    CHECK(dep_stmt(p, "A", 0, "B", 2));        // a wait vs a send that could match
  }

  TEST_CASE("dependent: mutex, semaphore, barrier, local, fail") {
    const Program p = parse_program(
        "actors 2\nmutex mu\nsemaphore s tokens 1\nbarrier b size 2\n"
        "actor A:\n  lock mu\n  unlock mu\n  acquire s\n  release s\n  barrier b\n  local\n  fail\n"
        "actor B:\n  lock mu\n  unlock mu\n  acquire s\n  release s\n  barrier b\n  local\n");
    CHECK(dep_stmt(p, "A", 0, "B", 0));        // async lock vs async lock
    CHECK_FALSE(dep_stmt(p, "A", 0, "B", 1));  // async lock vs wait
    CHECK_FALSE(dep_stmt(p, "A", 0, "B", 2));  // async lock vs unlock
    CHECK(dep_stmt(p, "A", 1, "B", 2));        // wait vs unlock
    CHECK(dep_stmt(p, "A", 3, "B", 3));        // acquire vs acquire
    CHECK(dep_stmt(p, "A", 4, "B", 5));        // sem wait vs release
    CHECK_FALSE(dep_stmt(p, "A", 5, "B", 5));  // release vs release
    CHECK_FALSE(dep_stmt(p, "A", 6, "B", 6));  // lockstep arrivals
    CHECK(dep_stmt(p, "A", 6, "B", 7));        // arrive vs barrier wait
    CHECK_FALSE(dep_stmt(p, "A", 8, "B", 8));  // local steps
    CHECK(dep_stmt(p, "A", 9, "B", 8));        // fail vs everything
  }

  TEST_CASE("dependent: symmetric") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Program p = bench::random_program(seed);
      for (std::size_t a = 0; a < p.actor_count(); ++a)
        for (std::size_t b = 0; b < p.actor_count(); ++b)
          for (const auto& x : p.statements(actor_at(a)))
            for (const auto& y : p.statements(actor_at(b)))
              CHECK(dependent(p, actor_at(a), x, actor_at(b), y) == dependent(p, actor_at(b), y, actor_at(a), x));
    }
  }

  TEST_CASE("happens_before: the two sends and the receive/wait pair are ordered") {
    const Program p = fig1();
    const DependencyTable deps(p);
    const HbRelation hb(deps, exec(p, {"P1", "P2", "P3", "P3"}));
    CHECK(hb.ordered(1, 2));
    CHECK(hb.ordered(3, 4));
    CHECK_FALSE(hb.ordered(2, 1));
  }

  TEST_CASE("happens_before: all-independent execution keeps only program order") {
    const Program p = parse_program("actors 2\nmailbox m0\nmailbox m1\nactor A:\n  send m0\n  local\nactor B:\n  send m1\n  local\n");
    const DependencyTable deps(p);
    const Execution e = exec(p, {"A", "B", "A", "B"});
    const HbRelation hb(deps, e);
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = i + 1; j <= 4; ++j) CHECK(hb.ordered(i, j) == (e.at(i).actor == e.at(j).actor));
  }

  TEST_CASE("happens_before: equals the Floyd-Warshall closure and is a strict partial order") {
    for (const auto& [p, run] : sample_runs(60, 6)) {
      const DependencyTable deps(p);
      const Execution e = Execution::from_actors(p, run);
      const HbRelation hb(deps, e);
      const auto closure = oracle::hb_closure(p, run);
      const std::size_t n = e.size();
      for (std::size_t i = 1; i <= n; ++i) {
        CHECK_FALSE(hb.ordered(i, i));
        for (std::size_t j = i + 1; j <= n; ++j) {
          CHECK(hb.ordered(i, j) == closure[i - 1][j - 1]);
          CHECK_FALSE(hb.ordered(j, i));
          if (e.at(i).actor == e.at(j).actor) CHECK(hb.ordered(i, j));
          for (std::size_t k = j + 1; k <= n; ++k)
            if (hb.ordered(i, j) && hb.ordered(j, k)) CHECK(hb.ordered(i, k));
        }
      }
    }
  }

  TEST_CASE("trace_key: adjacent swaps") {
    const Program p = fig1();
    const DependencyTable deps(p);
    // P3's receive is independent of P2's send.
    CHECK(trace_key(deps, exec(p, {"P1", "P2", "P3", "P3"})) == trace_key(deps, exec(p, {"P1", "P3", "P2", "P3"})));
    CHECK(trace_key(deps, exec(p, {"P1", "P2", "P3"})) != trace_key(deps, exec(p, {"P2", "P1", "P3"})));
  }

  TEST_CASE("trace_key: respects equivalence under legal adjacent swaps") {
    for (const auto& [p, run] : sample_runs(60, 4)) {
      const DependencyTable deps(p);
      const Execution e = Execution::from_actors(p, run);
      const TraceKey key = trace_key(deps, e);
      for (std::size_t i = 1; i < e.size(); ++i) {
        if (e.at(i).actor == e.at(i + 1).actor) continue;
        std::vector<ActorId> swapped = run;
        std::swap(swapped[i - 1], swapped[i]);
        bool legal = true;
        try {
          replay(p, swapped);
        } catch (const ReplayError&) {
          legal = false;
        }
        if (!deps.dependent(e.at(i), e.at(i + 1))) {
          REQUIRE(legal);
          CHECK(trace_key(deps, Execution::from_actors(p, swapped)) == key);
        } else if (legal) {
          CHECK(trace_key(deps, Execution::from_actors(p, swapped)) != key);
        }
      }
    }
  }

  TEST_CASE("trace_key: distinct keys equal the pairwise-equivalence class count") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Program p = bench::random_program(seed);
      const DependencyTable deps(p);
      std::set<TraceKey> keys;
      for (const auto& r : oracle::enumerate_all(p)) keys.insert(trace_key(deps, Execution::from_actors(p, r.actors)));
      CHECK(keys.size() == oracle::count_classes_pairwise(p));
    }
    const Program f = fig1();
    const DependencyTable deps(f);
    std::set<TraceKey> keys;
    for (const auto& r : oracle::enumerate_all(f)) keys.insert(trace_key(deps, Execution::from_actors(f, r.actors)));
    CHECK(keys.size() == oracle::count_classes_pairwise(f));
  }

  TEST_CASE("weak_initials: examples") {
    SUBCASE("first element of w") {
      const Program p = fig1();
      const DependencyTable deps(p);
      const ActorSet wi = weak_initials(deps, Execution{}, seq(p, {"P2"}));
      CHECK(wi.contains(id(p, "P2")));
      CHECK_FALSE(wi.contains(id(p, "P1")));  // its send conflicts with P2's
      CHECK(wi.contains(id(p, "P3")));        // a receive commutes with a send
    }
    SUBCASE("independent actors") {
      const Program p = parse_program("actors 2\nmailbox m0\nmailbox m1\nactor A:\n  send m0\nactor B:\n  send m1\n");
      const DependencyTable deps(p);
      CHECK(weak_initials(deps, Execution{}, seq(p, {"B"})) == ActorSet{id(p, "A"), id(p, "B")});
    }
    SUBCASE("dependent predecessor excludes p") {
      const Program p = fig1();
      const DependencyTable deps(p);
      const ActorSet wi = weak_initials(deps, Execution{}, seq(p, {"P2", "P3", "P3"}));
      CHECK_FALSE(wi.contains(id(p, "P1")));
      CHECK(wi.contains(id(p, "P2")));
    }
    SUBCASE("actor occurring later in w but preceded by a conflict") {
      const Program p = fig1();
      const DependencyTable deps(p);
      // P2's send precedes P1's in w, so P1 is not an initial.
      CHECK_FALSE(weak_initials(deps, Execution{}, seq(p, {"P2", "P1"})).contains(id(p, "P1")));
    }
  }

  TEST_CASE("is_weak_initial agrees with weak_initials") {
    const Program p = fig1();
    const DependencyTable deps(p);
    const std::vector<std::uint32_t> pcs{0, 0, 0};
    const auto w = seq(p, {"P2", "P3", "P3"});
    const ActorSet wi = weak_initials(deps, Execution{}, w);
    for (ActorId a : seq(p, {"P1", "P2", "P3"})) CHECK(is_weak_initial(deps, pcs, a, w) == wi.contains(a));
  }

  TEST_CASE("notdep: examples") {
    SUBCASE("last index") {
      const Program p = fig1();
      const DependencyTable deps(p);
      const Execution e = exec(p, {"P1", "P2", "P3", "P3"});
      CHECK(notdep(HbRelation(deps, e), e, 4).empty());
    }
    SUBCASE("fully independent suffix") {
      const Program p = parse_program("actors 2\nmailbox m0\nmailbox m1\nactor A:\n  send m0\nactor B:\n  send m1\n  local\n");
      const DependencyTable deps(p);
      const Execution e = exec(p, {"A", "B", "B"});
      CHECK(notdep(HbRelation(deps, e), e, 1) == seq(p, {"B", "B"}));
    }
    SUBCASE("after P1's send, matches the closure oracle") {
      const Program p = fig1();
      const DependencyTable deps(p);
      const auto run = seq(p, {"P1", "P2", "P3", "P3"});
      const Execution e = Execution::from_actors(p, run);
      const auto closure = oracle::hb_closure(p, run);
      std::vector<ActorId> expected;
      for (std::size_t k = 2; k <= e.size(); ++k)
        if (!closure[0][k - 1]) expected.push_back(e.at(k).actor);
      CHECK(notdep(HbRelation(deps, e), e, 1) == expected);
      CHECK(expected == seq(p, {"P3"}));
    }
  }

  TEST_CASE("reversible_races: the two sends race") {
    const Program p = fig1();
    const DependencyTable deps(p);
    const auto races = reversible_races(deps, exec(p, {"P1", "P2", "P3", "P3"}));
    CHECK(std::find(races.begin(), races.end(), Race{1, 2}) != races.end());
  }

  TEST_CASE("reversible_races: single actor has none") {
    const Program p = parse_program("actors 1\nmailbox m\nactor A:\n  send m -> s\n  recv m -> r\n  wait s\n  wait r\n");
    const DependencyTable deps(p);
    CHECK(reversible_races(deps, exec(p, {"A", "A", "A", "A"})).empty());
  }

  TEST_CASE("reversible_races: lock/unlock pair races only on the async locks") {
    const Program p = parse_program("actors 2\nmutex mu\nactor A:\n  lock mu\n  unlock mu\nactor B:\n  lock mu\n  unlock mu\n");
    const DependencyTable deps(p);
    const auto a_first = seq(p, {"A", "A", "A", "B", "B", "B"});
    const auto races = reversible_races(deps, Execution::from_actors(p, a_first));
    CHECK(races == std::vector<Race>{{1, 4}});
    // Inverting the race yields the other class.
    const auto b_first = seq(p, {"B", "B", "B", "A", "A", "A"});
    CHECK_FALSE(oracle::equivalent(p, a_first, b_first));
    CHECK(oracle::count_classes(p) == 2);
  }

  TEST_CASE("reversible_races: a send that enables a wait is not reversible") {
    const Program p = parse_program("actors 2\nmailbox m\nactor A:\n  send m\nactor B:\n  recv m -> r\n  wait r\n");
    const DependencyTable deps(p);
    CHECK(reversible_races(deps, exec(p, {"B", "A", "B"})).empty());
  }

  TEST_CASE("reversible_races: every race satisfies the definition") {
    for (const auto& [p, run] : sample_runs(60, 4)) {
      const DependencyTable deps(p);
      const Execution e = Execution::from_actors(p, run);
      const HbRelation hb(deps, e);
      for (const Race& r : reversible_races(deps, e, hb)) {
        CHECK(r.i < r.j);
        CHECK(e.at(r.i).actor != e.at(r.j).actor);
        CHECK(deps.dependent(e.at(r.i), e.at(r.j)));
        for (std::size_t k = r.i + 1; k < r.j; ++k) CHECK_FALSE((hb.ordered(r.i, k) && hb.ordered(k, r.j)));
        std::vector<ActorId> f;
        for (std::size_t k = 1; k < r.i; ++k) f.push_back(e.at(k).actor);
        for (std::size_t k = r.i + 1; k < r.j; ++k)
          if (!hb.ordered(r.i, k)) f.push_back(e.at(k).actor);
        const SimState s = replay(p, f);
        CHECK(is_enabled(p, s, e.at(r.j).actor));
        CHECK(s.pc[index_of(e.at(r.j).actor)] == e.at(r.j).stmt);
      }
    }
  }

  TEST_CASE("validity: independent enabled pairs commute on benchmark state spaces") {
    for (const Program& p : {bench::mpi_any(0), bench::mpi_any(1), bench::philosophers_mutex(2),
                             bench::philosophers_semaphore(2), bench::busy_wait(1)}) {
      const DependencyTable deps(p);
      for (const SimState& s : reachable_states(p)) {
        const auto en = enabled(p, s).to_vector();
        for (ActorId a : en)
          for (ActorId b : en) {
            if (a >= b || deps.dependent(a, s.pc[index_of(a)], b, s.pc[index_of(b)])) continue;
            const SimState sa = step(p, s, a), sb = step(p, s, b);
            REQUIRE(is_enabled(p, sa, b));
            REQUIRE(is_enabled(p, sb, a));
            CHECK(step(p, sa, b) == step(p, sb, a));
          }
      }
    }
  }
}
