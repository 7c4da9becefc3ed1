// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>

#include "helpers.hpp"
#include "rfsmc/ct_search.hpp"

using namespace rfsmc;
using namespace rfsmc::test;

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

struct Named {
  std::string name;
  Program program;
};

std::vector<Named> criterion1_set() {
  std::vector<Named> out;
  for (std::uint32_t k = 0; k <= 2; ++k) out.push_back({"mpi_any(" + std::to_string(k) + ")", bench::mpi_any(k)});
  for (std::uint32_t n = 2; n <= 3; ++n)
    out.push_back({"philosophers_mutex(" + std::to_string(n) + ")", bench::philosophers_mutex(n)});
  out.push_back({"philosophers_semaphore(2)", bench::philosophers_semaphore(2)});
  for (std::uint32_t n = 1; n <= 6; ++n)
    out.push_back({"factorial_bench(" + std::to_string(n) + ")", bench::factorial_bench(n)});
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    out.push_back({"random_program(" + std::to_string(seed) + ")", bench::random_program(seed)});
  return out;
}

class Checker {
 public:
  void fail(const std::string& what) {
    const std::lock_guard lock(mu_);
    if (failures_++ < 5) details_ << (details_.tellp() > 0 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string details() const { return details_.str(); }

 private:
  std::mutex mu_;
  std::size_t failures_ = 0;
  std::ostringstream details_;
};

bool g_all_pass = true;

void report(int n, bool pass, const std::string& detail, std::chrono::steady_clock::time_point start) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d: %s %s (%.1fs)\n", n, pass ? "PASS" : "FAIL", detail.c_str(), s);
  std::fflush(stdout);
  g_all_pass = g_all_pass && pass;
}

std::string strategy_name(StrategyKind k) { return std::string(to_string(k)); }

void criterion1(const std::vector<Named>& set) {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  parallel_for(set.size(), [&](std::size_t i) {
    const auto& [name, p] = set[i];
    const auto expected = oracle_keys(p);
    for (StrategyKind k : kAllStrategies)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = explore_keys(p, {k, seed});
        if (r.keys != expected || r.duplicates != 0 || r.verdict.stats.ssb_count != 0)
          c.fail(name + " " + strategy_name(k) + " seed " + std::to_string(seed));
      }
  });
  report(1, c.ok(), std::to_string(set.size()) + " programs x 4 strategies x 5 seeds match the oracle classes " + c.details(),
         start);
}

void criterion2() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::uint64_t fact = 1, seven = 0;
  for (std::uint32_t n = 1; n <= 7; ++n) {
    fact *= n;
    ExploreOptions o;
    o.stop_at_first_bug = false;
    const auto traces = explore(bench::factorial_bench(n), o).stats.traces_explored;
    if (traces != fact) c.fail("n=" + std::to_string(n) + " gave " + std::to_string(traces));
    if (n == 7) seven = traces;
  }
  report(2, c.ok(), "factorial_bench(7) traces=" + std::to_string(seven) + " " + c.details(), start);
}

std::vector<Named> faulty_benchmarks() {
  std::vector<Named> out;
  for (std::uint32_t k = 0; k <= 2; ++k) out.push_back({"mpi_any(" + std::to_string(k) + ")", bench::mpi_any(k)});
  for (std::uint32_t n = 2; n <= 4; ++n) {
    out.push_back({"philosophers_mutex(" + std::to_string(n) + ")", bench::philosophers_mutex(n)});
    out.push_back({"philosophers_semaphore(" + std::to_string(n) + ")", bench::philosophers_semaphore(n)});
  }
  return out;
}

void criterion3() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  const auto set = faulty_benchmarks();
  parallel_for(set.size(), [&](std::size_t i) {
    const auto& [name, p] = set[i];
    for (StrategyKind k : kAllStrategies)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ExploreOptions o;
        o.strategy = {k, seed};
        const Verdict v = explore(p, o);
        if (v.outcome != VerdictKind::Deadlock || !v.counterexample ||
            classify(p, Execution::from_actors(p, v.counterexample->actors())) != Outcome::Deadlock)
          c.fail(name + " " + strategy_name(k) + " seed " + std::to_string(seed));
      }
  });
  report(3, c.ok(), "deadlock found and replayed on " + std::to_string(set.size()) + " benchmarks " + c.details(), start);
}

void criterion4() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::vector<Named> set = faulty_benchmarks();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Program p = bench::random_program(seed);
    ExploreOptions o;
    if (explore(p, o).outcome != VerdictKind::AllSafe) set.push_back({"random_program(" + std::to_string(seed) + ")", std::move(p)});
  }
  std::atomic<std::size_t> checked{0};
  parallel_for(set.size(), [&](std::size_t i) {
    const auto& [name, p] = set[i];
    for (StrategyKind k : kAllStrategies)
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        ExploreOptions o;
        o.strategy = {k, seed};
        const auto out = explore_with_ct(p, o);
        if (!out.report) {
          c.fail(name + " no report");
          continue;
        }
        const std::size_t expected = oracle::critical_transition(p, out.report->faulty_execution.actors());
        if (out.report->ct_index != expected || out.report->inconclusive)
          c.fail(name + " " + strategy_name(k) + " seed " + std::to_string(seed) + " ct=" +
                 std::to_string(out.report->ct_index) + " oracle=" + std::to_string(expected));
        ++checked;
      }
  });
  for (std::uint32_t pad = 0; pad <= 5; ++pad) {
    const Program p = bench::mpi_any(0, pad);
    const ActorId p2 = id(p, "P2");
    for (StrategyKind k : kAllStrategies)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ExploreOptions o;
        o.strategy = {k, seed};
        const auto out = explore_with_ct(p, o);
        bool good = out.report && out.report->ct_index > 0;
        if (good) {
          const Transition& t = out.report->faulty_execution.at(out.report->ct_index);
          good = t.actor == p2 && p.action(t.actor, t.stmt).kind == ActionKind::AsyncSend;
        }
        if (!good) c.fail("padding " + std::to_string(pad) + " " + strategy_name(k));
        ++checked;
      }
  }
  report(4, c.ok(),
         std::to_string(checked.load()) + " CT searches agree with the oracle; padded CT is P2's send " + c.details(),
         start);
}

void criterion5() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (StrategyKind k : kAllStrategies) {
      ExploreOptions o;
      o.strategy = {k, n};
      const auto out = explore_with_ct(bench::all_faulty(n), o);
      if (!out.report || out.report->ct_index != 0) c.fail("all_faulty(" + std::to_string(n) + ") " + strategy_name(k));
    }
  report(5, c.ok(), "all_faulty(1..4) gives ct_index=0 " + c.details(), start);
}

struct Distribution {
  std::vector<std::uint64_t> v;
  double quantile(double q) const {
    // Linear interpolation between order statistics.
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return static_cast<double>(v[lo]) + (pos - static_cast<double>(lo)) * static_cast<double>(v[hi] - v[lo]);
  }
  double mean() const { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }
};

std::map<StrategyKind, Distribution> sweep(const Program& p, std::uint64_t first, std::uint64_t count) {
  std::vector<std::pair<StrategyKind, std::uint64_t>> jobs;
  for (StrategyKind k : kAllStrategies)
    for (std::uint64_t s = first; s < first + count; ++s) jobs.emplace_back(k, s);
  std::vector<std::uint64_t> result(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    ExploreOptions o;
    o.strategy = {jobs[i].first, jobs[i].second};
    result[i] = explore(p, o).stats.states_before_first_bug;
  });
  std::map<StrategyKind, Distribution> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) out[jobs[i].first].v.push_back(result[i]);
  for (auto& [k, d] : out) std::sort(d.v.begin(), d.v.end());
  return out;
}

void criterion6() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::uint64_t kFirstSeed = 100, kSeeds = 100;
  const auto phs = sweep(bench::philosophers_semaphore(3), kFirstSeed, kSeeds);
  const auto mpi = sweep(bench::mpi_any(3), kFirstSeed, kSeeds);
  auto med = [](const std::map<StrategyKind, Distribution>& m, StrategyKind k) { return m.at(k).quantile(0.5); };
  const bool a = med(phs, StrategyKind::RfsStep) < med(phs, StrategyKind::Dfs);
  const bool b = med(mpi, StrategyKind::RfsStep) < med(mpi, StrategyKind::Dfs);
  const double p75 = mpi.at(StrategyKind::RfsStep).quantile(0.75);
  const bool c = p75 < med(mpi, StrategyKind::UniformDfs);
  std::ostringstream d;
  d << "seeds " << kFirstSeed << ".." << kFirstSeed + kSeeds - 1 << "; philosophers_semaphore(3) median rfs-step "
    << med(phs, StrategyKind::RfsStep) << " vs dfs " << med(phs, StrategyKind::Dfs) << "; mpi_any(3) median rfs-step "
    << med(mpi, StrategyKind::RfsStep) << " vs dfs " << med(mpi, StrategyKind::Dfs) << "; rfs-step p75 " << p75
    << " vs uniform-dfs median " << med(mpi, StrategyKind::UniformDfs) << " (mean "
    << mpi.at(StrategyKind::UniformDfs).mean() << ")";
  report(6, a && b && c, d.str(), start);
}

void criterion7(const std::vector<Named>& set) {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  parallel_for(set.size(), [&](std::size_t i) {
    const auto& [name, p] = set[i];
    for (StrategyKind k : kAllStrategies) {
      const auto on = explore_keys(p, {k, 3}, true);
      const auto off = explore_keys(p, {k, 3}, false);
      if (on.keys != off.keys || on.verdict.outcome != off.verdict.outcome) c.fail(name + " " + strategy_name(k));
    }
  });
  ExploreOptions o;
  o.stop_at_first_bug = false;
  o.gc = true;
  const auto peak_on = explore(bench::philosophers_mutex(3), o).stats.peak_tree_nodes;
  o.gc = false;
  const auto peak_off = explore(bench::philosophers_mutex(3), o).stats.peak_tree_nodes;
  if (peak_on >= peak_off) c.fail("peak not reduced");
  report(7, c.ok(),
         "equal keys and verdicts; philosophers_mutex(3) peak_tree_nodes " + std::to_string(peak_on) + " (gc) vs " +
             std::to_string(peak_off) + " " + c.details(),
         start);
}

std::string stats_without_wall_time(const ExplorationStats& s) {
  std::ostringstream os;
  os << s.traces_explored << ' ' << s.states_visited << ' ' << s.states_before_first_bug << ' ' << s.ssb_count << ' '
     << s.peak_tree_nodes;
  return os.str();
}

void criterion8() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  const std::vector<Named> set{{"mpi_any(2)", bench::mpi_any(2)},
                               {"philosophers_mutex(3)", bench::philosophers_mutex(3)},
                               {"philosophers_semaphore(3)", bench::philosophers_semaphore(3)},
                               {"busy_wait(2)", bench::busy_wait(2)},
                               {"random_program(7)", bench::random_program(7)}};
  for (const auto& [name, p] : set)
    for (StrategyKind k : kAllStrategies)
      for (bool stop : {true, false}) {
        ExploreOptions o;
        o.strategy = {k, 77};
        o.stop_at_first_bug = stop;
        o.record_transcript = true;
        const Verdict a = explore(p, o), b = explore(p, o);
        if (a.transcript != b.transcript || stats_without_wall_time(a.stats) != stats_without_wall_time(b.stats) ||
            a.outcome != b.outcome)
          c.fail(name + " " + strategy_name(k));
      }
  report(8, c.ok(), "transcripts and stats identical across two runs " + c.details(), start);
}

void criterion9() {
  const auto start = std::chrono::steady_clock::now();
  Checker c;
  std::size_t states = 0;
  for (const Program& p : {bench::mpi_any(0), bench::philosophers_mutex(2)}) {
    const DependencyTable deps(p);
    for (const SimState& s : reachable_states(p)) {
      ++states;
      const auto en = enabled(p, s).to_vector();
      for (ActorId a : en) {
        const SimState sa = step(p, s, a);
        for (ActorId b : en) {
          if (a == b) continue;
          if (!sa.crashed && !is_enabled(p, sa, b)) c.fail("persistency");
          if (a > b || deps.dependent(a, s.pc[index_of(a)], b, s.pc[index_of(b)])) continue;
          const SimState sb = step(p, s, b);
          if (!is_enabled(p, sa, b) || !is_enabled(p, sb, a) || step(p, sa, b) != step(p, sb, a)) c.fail("commutation");
        }
      }
    }
  }
  report(9, c.ok(), std::to_string(states) + " reachable states checked " + c.details(), start);
}

}  // namespace

int main() {
  const auto set = criterion1_set();
  criterion1(set);
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7(set);
  criterion8();
  criterion9();
  return g_all_pass ? 0 : 1;
}
