#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "rfsmc/bench.hpp"
#include "rfsmc/ct_search.hpp"
#include "rfsmc/dsl.hpp"
#include "rfsmc/explorer.hpp"
#include "rfsmc/oracle.hpp"
#include "rfsmc/report.hpp"

namespace {

using namespace rfsmc;

constexpr int kExitSafe = 0;
constexpr int kExitBug = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Program load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_program(ss.str());
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

int exit_code(VerdictKind v) {
  switch (v) {
    case VerdictKind::AllSafe: return kExitSafe;
    case VerdictKind::Deadlock:
    case VerdictKind::Crash: return kExitBug;
    case VerdictKind::Exhausted: return kExitBudget;
  }
  return kExitUsage;
}

struct VerifyArgs {
  std::string file;
  std::string strategy = "dfs";
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool ct = false;
  bool no_gc = false;
  bool transcript = false;
  std::optional<std::uint64_t> max_traces;
  std::optional<std::uint64_t> max_states;
  std::optional<double> timeout_s;
  std::string format = "text";
};

StrategyKind strategy_of(const std::string& name) {
  const auto k = parse_strategy(name);
  if (!k) throw UsageError("unknown strategy '" + name + "'");
  return *k;
}

int run_verify(const VerifyArgs& a) {
  if (a.ct && a.exhaustive) throw UsageError("--ct stops at the first bug and cannot be combined with --exhaustive");
  const Program program = load(a.file);
  ExploreOptions opts;
  opts.strategy = {strategy_of(a.strategy), a.seed};
  opts.budget = {a.max_traces, a.max_states, a.timeout_s};
  opts.stop_at_first_bug = !a.exhaustive;
  opts.gc = !a.no_gc;
  opts.record_transcript = a.transcript;
  const RunInfo info{a.file, opts.strategy, a.exhaustive};

  Verdict verdict;
  std::optional<CtReport> ct;
  if (a.ct) {
    auto out = explore_with_ct(program, opts);
    verdict = std::move(out.verdict);
    ct = std::move(out.report);
  } else {
    verdict = explore(program, opts);
  }
  if (a.format == "json") std::cout << verdict_json(program, info, verdict, ct);
  else std::cout << verdict_text(program, info, verdict, ct);
  if (a.transcript && a.format != "json")
    for (const auto& line : verdict.transcript) std::cout << "# " << line << '\n';
  return exit_code(verdict.outcome);
}

int run_count(const std::string& file, bool use_oracle, const std::string& format) {
  const Program program = load(file);
  Verdict v;
  if (use_oracle) {
    const auto census = oracle::class_census(program);
    v.stats.traces_explored = census.classes.size();
    v.stats.states_visited = census.prefixes_visited;
    for (const auto& [key, outcome] : census.classes) {
      if (outcome == Outcome::Safe) continue;
      if (v.outcome == VerdictKind::AllSafe || outcome == Outcome::Deadlock)
        v.outcome = outcome == Outcome::Crash ? VerdictKind::Crash : VerdictKind::Deadlock;
    }
  } else {
    ExploreOptions opts;
    opts.stop_at_first_bug = false;
    v = explore(program, opts);
  }
  const RunInfo info{file, {}, true};
  if (format == "json") {
    std::cout << verdict_json(program, info, v);
  } else {
    std::cout << "traces=" << v.stats.traces_explored << '\n' << stats_text(v);
  }
  return kExitSafe;
}

int run_emit(const std::string& name, std::uint32_t scale, const std::string& out) {
  const auto program = bench::make(name, scale);
  if (!program) throw UsageError("unknown benchmark '" + name + "'");
  const std::string text = emit_program(*program);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f << text;
  }
  return kExitSafe;
}

struct SweepArgs {
  std::string name;
  std::uint32_t scale = 0;
  std::uint64_t seeds = 10;
  std::uint64_t first_seed = 0;
  std::vector<std::string> strategies = {"dfs", "uniform-dfs", "rfs-step", "rfs-branch"};
  unsigned threads = 0;
  std::optional<std::uint64_t> max_states;
};

int run_sweep(const SweepArgs& a) {
  const auto program = bench::make(a.name, a.scale);
  if (!program) throw UsageError("unknown benchmark '" + a.name + "'");
  std::vector<StrategyKind> kinds;
  for (const auto& s : a.strategies) kinds.push_back(strategy_of(s));

  struct Job {
    StrategyKind kind;
    std::uint64_t seed;
    Verdict verdict;
  };
  std::vector<Job> jobs;
  for (StrategyKind k : kinds)
    for (std::uint64_t s = 0; s < a.seeds; ++s) jobs.push_back({k, a.first_seed + s, {}});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      ExploreOptions opts;
      opts.strategy = {jobs[i].kind, jobs[i].seed};
      opts.budget.max_states = a.max_states;
      jobs[i].verdict = explore(*program, opts);
    }
  };
  const unsigned n = a.threads ? a.threads : std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::cout << "seed,strategy,states_before_first_bug,verdict\n";
  for (const auto& j : jobs)
    std::cout << j.seed << ',' << to_string(j.kind) << ',' << j.verdict.stats.states_before_first_bug << ','
              << to_string(j.verdict.outcome) << '\n';
  return kExitSafe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfsmc: stateless model checker for actor programs"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Explore a program and report its verdict");
  verify->add_option("file", va.file, "Program file")->required();
  verify->add_option("--strategy", va.strategy, "dfs | uniform-dfs | rfs-step | rfs-branch");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_flag("--exhaustive", va.exhaustive, "Keep exploring after the first bug");
  verify->add_flag("--ct", va.ct, "Search the critical transition of the first bug");
  verify->add_flag("--no-gc", va.no_gc, "Keep the whole exploration tree");
  verify->add_flag("--transcript", va.transcript, "Print the exploration transcript");
  verify->add_option("--max-traces", va.max_traces, "Stop after this many maximal executions");
  verify->add_option("--max-states", va.max_states, "Stop after this many states");
  verify->add_option("--timeout-s", va.timeout_s, "Wall-clock limit in seconds");
  verify->add_option("--format", va.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string count_file;
  bool use_oracle = false;
  std::string count_format = "text";
  auto* count = app.add_subcommand("count-traces", "Count Mazurkiewicz traces");
  count->add_option("file", count_file, "Program file")->required();
  count->add_flag("--oracle", use_oracle, "Use the brute-force oracle");
  count->add_option("--format", count_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* benchcmd = app.add_subcommand("bench", "Benchmark generators and sweeps");
  benchcmd->require_subcommand(1);
  std::string emit_name;
  std::uint32_t emit_scale = 0;
  std::string emit_out;
  auto* emit = benchcmd->add_subcommand("emit", "Write a benchmark program");
  emit->add_option("name", emit_name, "Benchmark name")->required();
  emit->add_option("--scale", emit_scale, "Scale parameter")->required();
  emit->add_option("-o,--output", emit_out, "Output file (default stdout)");

  SweepArgs sa;
  auto* sweep = benchcmd->add_subcommand("sweep", "Run strategies over many seeds (CSV)");
  sweep->add_option("name", sa.name, "Benchmark name")->required();
  sweep->add_option("--scale", sa.scale, "Scale parameter")->required();
  sweep->add_option("--seeds", sa.seeds, "Seeds per strategy");
  sweep->add_option("--first-seed", sa.first_seed, "First seed");
  sweep->add_option("--strategies", sa.strategies, "Strategies to run")->delimiter(',');
  sweep->add_option("--threads", sa.threads, "Worker threads (default: hardware)");
  sweep->add_option("--max-states", sa.max_states, "Per-run state budget");

  auto* list = benchcmd->add_subcommand("list", "List benchmark names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return run_verify(va);
    if (*count) return run_count(count_file, use_oracle, count_format);
    if (*emit) return run_emit(emit_name, emit_scale, emit_out);
    if (*sweep) return run_sweep(sa);
    if (*list) {
      for (const auto& n : bench::names()) std::cout << n << '\n';
      return kExitSafe;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ProgramError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitUsage;
}
