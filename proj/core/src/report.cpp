#include "rfsmc/report.hpp"

#include <algorithm>
#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace rfsmc {

namespace {

std::string step_text(const Program& p, const Transition& t) {
  return p.actor(t.actor).name + " " + describe(p, t.actor, p.action(t.actor, t.stmt));
}

nlohmann::json execution_json(const Program& p, const Execution& e) {
  auto arr = nlohmann::json::array();
  for (const auto& t : e.transitions())
    arr.push_back({{"index", t.index}, {"actor", p.actor(t.actor).name}, {"action", describe(p, t.actor, p.action(t.actor, t.stmt))}});
  return arr;
}

}  // namespace

std::string stats_text(const Verdict& v) {
  std::ostringstream os;
  const auto& s = v.stats;
  os << "verdict=" << to_string(v.outcome) << '\n'
     << "traces_explored=" << s.traces_explored << '\n'
     << "states_visited=" << s.states_visited << '\n'
     << "states_before_first_bug=" << s.states_before_first_bug << '\n'
     << "ssb_count=" << s.ssb_count << '\n'
     << "peak_tree_nodes=" << s.peak_tree_nodes << '\n'
     << "wall_time_s=" << std::fixed << std::setprecision(6) << s.wall_time_s << '\n';
  if (!v.exhausted_budget.empty()) os << "exhausted_budget=" << v.exhausted_budget << '\n';
  return os.str();
}

std::string ct_text(const Program& p, const CtReport& r) {
  std::ostringstream os;
  if (r.ct_index == 0) {
    os << "critical transition: start transition (no correct execution exists)\n";
  } else {
    const Transition& t = r.faulty_execution.at(r.ct_index);
    os << "critical transition: " << r.ct_index << " (" << step_text(p, t) << ")\n";
  }
  if (r.inconclusive) os << "warning: budget exhausted; the index is a lower bound\n";
  if (r.multi_cause) os << "warning: some blocked actors are causally unrelated to the critical transition\n";
  os << "s1_states=" << r.s1_size << '\n';
  os << "ct_traces=" << r.traces_during_ct << '\n';
  os << "ct_states=" << r.states_during_ct << '\n';
  for (const auto& t : r.faulty_execution.transitions()) {
    const bool is_ct = t.index == r.ct_index;
    const bool past = std::binary_search(r.causal_past.begin(), r.causal_past.end(), std::size_t{t.index});
    os << (is_ct ? ">> " : past ? " * " : "   ") << std::setw(3) << t.index << "  " << step_text(p, t) << '\n';
  }
  if (r.correct_witness) {
    os << "correct witness:";
    for (const auto& t : r.correct_witness->transitions()) os << ' ' << p.actor(t.actor).name;
    os << '\n';
  }
  return os.str();
}

std::string verdict_text(const Program& p, const RunInfo& info, const Verdict& v, const std::optional<CtReport>& ct) {
  std::ostringstream os;
  if (!info.program_name.empty()) os << "program=" << info.program_name << '\n';
  os << "strategy=" << to_string(info.strategy.kind) << '\n' << "seed=" << info.strategy.seed << '\n';
  os << stats_text(v);
  if (v.counterexample) {
    os << "counterexample (" << v.counterexample->size() << " steps):\n";
    for (const auto& t : v.counterexample->transitions())
      os << std::setw(4) << t.index << "  " << step_text(p, t) << '\n';
  }
  if (ct) os << ct_text(p, *ct);
  return os.str();
}

std::string verdict_json(const Program& p, const RunInfo& info, const Verdict& v, const std::optional<CtReport>& ct) {
  nlohmann::json j;
  const auto& s = v.stats;
  j["verdict"] = std::string(to_string(v.outcome));
  j["traces_explored"] = s.traces_explored;
  j["states_visited"] = s.states_visited;
  j["states_before_first_bug"] = s.states_before_first_bug;
  j["ssb_count"] = s.ssb_count;
  j["peak_tree_nodes"] = s.peak_tree_nodes;
  j["wall_time_s"] = s.wall_time_s;
  j["strategy"] = std::string(to_string(info.strategy.kind));
  j["seed"] = info.strategy.seed;
  j["exhaustive"] = info.exhaustive;
  if (!info.program_name.empty()) j["program"] = info.program_name;
  if (!v.exhausted_budget.empty()) j["exhausted_budget"] = v.exhausted_budget;
  j["counterexample"] = v.counterexample ? execution_json(p, *v.counterexample) : nlohmann::json(nullptr);
  if (ct) {
    nlohmann::json c;
    c["ct_index"] = ct->ct_index;
    c["causal_past"] = ct->causal_past;
    c["s1_states"] = ct->s1_size;
    c["multi_cause"] = ct->multi_cause;
    c["inconclusive"] = ct->inconclusive;
    c["traces_during_ct"] = ct->traces_during_ct;
    c["states_during_ct"] = ct->states_during_ct;
    c["correct_witness"] = ct->correct_witness ? execution_json(p, *ct->correct_witness) : nlohmann::json(nullptr);
    if (ct->ct_index > 0) c["ct_action"] = step_text(p, ct->faulty_execution.at(ct->ct_index));
    j["critical_transition"] = std::move(c);
  }
  return j.dump(2) + "\n";
}

}  // namespace rfsmc
