#include "rfsmc/ct_search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rfsmc/happens_before.hpp"

namespace rfsmc {

std::size_t prefix_depth(const DependencyTable& deps, const Execution& x, const Execution& e) {
  const std::size_t actors = deps.program().actor_count();
  // pos[a][s]: 1-based position in x of actor a's s-th statement.
  std::vector<std::vector<std::size_t>> pos(actors);
  for (const auto& t : x.transitions()) pos[index_of(t.actor)].push_back(t.index);
  std::vector<bool> in_prefix(x.size() + 1, false);
  std::size_t k = 0;
  for (const auto& t : e.transitions()) {
    const auto& ps = pos[index_of(t.actor)];
    if (t.stmt >= ps.size()) break;
    const std::size_t px = ps[t.stmt];
    bool closed = true;
    for (std::size_t d = 1; d < px && closed; ++d)
      if (!in_prefix[d] && deps.dependent(x.at(d), x.at(px))) closed = false;
    if (!closed) break;
    in_prefix[px] = true;
    ++k;
  }
  return k;
}

std::vector<std::size_t> causal_past(const DependencyTable& deps, const Execution& execution, std::size_t index) {
  const HbRelation hb(deps, execution);
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < index; ++i)
    if (hb.ordered(i, index)) out.push_back(i);
  return out;
}

namespace {

class Scope {
 public:
  Scope(const ExplorationTree& tree, const std::vector<NodeId>& path) : tree_(&tree), path_(path) {
    for (std::size_t d = 0; d < path.size(); ++d) {
      if (path[d] >= depth_on_path_.size()) depth_on_path_.resize(path[d] + 1, -1);
      depth_on_path_[path[d]] = static_cast<std::int64_t>(d);
    }
  }

  /// Heads whose pending sequences may extend the first k transitions of the path.
  bool contains(NodeId head, std::size_t k) const {
    NodeId child = kNoNode;
    NodeId cur = head;
    while (on_path(cur) < 0) {
      child = cur;
      cur = tree_->node(cur).parent;
    }
    const auto a = static_cast<std::size_t>(on_path(cur));
    if (a >= k) return true;
    if (child == kNoNode) return false;
    const auto& done = tree_->node(cur).done;
    const ActorId on_path_actor = tree_->node(path_[a + 1]).via;
    const auto pos_child = std::find(done.begin(), done.end(), tree_->node(child).via);
    const auto pos_path = std::find(done.begin(), done.end(), on_path_actor);
    return pos_child < pos_path;
  }

 private:
  std::int64_t on_path(NodeId id) const { return id < depth_on_path_.size() ? depth_on_path_[id] : -1; }

  const ExplorationTree* tree_;
  std::vector<NodeId> path_;
  std::vector<std::int64_t> depth_on_path_;
};

}  // namespace

CtReport find_critical_transition(Explorer& explorer) {
  if (explorer.options().gc || !explorer.options().record_runs)
    throw std::logic_error("critical transition search needs gc off and recorded runs");
  if (!explorer.first_bug()) throw std::logic_error("critical transition search without a faulty execution");

  const RunRecord faulty = *explorer.first_bug();
  const DependencyTable& deps = explorer.deps();
  const ExplorationTree& tree = explorer.tree();
  const Execution& e = faulty.execution;
  const std::size_t n = e.size();

  CtReport report;
  report.faulty_execution = e;
  report.faulty_outcome = faulty.outcome;

  const auto path = tree.lineage(faulty.leaf);
  report.sleep_nonempty.reserve(path.size());
  for (NodeId id : path) report.sleep_nonempty.push_back(!tree.node(id).sleep.empty());
  while (report.s1_size + 1 < path.size() && report.sleep_nonempty[report.s1_size + 1]) ++report.s1_size;

  std::set<TraceKey> seen;
  std::int64_t known = -1;
  std::optional<Execution> witness;
  auto consider = [&](const RunRecord& r) {
    if (r.outcome != Outcome::Safe) return;
    const auto d = static_cast<std::int64_t>(prefix_depth(deps, r.execution, e));
    if (d > known) {
      known = d;
      witness = r.execution;
    }
  };
  for (const auto& r : explorer.runs()) {
    seen.insert(trace_key(deps, r.execution));
    consider(r);
  }

  const Scope scope(tree, path);
  const std::uint64_t traces0 = explorer.stats().traces_explored;
  const std::uint64_t states0 = explorer.stats().states_visited;

  std::size_t ct = 0;
  bool decided = false;
  for (std::size_t k = n; k-- > 0 && !decided;) {
    while (known < static_cast<std::int64_t>(k)) {
      if (explorer.budget_exhausted()) {
        report.inconclusive = true;
        break;
      }
      const auto it = explorer.iterate([&](NodeId h) { return scope.contains(h, k); });
      if (!it.progressed) break;
      if (it.maximal) {
        if (!seen.insert(trace_key(deps, it.maximal->execution)).second) ++report.repeated_traces;
        consider(*it.maximal);
      }
    }
    if (report.inconclusive) {
      ct = known >= 0 ? static_cast<std::size_t>(known) + 1 : 0;
      decided = true;
    } else if (known >= static_cast<std::int64_t>(k)) {
      ct = k + 1;
      decided = true;
    }
  }

  report.ct_index = ct;
  report.traces_during_ct = explorer.stats().traces_explored - traces0;
  report.states_during_ct = explorer.stats().states_visited - states0;
  if (ct > 0) {
    report.correct_witness = witness;
    report.causal_past = causal_past(deps, e, ct);
  }

  if (faulty.outcome == Outcome::Deadlock && ct > 0) {
    // Actors causally connected to the CT, before or after it.
    const HbRelation hb(deps, e);
    ActorSet involved;
    for (std::size_t i = 1; i <= n; ++i)
      if (i == ct || hb.ordered(i, ct) || hb.ordered(ct, i)) involved.insert(e.at(i).actor);
    const SimState end = replay(explorer.program(), e.actors());
    for (std::size_t a = 0; a < explorer.program().actor_count(); ++a)
      if (!finished(explorer.program(), end, actor_at(a)) && !involved.contains(actor_at(a))) report.multi_cause = true;
  }
  return report;
}

CtOutcome explore_with_ct(const Program& program, ExploreOptions options) {
  options.stop_at_first_bug = true;
  options.gc = false;
  options.record_runs = true;
  Explorer explorer(program, options);
  CtOutcome out;
  out.verdict = explorer.run();
  if (explorer.first_bug()) {
    out.report = find_critical_transition(explorer);
    out.verdict = explorer.verdict();
  }
  return out;
}

}  // namespace rfsmc
