#include "rfsmc/explorer.hpp"

#include <algorithm>
#include <stdexcept>

#include "rfsmc/happens_before.hpp"

namespace rfsmc {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::AllSafe: return "AllSafe";
    case VerdictKind::Deadlock: return "Deadlock";
    case VerdictKind::Crash: return "Crash";
    case VerdictKind::Exhausted: return "Exhausted";
  }
  return "?";
}

Explorer::Explorer(const Program& program, ExploreOptions options)
    : program_(&program),
      options_(std::move(options)),
      deps_(program),
      tree_(deps_),
      picker_(options_.strategy),
      start_(std::chrono::steady_clock::now()) {
  SimState s0 = initial_state(program);
  const ActorSet en = enabled(program, s0);
  const NodeId root = tree_.create_root(s0.pc, en);
  stats_.states_visited = 1;
  stats_.peak_tree_nodes = 1;
  cached_node_ = root;
  cached_state_ = std::move(s0);
  if (!en.empty()) {
    const ActorId seed = picker_.pick_seed(en);
    tree_.node(root).wut = WakeupTree::branch(std::vector<ActorId>{seed});
    log("seed #0 " + name(seed));
    add_head(root);
  } else {
    RunRecord record;
    on_maximal(root, cached_state_, record);
  }
}

std::string Explorer::name(ActorId a) const { return program_->actor(a).name; }

std::string Explorer::seq(const std::vector<ActorId>& v) const {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "." : "") + name(v[i]);
  return out;
}

void Explorer::log(std::string line) {
  if (options_.record_transcript) transcript_.push_back(std::move(line));
}

void Explorer::add_head(NodeId id) {
  if (id >= head_pos_.size()) {
    head_pos_.resize(id + 1, kNotHead);
    head_seq_.resize(id + 1, 0);
  }
  head_seq_[id] = ++next_seq_;
  if (head_pos_[id] != kNotHead) return;
  head_pos_[id] = static_cast<std::uint32_t>(heads_.size());
  heads_.push_back(id);
}

void Explorer::remove_head(NodeId id) {
  if (!is_head(id)) return;
  const std::uint32_t pos = head_pos_[id];
  const NodeId last = heads_.back();
  heads_[pos] = last;
  head_pos_[last] = pos;
  heads_.pop_back();
  head_pos_[id] = kNotHead;
}

const SimState& Explorer::state_of(NodeId id) {
  if (id != cached_node_) {
    const auto path = tree_.path(id);
    cached_state_ = replay(*program_, path);
    cached_node_ = id;
  }
  return cached_state_;
}

bool Explorer::budget_exhausted() {
  if (!exhausted_.empty()) return true;
  if (heads_.empty()) return false;
  const Budget& b = options_.budget;
  if (b.max_traces && stats_.traces_explored >= *b.max_traces) exhausted_ = "traces";
  else if (b.max_states && stats_.states_visited >= *b.max_states) exhausted_ = "states";
  else if (b.timeout_s) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() >= *b.timeout_s) exhausted_ = "timeout";
  }
  return !exhausted_.empty();
}

Explorer::Iteration Explorer::iterate(const HeadFilter& filter) {
  Iteration result;
  std::vector<HeadInfo> candidates;
  candidates.reserve(heads_.size());
  for (NodeId h : heads_)
    if (!filter || filter(h)) candidates.push_back({h, tree_.node(h).depth, head_seq_[h]});
  if (candidates.empty()) return result;
  // Candidate order must not depend on swap-remove history.
  std::sort(candidates.begin(), candidates.end(), [](const HeadInfo& a, const HeadInfo& b) { return a.node < b.node; });

  const NodeId e = picker_.pick_head(candidates, current_);
  const auto wut_heads = tree_.node(e).wut.heads();
  const ActorId p = picker_.pick_child(wut_heads);

  SimState next = step(*program_, state_of(e), p);
  const ActorSet en = enabled(*program_, next);
  const NodeId child = tree_.add_child(e, p, next.pc, en);
  ++stats_.states_visited;
  stats_.peak_tree_nodes = std::max<std::uint64_t>(stats_.peak_tree_nodes, tree_.peak_nodes());
  if (tree_.node(e).wut.empty()) remove_head(e);
  cached_node_ = child;
  cached_state_ = std::move(next);
  current_ = child;
  log("extend #" + std::to_string(e) + " " + name(p) + " -> #" + std::to_string(child));
  result.progressed = true;

  if (en.empty()) {
    RunRecord record;
    on_maximal(child, cached_state_, record);
    result.maximal = std::move(record);
    return result;
  }
  ExplorationNode& c = tree_.node(child);
  if (c.wut.empty()) {
    const ActorSet candidates_seed = en - c.sleep;
    if (candidates_seed.empty()) {
      ++stats_.ssb_count;
      log("ssb #" + std::to_string(child));
      if (options_.gc) tree_.garbage_collect(child);
      return result;
    }
    const ActorId seed = picker_.pick_seed(candidates_seed);
    c.wut = WakeupTree::branch(std::vector<ActorId>{seed});
    log("seed #" + std::to_string(child) + " " + name(seed));
  }
  add_head(child);
  return result;
}

void Explorer::insert_race(NodeId at, ActorId racing, std::vector<ActorId> v, const std::string& label) {
  const ExplorationNode& n = tree_.node(at);
  ActorSet blocked = n.sleep;
  for (ActorId q : tree_.done_before(at, racing)) blocked.insert(q);
  bool redundant = false;
  blocked.for_each([&](ActorId q) {
    if (!redundant && is_weak_initial(deps_, n.pcs, q, v)) redundant = true;
  });
  if (redundant) {
    ++stats_.races_skipped;
    log("race " + label + " at #" + std::to_string(at) + " " + seq(v) + " blocked");
    return;
  }
  const std::string text = seq(v);
  const NodeId target = tree_.tree_insert(at, std::move(v));
  if (target == kNoNode) {
    ++stats_.races_skipped;
    log("race " + label + " at #" + std::to_string(at) + " " + text + " covered");
    return;
  }
  ++stats_.races_inserted;
  add_head(target);
  log("race " + label + " at #" + std::to_string(at) + " " + text + " -> #" + std::to_string(target));
}

void Explorer::on_maximal(NodeId leaf, const SimState& state, RunRecord& record) {
  const auto path = tree_.path(leaf);
  record.execution = Execution::from_actors(*program_, path);
  record.outcome = classify(*program_, state);
  record.leaf = leaf;
  ++stats_.traces_explored;
  log("maximal #" + std::to_string(leaf) + " " + std::string(to_string(record.outcome)));
  const bool faulty = record.outcome != Outcome::Safe;
  if (faulty && !first_bug_) {
    first_bug_ = record;
    stats_.states_before_first_bug = stats_.states_visited;
  }

  const Execution& e = record.execution;
  const HbRelation hb(deps_, e);
  const auto lineage = tree_.lineage(leaf);
  for (const Race& r : reversible_races(deps_, e, hb)) {
    auto v = notdep(hb, e, r.i);
    v.push_back(e.at(r.j).actor);
    insert_race(lineage[r.i - 1], e.at(r.i).actor, std::move(v),
                "(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")");
  }

  if (record.outcome == Outcome::Crash && !e.empty()) {
    const std::size_t n = e.size();
    const ActorId failing = e.at(n).actor;
    const NodeId parent = lineage[n - 1];
    const ExplorationNode& pn = tree_.node(parent);
    const std::vector<std::uint32_t> pcs = pn.pcs;
    (pn.enabled - ActorSet{failing}).for_each([&](ActorId q) {
      std::vector<ActorId> v{q};
      if (program_->action(q, pcs[index_of(q)]).kind != ActionKind::Fail) v.push_back(failing);
      insert_race(parent, failing, std::move(v), "crash(" + std::to_string(n) + ")");
    });
  }

  if (options_.record_runs) runs_.push_back(record);

  const bool stopping_here = faulty && options_.stop_at_first_bug;
  if (options_.gc && !stopping_here) {
    for (NodeId id : tree_.garbage_collect(leaf)) {
      remove_head(id);
      if (id == cached_node_) cached_node_ = kNoNode;
      if (id == current_) current_ = kNoNode;
      log("gc #" + std::to_string(id));
    }
  }
}

Verdict Explorer::verdict() const {
  Verdict v;
  v.stats = stats_;
  v.stats.peak_tree_nodes = std::max<std::uint64_t>(stats_.peak_tree_nodes, tree_.peak_nodes());
  v.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  if (first_bug_) {
    v.outcome = first_bug_->outcome == Outcome::Crash ? VerdictKind::Crash : VerdictKind::Deadlock;
    v.counterexample = first_bug_->execution;
  } else if (!exhausted_.empty()) {
    v.outcome = VerdictKind::Exhausted;
  }
  v.exhausted_budget = exhausted_;
  v.transcript = transcript_;
  return v;
}

Verdict Explorer::run() {
  if (first_bug_ && options_.stop_at_first_bug) return verdict();
  while (!budget_exhausted()) {
    const Iteration it = iterate();
    if (!it.progressed) break;
    if (it.maximal && it.maximal->outcome != Outcome::Safe && options_.stop_at_first_bug) break;
  }
  return verdict();
}

Verdict explore(const Program& program, const ExploreOptions& options) {
  Explorer explorer(program, options);
  return explorer.run();
}

}  // namespace rfsmc
