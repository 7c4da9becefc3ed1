#include "rfsmc/exploration_tree.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "rfsmc/happens_before.hpp"

namespace rfsmc {

namespace {

void print_set(std::ostream& os, const Program& program, const std::vector<ActorId>& actors) {
  os << '[';
  for (std::size_t i = 0; i < actors.size(); ++i) os << (i ? "," : "") << program.actor(actors[i]).name;
  os << ']';
}

}  // namespace

NodeId ExplorationNode::child(ActorId p) const {
  for (const auto& [a, id] : children)
    if (a == p) return id;
  return kNoNode;
}

NodeId ExplorationTree::create_root(std::vector<std::uint32_t> pcs, ActorSet enabled) {
  if (!nodes_.empty()) throw std::logic_error("exploration tree already has a root");
  ExplorationNode n;
  n.pcs = std::move(pcs);
  n.enabled = enabled;
  nodes_.push_back(std::move(n));
  live_ = peak_ = 1;
  return 0;
}

ActorSet ExplorationTree::child_sleep(NodeId id, ActorId p) const {
  const ExplorationNode& n = nodes_.at(id);
  ActorSet candidates = n.sleep;
  for (ActorId q : n.done) candidates.insert(q);
  candidates.erase(p);
  ActorSet out;
  const std::uint32_t p_stmt = n.pcs[index_of(p)];
  candidates.for_each([&](ActorId q) {
    if (!deps_->dependent(p, p_stmt, q, n.pcs[index_of(q)])) out.insert(q);
  });
  return out;
}

NodeId ExplorationTree::add_child(NodeId parent, ActorId p, std::vector<std::uint32_t> pcs, ActorSet enabled) {
  if (nodes_.at(parent).child(p) != kNoNode ||
      std::find(nodes_[parent].done.begin(), nodes_[parent].done.end(), p) != nodes_[parent].done.end())
    throw std::logic_error("add_child: actor already explored from this node");
  ExplorationNode c;
  c.parent = parent;
  c.via = p;
  c.depth = nodes_[parent].depth + 1;
  c.pcs = std::move(pcs);
  c.enabled = enabled;
  c.sleep = child_sleep(parent, p);
  if (nodes_[parent].wut.has_head(p)) c.wut = nodes_[parent].wut.extract(p);
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(c));
  nodes_[parent].done.push_back(p);
  nodes_[parent].children.emplace_back(p, id);
  peak_ = std::max(peak_, ++live_);
  return id;
}

std::vector<ActorId> ExplorationTree::done_before(NodeId id, ActorId p) const {
  const auto& done = nodes_.at(id).done;
  const auto it = std::find(done.begin(), done.end(), p);
  if (it == done.end()) throw std::logic_error("done_before: actor not in done");
  return {done.begin(), it};
}

WakeupTree ExplorationTree::wut_extract(NodeId id, ActorId p) { return nodes_.at(id).wut.extract(p); }

NodeId ExplorationTree::tree_insert(NodeId id, std::vector<ActorId> v) {
  for (;;) {
    ExplorationNode& n = nodes_.at(id);
    if (v.empty()) return kNoNode;
    NodeId next = kNoNode;
    ActorId via{};
    for (ActorId p : n.done) {
      if (is_weak_initial(*deps_, n.pcs, p, v)) {
        next = n.child(p);
        via = p;
        if (next == kNoNode) throw std::logic_error("tree_insert: descended into a collected node");
        break;
      }
    }
    if (next == kNoNode) {
      return n.wut.insert(*deps_, n.pcs, std::move(v)) == WakeupTree::InsertResult::Inserted ? id : kNoNode;
    }
    const auto occ = std::find(v.begin(), v.end(), via);
    if (occ != v.end()) v.erase(occ);
    id = next;
  }
}

bool ExplorationTree::closed(NodeId id) const { return nodes_[id].children.empty() && nodes_[id].wut.empty(); }

bool ExplorationTree::is_leftmost(NodeId id) const {
  for (NodeId cur = id; nodes_[cur].parent != kNoNode; cur = nodes_[cur].parent) {
    const auto& siblings = nodes_[nodes_[cur].parent].children;
    if (siblings.empty() || siblings.front().second != cur) return false;
  }
  return true;
}

void ExplorationTree::remove(NodeId id) {
  ExplorationNode& n = nodes_[id];
  if (n.parent != kNoNode) {
    auto& siblings = nodes_[n.parent].children;
    siblings.erase(std::find_if(siblings.begin(), siblings.end(), [&](const auto& c) { return c.second == id; }));
  }
  n.alive = false;
  n.wut = {};
  n.done.clear();
  n.done.shrink_to_fit();
  n.pcs.clear();
  n.pcs.shrink_to_fit();
  --live_;
}

NodeId ExplorationTree::leftmost_leaf(NodeId id) const {
  while (!nodes_[id].children.empty()) id = nodes_[id].children.front().second;
  return id;
}

std::vector<NodeId> ExplorationTree::garbage_collect(NodeId leaf) {
  std::vector<NodeId> removed;
  NodeId cur = leaf;
  while (cur != kNoNode && nodes_[cur].alive && closed(cur) && is_leftmost(cur)) {
    const NodeId parent = nodes_[cur].parent;
    remove(cur);
    removed.push_back(cur);
    if (parent == kNoNode) break;
    cur = nodes_[parent].children.empty() ? parent : leftmost_leaf(parent);
  }
  return removed;
}

std::vector<ActorId> ExplorationTree::path(NodeId id) const {
  std::vector<ActorId> out;
  for (NodeId cur = id; nodes_.at(cur).parent != kNoNode; cur = nodes_[cur].parent) out.push_back(nodes_[cur].via);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<NodeId> ExplorationTree::lineage(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(cur).parent) out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return out;
}

void ExplorationTree::dump_node(std::ostream& os, NodeId id, std::size_t indent) const {
  const Program& program = deps_->program();
  const ExplorationNode& n = nodes_[id];
  os << std::string(indent * 2, ' ');
  os << (n.parent == kNoNode ? std::string("root") : program.actor(n.via).name);
  os << " #" << id << " done=";
  print_set(os, program, n.done);
  os << " sleep=";
  print_set(os, program, n.sleep.to_vector());
  if (!n.wut.empty()) {
    os << " wut=";
    n.wut.print(os, program);
  }
  os << '\n';
  for (const auto& [a, c] : n.children) dump_node(os, c, indent + 1);
}

void ExplorationTree::dump(std::ostream& os) const {
  if (!nodes_.empty() && nodes_[0].alive) dump_node(os, 0, 0);
}

}  // namespace rfsmc
