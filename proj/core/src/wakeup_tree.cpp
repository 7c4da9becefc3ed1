#include "rfsmc/wakeup_tree.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "rfsmc/happens_before.hpp"

namespace rfsmc {

namespace {

void append_chain(std::vector<WutNode>& siblings, std::span<const ActorId> v) {
  std::vector<WutNode>* level = &siblings;
  for (ActorId a : v) {
    level->push_back({a, {}});
    level = &level->back().children;
  }
}

void collect_leaves(const std::vector<WutNode>& level, std::vector<ActorId>& path,
                    std::vector<std::vector<ActorId>>& out) {
  for (const auto& n : level) {
    path.push_back(n.actor);
    if (n.children.empty()) out.push_back(path);
    else collect_leaves(n.children, path, out);
    path.pop_back();
  }
}

std::size_t count(const std::vector<WutNode>& level) {
  std::size_t c = 0;
  for (const auto& n : level) c += 1 + count(n.children);
  return c;
}

void print_level(std::ostream& os, const Program& program, const std::vector<WutNode>& level) {
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (i > 0) os << ' ';
    os << program.actor(level[i].actor).name;
    if (!level[i].children.empty()) {
      os << '(';
      print_level(os, program, level[i].children);
      os << ')';
    }
  }
}

}  // namespace

std::vector<ActorId> WakeupTree::heads() const {
  std::vector<ActorId> out;
  out.reserve(roots_.size());
  for (const auto& n : roots_) out.push_back(n.actor);
  return out;
}

bool WakeupTree::has_head(ActorId p) const {
  return std::any_of(roots_.begin(), roots_.end(), [&](const WutNode& n) { return n.actor == p; });
}

WakeupTree WakeupTree::extract(ActorId p) {
  auto it = std::find_if(roots_.begin(), roots_.end(), [&](const WutNode& n) { return n.actor == p; });
  if (it == roots_.end()) throw std::logic_error("wut extract: actor is not at height one");
  WakeupTree out;
  out.roots_ = std::move(it->children);
  roots_.erase(it);
  return out;
}

WakeupTree::InsertResult WakeupTree::insert(const DependencyTable& deps, std::span<const std::uint32_t> pcs,
                                            std::vector<ActorId> v) {
  std::vector<std::uint32_t> pc(pcs.begin(), pcs.end());
  std::vector<WutNode>* level = &roots_;
  bool at_root = true;
  for (;;) {
    if (!at_root && level->empty()) return InsertResult::Covered;
    if (v.empty()) return InsertResult::Covered;
    WutNode* next = nullptr;
    for (auto& child : *level) {
      if (is_weak_initial(deps, pc, child.actor, v)) {
        next = &child;
        break;
      }
    }
    if (next == nullptr) {
      append_chain(*level, v);
      return InsertResult::Inserted;
    }
    const auto occ = std::find(v.begin(), v.end(), next->actor);
    if (occ != v.end()) v.erase(occ);
    ++pc[index_of(next->actor)];
    level = &next->children;
    at_root = false;
  }
}

std::vector<std::vector<ActorId>> WakeupTree::leaves() const {
  std::vector<std::vector<ActorId>> out;
  std::vector<ActorId> path;
  collect_leaves(roots_, path, out);
  return out;
}

std::size_t WakeupTree::node_count() const { return count(roots_); }

void WakeupTree::print(std::ostream& os, const Program& program) const { print_level(os, program, roots_); }

WakeupTree WakeupTree::branch(std::span<const ActorId> v) {
  WakeupTree t;
  append_chain(t.roots_, v);
  return t;
}

}  // namespace rfsmc
