#include "mapf/lacam.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mapf {

ExpansionBudget ExpansionBudget::expansions(long long count) {
  if (count <= 0) {
    throw std::invalid_argument("ExpansionBudget: count must be positive");
  }
  ExpansionBudget b;
  b.wall_clock_ = false;
  b.count_ = count;
  return b;
}

ExpansionBudget ExpansionBudget::wall_clock_ms(double ms) {
  if (!(ms > 0.0)) {
    throw std::invalid_argument("ExpansionBudget: duration must be positive");
  }
  ExpansionBudget b;
  b.wall_clock_ = true;
  b.ms_ = ms;
  return b;
}

SearchTree::SearchTree(const Instance& instance, const ActionRanker& ranker,
                       const std::vector<DistanceTable>& tables)
    : map_(&instance.map()),
      goal_(instance.goal_config()),
      generator_(instance.map(), ranker) {
  if (tables.size() != instance.start_config().size()) {
    throw std::invalid_argument("SearchTree: one distance table per agent");
  }
  if (!goals_reachable(instance, tables)) {
    throw std::invalid_argument(
        "SearchTree: some agent's goal is unreachable from its start");
  }
  root_ = create_node(instance.start_config(), nullptr);
  open_.push_back(root_);
}

HighLevelNode* SearchTree::create_node(Configuration config,
                                       HighLevelNode* parent) {
  const int n = static_cast<int>(config.size());
  PriorityState priorities =
      parent == nullptr
          ? PriorityState(n)
          : update_priorities(parent->priorities, config, goal_);
  const int depth = parent == nullptr ? 0 : parent->depth_hint + 1;
  auto node = std::make_unique<HighLevelNode>(
      std::move(config), parent, std::move(priorities), depth,
      ++creation_counter_);
  HighLevelNode* raw = node.get();
  explored_.emplace(raw->config, std::move(node));
  last_created_ = raw;
  return raw;
}

ExpandResult SearchTree::expand_once() {
  HighLevelNode* top = nullptr;
  for (;;) {
    if (open_.empty()) {
      return {ExpandResult::Kind::open_exhausted, nullptr};
    }
    top = open_.back();
    if (top->config == goal_) {
      return {ExpandResult::Kind::goal_found, top};
    }
    if (top->queue.empty()) {
      // Fully enumerated node re-pushed by an earlier revisit.
      open_.pop_back();
      continue;
    }
    break;
  }

  LowLevelNode low = std::move(top->queue.front());
  top->queue.pop_front();

  // Lazily extend the constraint tree: pin the next agent to each of its
  // grid moves, in fixed action order. Agents are constrained in the node's
  // priority order so the first branching targets the agent that has been
  // stuck the longest; index order would bury pocket deadlocks behind an
  // exponential number of assignments for unrelated agents.
  const int n_agents = static_cast<int>(top->config.size());
  if (low.depth() < n_agents) {
    const int agent = top->priorities.order()[low.depth()];
    std::array<Vertex, 5> moves;
    const int n = neighbor_list(*map_, top->config[agent], moves);
    for (int k = 0; k < n; ++k) {
      LowLevelNode child;
      child.assignment = low.assignment;
      child.assignment.push_back(Constraint{agent, moves[k]});
      top->queue.push_back(std::move(child));
    }
  }
  if (top->queue.empty()) open_.pop_back();

  ++expansions_;
  if (observer_) observer_(top->config, low);

  auto successor =
      generator_.generate(top->config, low.assignment, top->priorities);
  if (!successor) {
    // Contradictory constraints; discard this branch.
    return {ExpandResult::Kind::progressed, nullptr};
  }

  const auto it = explored_.find(*successor);
  if (it != explored_.end()) {
    // Revisit: re-push so the node branches under stronger constraints
    // later. Its parent stays as it was.
    open_.push_back(it->second.get());
  } else {
    open_.push_back(create_node(std::move(*successor), top));
  }
  return {ExpandResult::Kind::progressed, nullptr};
}

std::vector<Configuration> SearchTree::backtrack_path(
    const HighLevelNode* node) const {
  std::vector<Configuration> path;
  for (const HighLevelNode* cur = node; cur != nullptr; cur = cur->parent) {
    path.push_back(cur->config);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void SearchTree::reroot(const Configuration& next) {
  const auto it = explored_.find(next);
  if (it == explored_.end()) {
    throw std::logic_error("reroot: target configuration was never explored");
  }
  HighLevelNode* new_root = it->second.get();
  if (new_root == root_) return;
  if (new_root->parent != root_) {
    throw std::logic_error("reroot: target is not adjacent to the root");
  }
  new_root->parent = nullptr;
  root_->parent = new_root;
  root_->depth_hint = 1;
  new_root->depth_hint = 0;
  root_ = new_root;
}

const HighLevelNode* SearchTree::find(const Configuration& c) const {
  const auto it = explored_.find(c);
  return it == explored_.end() ? nullptr : it->second.get();
}

FullHorizonResult solve_on_tree(SearchTree& tree, double timeout_s,
                                std::optional<long long> max_expansions) {
  const auto t0 = std::chrono::steady_clock::now();
  const long long start_expansions = tree.expansions();
  FullHorizonResult result;

  for (;;) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const long long done = tree.expansions() - start_expansions;
    if (elapsed > timeout_s || (max_expansions && done >= *max_expansions)) {
      result.status = SolveStatus::timeout;
      break;
    }
    const auto r = tree.expand_once();
    if (r.kind == ExpandResult::Kind::goal_found) {
      result.status = SolveStatus::success;
      result.solution = tree.backtrack_path(r.goal);
      break;
    }
    if (r.kind == ExpandResult::Kind::open_exhausted) {
      result.status = SolveStatus::unsolvable;
      break;
    }
  }

  result.expansions = tree.expansions() - start_expansions;
  result.explored = tree.explored_size();
  result.wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

FullHorizonResult solve_full_horizon(const Instance& instance,
                                     const ActionRanker& ranker,
                                     const std::vector<DistanceTable>& tables,
                                     double timeout_s,
                                     std::optional<long long> max_expansions) {
  if (!goals_reachable(instance, tables)) {
    FullHorizonResult result;
    result.status = SolveStatus::unsolvable;
    return result;
  }
  SearchTree tree(instance, ranker, tables);
  return solve_on_tree(tree, timeout_s, max_expansions);
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_low_level(const LowLevelNode& low) {
  std::uint64_t h = 0x51ed270b0a1b2c3dULL;
  for (const auto& c : low.assignment) {
    h = mix(h ^ static_cast<std::uint64_t>(c.agent));
    h = mix(h ^ ((static_cast<std::uint64_t>(
                      static_cast<std::uint32_t>(c.vertex.x))
                  << 32) |
                 static_cast<std::uint32_t>(c.vertex.y)));
  }
  return h;
}

}  // namespace

TreeDigest structural_digest(const SearchTree& tree) {
  TreeDigest d;
  d.explored_size = tree.explored_size();
  for (const auto& [config, node] : tree.explored()) {
    d.node_set_hash ^= mix(config.hash());  // order-independent over the set
    std::uint64_t q = mix(config.hash() ^ 0xabcdef12345678ULL);
    for (const auto& low : node->queue) {
      q = mix(q ^ hash_low_level(low));
    }
    d.queue_hash ^= q;
  }
  std::uint64_t o = 0x6a09e667f3bcc908ULL;
  for (const HighLevelNode* node : tree.open()) {
    o = mix(o ^ node->config.hash());
  }
  d.open_hash = o;
  return d;
}

bool parents_form_tree_rooted_at(const SearchTree& tree,
                                 const Configuration& root_config) {
  const HighLevelNode* root = tree.find(root_config);
  if (root == nullptr || root->parent != nullptr) return false;
  if (tree.root() != root) return false;

  // Walk each parent chain with memoization; chains longer than the node
  // count indicate a cycle.
  std::unordered_map<const HighLevelNode*, bool> reaches_root;
  reaches_root.reserve(tree.explored_size() * 2);
  reaches_root[root] = true;
  const std::size_t n = tree.explored_size();
  for (const auto& [config, node] : tree.explored()) {
    std::vector<const HighLevelNode*> chain;
    const HighLevelNode* cur = node.get();
    bool ok = false;
    while (true) {
      const auto it = reaches_root.find(cur);
      if (it != reaches_root.end()) {
        ok = it->second;
        break;
      }
      chain.push_back(cur);
      if (chain.size() > n || cur->parent == nullptr) {
        ok = false;  // cycle, or a second root
        break;
      }
      cur = cur->parent;
    }
    for (const auto* c : chain) reaches_root[c] = ok;
    if (!ok) return false;
  }
  return true;
}

}  // namespace mapf
