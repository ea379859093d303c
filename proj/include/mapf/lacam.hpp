#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mapf/pibt.hpp"

namespace mapf {

// One node of the lazily enumerated per-configuration constraint tree.
// `assignment` pins the owning node's first depth() agents in priority
// order to cells; each constraint carries its agent id explicitly.
struct LowLevelNode {
  std::vector<Constraint> assignment;
  int depth() const { return static_cast<int>(assignment.size()); }
};

// A configuration in the search tree, with its parent link, the FIFO of
// pending constraint assignments, and the priority snapshot taken when the
// node was created (never recomputed, including under rerooting).
struct HighLevelNode {
  Configuration config;
  HighLevelNode* parent = nullptr;
  std::deque<LowLevelNode> queue;
  PriorityState priorities;
  int depth_hint = 0;
  std::uint64_t created_seq = 0;

  HighLevelNode(Configuration c, HighLevelNode* p, PriorityState prio,
                int depth, std::uint64_t seq)
      : config(std::move(c)),
        parent(p),
        priorities(std::move(prio)),
        depth_hint(depth),
        created_seq(seq) {
    queue.push_back(LowLevelNode{});
  }
};

struct ExpandResult {
  enum class Kind { goal_found, progressed, open_exhausted };
  Kind kind = Kind::progressed;
  HighLevelNode* goal = nullptr;
};

// Per-iteration search budget: either a wall-clock slice or an exact number
// of expansions (the deterministic mode used throughout the tests).
class ExpansionBudget {
 public:
  static ExpansionBudget expansions(long long count);
  static ExpansionBudget wall_clock_ms(double ms);

  bool is_wall_clock() const { return wall_clock_; }
  double budget_ms() const { return ms_; }
  long long expansion_count() const { return count_; }
  bool exhausted(long long expansions_done, double elapsed_s) const {
    return wall_clock_ ? elapsed_s * 1000.0 >= ms_ : expansions_done >= count_;
  }

 private:
  ExpansionBudget() = default;
  bool wall_clock_ = false;
  double ms_ = 0.0;
  long long count_ = 0;
};

// Lazy DFS over configurations. Each expansion consumes one pending
// constraint assignment from the node on top of the open stack, enqueues its
// lazily extended children, and asks PIBT for the matching successor.
// Revisited configurations are pushed again so they later branch under
// stronger constraints. The tree persists across real-time iterations and
// supports rerooting along executed edges.
class SearchTree {
 public:
  // Requires every agent's goal reachable from its start (checked against
  // the tables); throws std::invalid_argument otherwise.
  SearchTree(const Instance& instance, const ActionRanker& ranker,
             const std::vector<DistanceTable>& tables);

  ExpandResult expand_once();

  // Path root .. node inclusive via parent links.
  std::vector<Configuration> backtrack_path(const HighLevelNode* node) const;

  // Reverses the executed root -> next edge so `next` becomes the root.
  // Nothing else changes: explored set, queues and open stay untouched.
  void reroot(const Configuration& next);

  const HighLevelNode* root() const { return root_; }
  const HighLevelNode* last_created() const { return last_created_; }
  const HighLevelNode* find(const Configuration& c) const;
  const Configuration& goal() const { return goal_; }

  std::size_t explored_size() const { return explored_.size(); }
  std::size_t open_size() const { return open_.size(); }
  long long expansions() const { return expansions_; }

  using NodeMap =
      std::unordered_map<Configuration, std::unique_ptr<HighLevelNode>,
                         ConfigurationHash>;
  const NodeMap& explored() const { return explored_; }
  const std::vector<HighLevelNode*>& open() const { return open_; }

  // Invoked with (config, assignment) for every consumed constraint node;
  // used by the equivalence tests.
  using ConsumeObserver =
      std::function<void(const Configuration&, const LowLevelNode&)>;
  void set_consume_observer(ConsumeObserver obs) { observer_ = std::move(obs); }

 private:
  HighLevelNode* create_node(Configuration config, HighLevelNode* parent);

  const GridMap* map_;
  Configuration goal_;
  ConfigGenerator generator_;
  NodeMap explored_;
  std::vector<HighLevelNode*> open_;  // stack; back() is the top
  HighLevelNode* root_ = nullptr;
  HighLevelNode* last_created_ = nullptr;
  std::uint64_t creation_counter_ = 0;
  long long expansions_ = 0;
  ConsumeObserver observer_;
};

enum class SolveStatus { success, timeout, unsolvable };

struct FullHorizonResult {
  SolveStatus status = SolveStatus::unsolvable;
  std::vector<Configuration> solution;  // start .. goal when successful
  long long expansions = 0;
  std::size_t explored = 0;
  double wall_s = 0.0;
};

// Runs the DFS to completion on an existing tree. `max_expansions` is a
// deterministic cutoff reported as a timeout.
FullHorizonResult solve_on_tree(
    SearchTree& tree, double timeout_s,
    std::optional<long long> max_expansions = std::nullopt);

FullHorizonResult solve_full_horizon(
    const Instance& instance, const ActionRanker& ranker,
    const std::vector<DistanceTable>& tables, double timeout_s,
    std::optional<long long> max_expansions = std::nullopt);

// Order-sensitive digest of everything rerooting must preserve: the explored
// configuration set, every node's pending constraint queue, and the open
// stack contents. Parent orientation is deliberately excluded.
struct TreeDigest {
  std::size_t explored_size = 0;
  std::uint64_t node_set_hash = 0;
  std::uint64_t queue_hash = 0;
  std::uint64_t open_hash = 0;
  friend bool operator==(const TreeDigest&, const TreeDigest&) = default;
};

TreeDigest structural_digest(const SearchTree& tree);

// True iff parent links are acyclic and every explored node reaches the node
// of `root_config`, whose parent must be absent.
bool parents_form_tree_rooted_at(const SearchTree& tree,
                                 const Configuration& root_config);

}  // namespace mapf
