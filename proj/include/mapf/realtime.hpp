#pragma once

#include <memory>
#include <optional>

#include "mapf/lacam.hpp"

namespace mapf {

struct IterationStats {
  double planning_s = 0.0;
  long long expansions = 0;
  std::size_t open_size = 0;
  std::size_t explored_size = 0;
};

// Committed configuration sequence plus per-iteration planning statistics.
struct ExecutionTrace {
  std::vector<Configuration> configs;  // executed, including the start
  std::vector<IterationStats> per_iteration;

  long long steps() const {
    return static_cast<long long>(configs.size()) - 1;
  }
};

enum class RtStatus { success, timeout, unsolvable, step_limit };

struct RtResult {
  RtStatus status = RtStatus::unsolvable;
  ExecutionTrace trace;
  long long total_expansions = 0;
  double total_planning_s = 0.0;
};

struct RtOptions {
  ExpansionBudget budget = ExpansionBudget::expansions(1);
  double cumulative_timeout_s = 60.0;
  // Defaults to 10 * width * height * agents when unset.
  std::optional<long long> step_limit;
  // Deterministic analog of the cumulative timeout; reported as timeout.
  std::optional<long long> max_total_expansions;
};

long long default_step_limit(const Instance& instance);

// Interleaved plan/execute loop over one persistent search tree. Each
// iteration continues the DFS where it left off, commits one step toward the
// most recently created node, and reroots the tree along the executed edge,
// so the search never repeats work across iterations.
class RtSession {
 public:
  RtSession(const Instance& instance, const ActionRanker& ranker,
            const std::vector<DistanceTable>& tables);

  bool at_goal() const { return current_ == instance_->goal_config(); }
  const Configuration& current() const { return current_; }

  // Searches under the budget (always at least one expansion) and returns
  // the next configuration to commit: the first step toward the goal once
  // found, otherwise toward the most recently created node; the current
  // configuration when the iteration created nothing new. Returns nullopt
  // when the search exhausted the whole space (instance unsolvable).
  // Once the goal path is known, subsequent calls consume it with zero
  // planning time.
  std::optional<Configuration> plan_iteration(const ExpansionBudget& budget);

  // Appends `next` to the trace; when it differs from the current
  // configuration, reroots the tree along the executed edge. `next` must be
  // the current configuration or an explored neighbor of it.
  void commit_step(const Configuration& next);

  bool goal_path_pending() const {
    return goal_path_cursor_ < goal_path_.size();
  }

  const ExecutionTrace& trace() const { return trace_; }
  const SearchTree& tree() const { return tree_; }
  SearchTree& tree() { return tree_; }
  long long total_expansions() const { return tree_.expansions(); }
  double total_planning_s() const { return total_planning_s_; }

 private:
  const Instance* instance_;
  SearchTree tree_;
  Configuration current_;
  ExecutionTrace trace_;
  std::vector<Configuration> goal_path_;
  std::size_t goal_path_cursor_ = 0;
  double total_planning_s_ = 0.0;
};

// Real-Time LaCAM: complete for any positive budget.
RtResult run_realtime(const Instance& instance, const ActionRanker& ranker,
                      const std::vector<DistanceTable>& tables,
                      const RtOptions& options);

// Baseline that rebuilds the search from scratch every iteration and keeps
// no memory between them; livelocks on congested swaps with small budgets.
RtResult run_naive_realtime(const Instance& instance,
                            const ActionRanker& ranker,
                            const std::vector<DistanceTable>& tables,
                            const RtOptions& options);

// Plain PIBT rollout without any search on top: one generate() per step,
// waiting in place when generation fails. Greedy, incomplete.
RtResult run_pibt(const Instance& instance, const ActionRanker& ranker,
                  const std::vector<DistanceTable>& tables,
                  double cumulative_timeout_s,
                  std::optional<long long> step_limit = std::nullopt);

}  // namespace mapf
