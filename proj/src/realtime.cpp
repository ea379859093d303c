#include "mapf/realtime.hpp"

#include <cassert>
#include <chrono>
#include <stdexcept>

namespace mapf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

long long default_step_limit(const Instance& instance) {
  return 10LL * instance.map().width() * instance.map().height() *
         instance.agent_count();
}

RtSession::RtSession(const Instance& instance, const ActionRanker& ranker,
                     const std::vector<DistanceTable>& tables)
    : instance_(&instance),
      tree_(instance, ranker, tables),
      current_(instance.start_config()) {
  trace_.configs.push_back(current_);
}

std::optional<Configuration> RtSession::plan_iteration(
    const ExpansionBudget& budget) {
  assert(!at_goal());

  if (goal_path_pending()) {
    // Committed remainder: no further search.
    trace_.per_iteration.push_back(
        IterationStats{0.0, 0, tree_.open_size(), tree_.explored_size()});
    return goal_path_[goal_path_cursor_++];
  }

  const auto t0 = Clock::now();
  const long long before = tree_.expansions();
  HighLevelNode* goal_node = nullptr;
  bool exhausted = false;
  for (;;) {
    const auto r = tree_.expand_once();
    if (r.kind == ExpandResult::Kind::goal_found) {
      goal_node = r.goal;
      break;
    }
    if (r.kind == ExpandResult::Kind::open_exhausted) {
      exhausted = true;
      break;
    }
    if (budget.exhausted(tree_.expansions() - before, seconds_since(t0))) {
      break;
    }
  }

  const double planning_s = seconds_since(t0);
  total_planning_s_ += planning_s;
  trace_.per_iteration.push_back(IterationStats{planning_s,
                                                tree_.expansions() - before,
                                                tree_.open_size(),
                                                tree_.explored_size()});
  if (exhausted) return std::nullopt;

  if (goal_node != nullptr) {
    goal_path_ = tree_.backtrack_path(goal_node);
    assert(goal_path_.size() >= 2 && goal_path_.front() == current_);
    goal_path_cursor_ = 1;
    return goal_path_[goal_path_cursor_++];
  }

  const auto path = tree_.backtrack_path(tree_.last_created());
  if (path.size() < 2) {
    // Nothing new this iteration: wait in place. Constraints accumulated in
    // the tree still guarantee eventual progress.
    return current_;
  }
  return path[1];
}

void RtSession::commit_step(const Configuration& next) {
  if (next == current_) {
    trace_.configs.push_back(next);
    return;
  }
  const HighLevelNode* node = tree_.find(next);
  if (node == nullptr) {
    throw std::logic_error("commit_step: next configuration is not explored");
  }
  if (!valid_transition(instance_->map(), current_, next)) {
    throw std::logic_error("commit_step: next configuration is not adjacent");
  }
  tree_.reroot(next);
  current_ = next;
  trace_.configs.push_back(next);
}

namespace {

RtResult finish(RtStatus status, ExecutionTrace trace, long long expansions,
                double planning_s) {
  RtResult r;
  r.status = status;
  r.trace = std::move(trace);
  r.total_expansions = expansions;
  r.total_planning_s = planning_s;
  return r;
}

}  // namespace

RtResult run_realtime(const Instance& instance, const ActionRanker& ranker,
                      const std::vector<DistanceTable>& tables,
                      const RtOptions& options) {
  if (!goals_reachable(instance, tables)) {
    ExecutionTrace trace;
    trace.configs.push_back(instance.start_config());
    return finish(RtStatus::unsolvable, std::move(trace), 0, 0.0);
  }
  const long long step_limit =
      options.step_limit.value_or(default_step_limit(instance));

  RtSession session(instance, ranker, tables);
  while (!session.at_goal()) {
    if (session.trace().steps() >= step_limit) {
      return finish(RtStatus::step_limit, session.trace(),
                    session.total_expansions(), session.total_planning_s());
    }
    // The expansion cap mirrors a capped full-horizon run exactly: stop once
    // it is consumed and never search past it within an iteration.
    ExpansionBudget budget = options.budget;
    if (options.max_total_expansions && !budget.is_wall_clock()) {
      const long long remaining =
          *options.max_total_expansions - session.total_expansions();
      if (remaining <= 0) {
        return finish(RtStatus::timeout, session.trace(),
                      session.total_expansions(), session.total_planning_s());
      }
      budget = ExpansionBudget::expansions(
          std::min(budget.expansion_count(), remaining));
    }
    const auto next = session.plan_iteration(budget);
    if (!next) {
      return finish(RtStatus::unsolvable, session.trace(),
                    session.total_expansions(), session.total_planning_s());
    }
    session.commit_step(*next);
    if (session.total_planning_s() > options.cumulative_timeout_s ||
        (options.max_total_expansions && budget.is_wall_clock() &&
         session.total_expansions() >= *options.max_total_expansions)) {
      return finish(RtStatus::timeout, session.trace(),
                    session.total_expansions(), session.total_planning_s());
    }
  }
  return finish(RtStatus::success, session.trace(),
                session.total_expansions(), session.total_planning_s());
}

RtResult run_naive_realtime(const Instance& instance,
                            const ActionRanker& ranker,
                            const std::vector<DistanceTable>& tables,
                            const RtOptions& options) {
  if (!goals_reachable(instance, tables)) {
    ExecutionTrace trace;
    trace.configs.push_back(instance.start_config());
    return finish(RtStatus::unsolvable, std::move(trace), 0, 0.0);
  }
  const long long step_limit =
      options.step_limit.value_or(default_step_limit(instance));

  ExecutionTrace trace;
  Configuration current = instance.start_config();
  trace.configs.push_back(current);
  long long total_expansions = 0;
  double total_planning_s = 0.0;

  while (!(current == instance.goal_config())) {
    if (trace.steps() >= step_limit) {
      return finish(RtStatus::step_limit, std::move(trace), total_expansions,
                    total_planning_s);
    }

    // Fresh tree every iteration; nothing carries over.
    const Instance here = instance.with_start(current);
    SearchTree tree(here, ranker, tables);
    const auto t0 = Clock::now();
    HighLevelNode* goal_node = nullptr;
    bool exhausted = false;
    for (;;) {
      const auto r = tree.expand_once();
      if (r.kind == ExpandResult::Kind::goal_found) {
        goal_node = r.goal;
        break;
      }
      if (r.kind == ExpandResult::Kind::open_exhausted) {
        exhausted = true;
        break;
      }
      if (options.budget.exhausted(tree.expansions(), seconds_since(t0))) {
        break;
      }
    }
    const double planning_s = seconds_since(t0);
    total_planning_s += planning_s;
    total_expansions += tree.expansions();
    trace.per_iteration.push_back(IterationStats{
        planning_s, tree.expansions(), tree.open_size(), tree.explored_size()});
    if (exhausted) {
      return finish(RtStatus::unsolvable, std::move(trace), total_expansions,
                    total_planning_s);
    }

    const auto path = tree.backtrack_path(
        goal_node != nullptr ? goal_node : tree.last_created());
    const Configuration next = path.size() < 2 ? current : path[1];
    assert(valid_transition(instance.map(), current, next) || next == current);
    current = next;
    trace.configs.push_back(current);

    if (total_planning_s > options.cumulative_timeout_s ||
        (options.max_total_expansions &&
         total_expansions >= *options.max_total_expansions)) {
      return finish(RtStatus::timeout, std::move(trace), total_expansions,
                    total_planning_s);
    }
  }
  return finish(RtStatus::success, std::move(trace), total_expansions,
                total_planning_s);
}

RtResult run_pibt(const Instance& instance, const ActionRanker& ranker,
                  const std::vector<DistanceTable>& tables,
                  double cumulative_timeout_s,
                  std::optional<long long> step_limit) {
  if (!goals_reachable(instance, tables)) {
    ExecutionTrace trace;
    trace.configs.push_back(instance.start_config());
    return finish(RtStatus::unsolvable, std::move(trace), 0, 0.0);
  }
  const long long limit = step_limit.value_or(default_step_limit(instance));

  ConfigGenerator generator(instance.map(), ranker);
  PriorityState priorities(instance.agent_count());
  ExecutionTrace trace;
  Configuration current = instance.start_config();
  trace.configs.push_back(current);
  double total_planning_s = 0.0;

  while (!(current == instance.goal_config())) {
    if (trace.steps() >= limit) {
      return finish(RtStatus::step_limit, std::move(trace), 0,
                    total_planning_s);
    }
    const auto t0 = Clock::now();
    auto next = generator.generate(current, {}, priorities);
    const double planning_s = seconds_since(t0);
    total_planning_s += planning_s;
    trace.per_iteration.push_back(IterationStats{planning_s, 0, 0, 0});
    // A failed joint step degrades to waiting in place.
    current = next ? std::move(*next) : current;
    priorities = update_priorities(priorities, current,
                                   instance.goal_config());
    trace.configs.push_back(current);
    if (total_planning_s > cumulative_timeout_s) {
      return finish(RtStatus::timeout, std::move(trace), 0, total_planning_s);
    }
  }
  return finish(RtStatus::success, std::move(trace), 0, total_planning_s);
}

}  // namespace mapf
