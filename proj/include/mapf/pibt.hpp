#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mapf/ranker.hpp"

namespace mapf {

// Forces one agent to a specific cell in the successor configuration.
struct Constraint {
  int agent = 0;
  Vertex vertex;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Dynamic PIBT priorities: agents are processed by descending time since
// they last occupied their goal, ties by ascending agent id.
class PriorityState {
 public:
  explicit PriorityState(int n_agents);
  PriorityState(std::vector<int> elapsed);

  int elapsed(int agent) const { return elapsed_[agent]; }
  int agent_count() const { return static_cast<int>(elapsed_.size()); }
  // Agent ids sorted by priority, highest first.
  const std::vector<int>& order() const { return order_; }

  friend bool operator==(const PriorityState& a, const PriorityState& b) {
    return a.elapsed_ == b.elapsed_;
  }

 private:
  void compute_order();
  std::vector<int> elapsed_;
  std::vector<int> order_;
};

// Elapsed counts reset to 0 for agents at their goal in new_config and
// increment by 1 otherwise.
PriorityState update_priorities(const PriorityState& priorities,
                                const Configuration& new_config,
                                const Configuration& goals);

// One-step successor generation via Priority Inheritance with Backtracking.
// Constrained agents are pinned first; the rest are planned greedily in
// priority order, inheriting priority through occupied cells and
// backtracking on dead ends. The produced step is always collision-free.
//
// Deterministic and replayable: the result depends only on the arguments
// and the ranker. Scratch buffers make a generator single-session; distinct
// sessions use distinct generators.
class ConfigGenerator {
 public:
  ConfigGenerator(const GridMap& map, const ActionRanker& ranker);

  // Returns the successor configuration, or nullopt when the constrained
  // subproblem admits no consistent step (the caller discards that branch).
  std::optional<Configuration> generate(const Configuration& config,
                                        std::span<const Constraint> constraints,
                                        const PriorityState& priorities);

 private:
  bool plan_agent(int agent);
  void reset(const Configuration& config);
  int cell(Vertex v) const { return map_->index(v); }

  const GridMap* map_;
  const ActionRanker* ranker_;

  const Configuration* current_ = nullptr;
  std::vector<int> occupied_now_;   // cell -> agent or -1
  std::vector<int> occupied_next_;  // cell -> agent or -1
  std::vector<int> touched_;        // cells to clear before the next call
  std::vector<Vertex> next_;        // per-agent committed move
  std::vector<uint8_t> has_next_;
};

}  // namespace mapf
