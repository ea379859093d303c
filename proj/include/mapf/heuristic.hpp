#pragma once

#include <limits>
#include <vector>

#include "mapf/core.hpp"

namespace mapf {

// Exact distance-to-goal table for one agent, filled by a backward BFS from
// the goal (all edges are unit cost). Immutable once built.
class DistanceTable {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  DistanceTable(const GridMap& map, Vertex goal);

  int dist(Vertex v) const { return dist_[v.y * width_ + v.x]; }
  bool reachable(Vertex v) const { return dist(v) != kUnreachable; }
  Vertex goal() const { return goal_; }

 private:
  int width_;
  Vertex goal_;
  std::vector<int> dist_;
};

// Backward BFS from `goal`; goal must be passable.
DistanceTable backward_bfs(const GridMap& map, Vertex goal);

// One table per agent, in agent order.
std::vector<DistanceTable> build_distance_tables(const GridMap& map,
                                                 const Configuration& goals);

// True iff every agent's goal is reachable from its start.
bool goals_reachable(const Instance& instance,
                     const std::vector<DistanceTable>& tables);

// Sum of per-agent shortest-path lengths from `starts`; a lower bound on any
// solution cost and the normalization denominator for solution quality.
long long distance_sum(const Configuration& starts,
                       const std::vector<DistanceTable>& tables);

}  // namespace mapf
