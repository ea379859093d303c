#include "mapf/heuristic.hpp"

#include <deque>
#include <stdexcept>

namespace mapf {

DistanceTable::DistanceTable(const GridMap& map, Vertex goal)
    : width_(map.width()),
      goal_(goal),
      dist_(static_cast<std::size_t>(map.cell_count()), kUnreachable) {
  if (!map.passable(goal)) {
    throw std::invalid_argument("DistanceTable: goal is not passable");
  }
  std::deque<Vertex> frontier;
  dist_[map.index(goal)] = 0;
  frontier.push_back(goal);
  std::array<Vertex, 5> buf;
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop_front();
    const int d = dist_[map.index(v)];
    const int n = neighbor_list(map, v, buf);
    for (int k = 0; k < n; ++k) {
      const Vertex u = buf[k];
      auto& du = dist_[map.index(u)];
      if (du == kUnreachable) {
        du = d + 1;
        frontier.push_back(u);
      }
    }
  }
}

DistanceTable backward_bfs(const GridMap& map, Vertex goal) {
  return DistanceTable(map, goal);
}

std::vector<DistanceTable> build_distance_tables(const GridMap& map,
                                                 const Configuration& goals) {
  std::vector<DistanceTable> tables;
  tables.reserve(goals.size());
  for (const auto& g : goals) tables.push_back(DistanceTable(map, g));
  return tables;
}

bool goals_reachable(const Instance& instance,
                     const std::vector<DistanceTable>& tables) {
  const auto& starts = instance.start_config();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (!tables[i].reachable(starts[i])) return false;
  }
  return true;
}

long long distance_sum(const Configuration& starts,
                       const std::vector<DistanceTable>& tables) {
  long long sum = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    sum += tables[i].dist(starts[i]);
  }
  return sum;
}

}  // namespace mapf
