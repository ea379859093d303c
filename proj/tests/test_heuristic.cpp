#include <cstdlib>
#include <queue>

#include "doctest.h"
#include "mapf/heuristic.hpp"
#include "support/testgen.hpp"

using namespace mapf;

namespace {

// Independent oracle: binary-heap Dijkstra with explicit edge relaxation,
// deliberately not sharing code with the BFS implementation under test.
std::vector<int> dijkstra_reference(const GridMap& map, Vertex goal) {
  std::vector<int> dist(static_cast<std::size_t>(map.cell_count()),
                        DistanceTable::kUnreachable);
  using Entry = std::pair<int, int>;  // (distance, cell)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[map.index(goal)] = 0;
  pq.push({0, map.index(goal)});
  const std::array<std::pair<int, int>, 4> deltas{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!pq.empty()) {
    const auto [d, c] = pq.top();
    pq.pop();
    if (d > dist[c]) continue;
    const Vertex v = map.vertex_of(c);
    for (const auto& [dx, dy] : deltas) {
      const Vertex u{v.x + dx, v.y + dy};
      if (!map.passable(u)) continue;
      if (d + 1 < dist[map.index(u)]) {
        dist[map.index(u)] = d + 1;
        pq.push({d + 1, map.index(u)});
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("backward_bfs equals Manhattan distance on an empty grid") {
  const GridMap map(6, 4, std::vector<uint8_t>(24, 1));
  const Vertex goal{4, 1};
  const auto table = backward_bfs(map, goal);
  CHECK(table.dist(goal) == 0);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 6; ++x) {
      CHECK(table.dist({x, y}) == std::abs(x - 4) + std::abs(y - 1));
    }
  }
}

TEST_CASE("backward_bfs routes through the only gap in a wall") {
  const auto map = testgen::wall_with_gap_map();
  const Vertex goal{0, 0};
  const auto table = backward_bfs(map, goal);
  const auto ref = dijkstra_reference(map, goal);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      CHECK(table.dist({x, y}) == ref[map.index({x, y})]);
    }
  }
  // Detour: (3,0) is adjacent through the wall, but the gap is at y=4.
  CHECK(table.dist({3, 0}) == 11);
}

TEST_CASE("backward_bfs matches Dijkstra on random maps") {
  testgen::Rng rng(99);
  int done = 0;
  while (done < 40) {
    const auto map = testgen::random_grid(9, 7, 0.3, rng);
    const auto cells = testgen::largest_component(map);
    if (cells.empty()) continue;
    const Vertex goal = cells[testgen::draw_below(rng, cells.size())];
    const auto table = backward_bfs(map, goal);
    const auto ref = dijkstra_reference(map, goal);
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        CHECK(table.dist({x, y}) == ref[map.index({x, y})]);
      }
    }
    ++done;
  }
}

TEST_CASE("reachable classifies goal, blocked and sealed cells") {
  const auto map = testgen::sealed_room_map();
  const Vertex goal{0, 0};
  const auto table = backward_bfs(map, goal);
  CHECK(table.reachable(goal));
  CHECK_FALSE(table.reachable({3, 0}));  // blocked cell
  CHECK_FALSE(table.reachable({4, 1}));  // sealed room

  // Cross-check with a flood fill from the goal.
  std::vector<uint8_t> seen(static_cast<std::size_t>(map.cell_count()), 0);
  std::vector<Vertex> stack{goal};
  seen[map.index(goal)] = 1;
  std::array<Vertex, 5> buf;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    const int n = neighbor_list(map, v, buf);
    for (int k = 0; k < n; ++k) {
      if (!seen[map.index(buf[k])]) {
        seen[map.index(buf[k])] = 1;
        stack.push_back(buf[k]);
      }
    }
  }
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      CHECK(table.reachable({x, y}) == (seen[map.index({x, y})] != 0));
    }
  }
}

TEST_CASE("adjacent reachable cells differ by at most one step") {
  testgen::Rng rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    const auto map = testgen::random_grid(8, 8, 0.25, rng);
    const auto cells = testgen::largest_component(map);
    if (cells.empty()) continue;
    const auto table = backward_bfs(map, cells.front());
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        const Vertex v{x, y};
        if (!map.passable(v) || !table.reachable(v)) continue;
        for (const auto& u : neighbors(map, v)) {
          if (!table.reachable(u)) continue;
          CHECK(std::abs(table.dist(u) - table.dist(v)) <= 1);
        }
        // Gradient property: some neighbor is one step closer.
        if (table.dist(v) > 0) {
          bool has_descent = false;
          for (const auto& u : neighbors(map, v)) {
            if (table.reachable(u) && table.dist(u) == table.dist(v) - 1) {
              has_descent = true;
            }
          }
          CHECK(has_descent);
        }
      }
    }
  }
}
