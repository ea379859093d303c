#include "mapf/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mapf {

GridMap::GridMap(int width, int height, std::vector<uint8_t> passable)
    : width_(width), height_(height), passable_(std::move(passable)) {
  if (width_ <= 0 || height_ <= 0) {
    throw std::invalid_argument("GridMap: dimensions must be positive");
  }
  if (passable_.size() != static_cast<std::size_t>(width_) * height_) {
    throw std::invalid_argument("GridMap: cell grid does not match dimensions");
  }
}

int neighbor_list(const GridMap& map, Vertex v, std::array<Vertex, 5>& out) {
  // Fixed action order: stay, -y, +x, +y, -x.
  static constexpr std::array<Vertex, 5> kMoves = {
      Vertex{0, 0}, Vertex{0, -1}, Vertex{1, 0}, Vertex{0, 1}, Vertex{-1, 0}};
  int n = 0;
  for (const auto& d : kMoves) {
    Vertex u{v.x + d.x, v.y + d.y};
    if (map.passable(u)) out[n++] = u;
  }
  return n;
}

std::vector<Vertex> neighbors(const GridMap& map, Vertex v) {
  std::array<Vertex, 5> buf;
  const int n = neighbor_list(map, v, buf);
  return {buf.begin(), buf.begin() + n};
}

std::uint64_t Configuration::hash() const {
  // FNV-1a over the packed cell coordinates.
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& v : positions_) {
    const std::uint64_t cell =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
        static_cast<std::uint32_t>(v.y);
    h ^= cell;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

Configuration starts_of(const std::vector<AgentTask>& tasks) {
  std::vector<Vertex> p;
  p.reserve(tasks.size());
  for (const auto& t : tasks) p.push_back(t.start);
  return Configuration(std::move(p));
}

Configuration goals_of(const std::vector<AgentTask>& tasks) {
  std::vector<Vertex> p;
  p.reserve(tasks.size());
  for (const auto& t : tasks) p.push_back(t.goal);
  return Configuration(std::move(p));
}

void check_distinct(const GridMap& map, const std::vector<AgentTask>& tasks) {
  std::unordered_map<int, int> start_owner;
  std::unordered_map<int, int> goal_owner;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    if (!map.passable(t.start)) {
      throw std::invalid_argument("Instance: start of agent " +
                                  std::to_string(i) + " is not passable");
    }
    if (!map.passable(t.goal)) {
      throw std::invalid_argument("Instance: goal of agent " +
                                  std::to_string(i) + " is not passable");
    }
    if (!start_owner.emplace(map.index(t.start), static_cast<int>(i)).second) {
      throw std::invalid_argument("Instance: duplicate start at agent " +
                                  std::to_string(i));
    }
    if (!goal_owner.emplace(map.index(t.goal), static_cast<int>(i)).second) {
      throw std::invalid_argument("Instance: duplicate goal at agent " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

Instance::Instance(GridMap map, std::vector<AgentTask> tasks)
    : map_(std::move(map)), tasks_(std::move(tasks)) {
  check_distinct(map_, tasks_);
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    tasks_[i].id = static_cast<int>(i);
  }
  start_ = starts_of(tasks_);
  goal_ = goals_of(tasks_);
}

Instance Instance::with_start(const Configuration& new_start) const {
  if (new_start.size() != tasks_.size()) {
    throw std::invalid_argument("with_start: agent count mismatch");
  }
  std::vector<AgentTask> tasks = tasks_;
  for (std::size_t i = 0; i < tasks.size(); ++i) tasks[i].start = new_start[i];
  return Instance(map_, std::move(tasks));
}

bool move_allowed(const GridMap& map, Vertex from, Vertex to) {
  if (!map.passable(to)) return false;
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  return (dx == 0 && dy == 0) || (std::abs(dx) + std::abs(dy) == 1);
}

bool valid_transition(const GridMap& map, const Configuration& from,
                      const Configuration& to) {
  const std::size_t n = from.size();
  if (to.size() != n) return false;

  // Both endpoints must sit on passable cells and be vertex-collision-free;
  // checking only one side would break the symmetry rerooting relies on.
  std::unordered_map<int, std::size_t> from_owner;
  std::unordered_map<int, std::size_t> to_owner;
  from_owner.reserve(n * 2);
  to_owner.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (!map.passable(from[i]) || !map.passable(to[i])) return false;
    if (!from_owner.emplace(map.index(from[i]), i).second) return false;
    if (!to_owner.emplace(map.index(to[i]), i).second) return false;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!move_allowed(map, from[i], to[i])) return false;
  }

  // Edge collisions: i moves onto j's old cell while j moves onto i's.
  for (std::size_t i = 0; i < n; ++i) {
    if (to[i] == from[i]) continue;
    const auto it = from_owner.find(map.index(to[i]));
    if (it == from_owner.end()) continue;
    const std::size_t j = it->second;
    if (j != i && to[j] == from[i]) return false;
  }
  return true;
}

int step_cost(const Configuration& task_goals, const Configuration& from,
              const Configuration& to) {
  int cost = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const bool free_wait = from[i] == to[i] && to[i] == task_goals[i];
    if (!free_wait) ++cost;
  }
  return cost;
}

}  // namespace mapf
