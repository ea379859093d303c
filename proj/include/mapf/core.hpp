#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mapf {

// Grid cell; x is the column, y the row, origin at the top-left corner.
struct Vertex {
  int x = 0;
  int y = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// 4-connected static grid of passable/blocked cells, stored row-major.
class GridMap {
 public:
  GridMap(int width, int height, std::vector<uint8_t> passable);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Vertex v) const {
    return v.x >= 0 && v.x < width_ && v.y >= 0 && v.y < height_;
  }
  bool passable(Vertex v) const {
    return in_bounds(v) && passable_[index(v)] != 0;
  }
  // Row-major cell index; v must be in bounds.
  int index(Vertex v) const { return v.y * width_ + v.x; }
  Vertex vertex_of(int index) const { return {index % width_, index / width_}; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<uint8_t> passable_;
};

// Successors of v in the fixed action order (stay, -y, +x, +y, -x),
// restricted to in-bounds passable cells. Writes into out, returns the count.
int neighbor_list(const GridMap& map, Vertex v, std::array<Vertex, 5>& out);

// Same as neighbor_list but allocating; always contains v first.
std::vector<Vertex> neighbors(const GridMap& map, Vertex v);

// Joint placement of all agents at one timestep. Equality and hashing use
// the full ordered position list. The container itself does not enforce
// collision-freedom; Instance and the planners do.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<Vertex> positions)
      : positions_(std::move(positions)) {}

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  const Vertex& operator[](std::size_t i) const { return positions_[i]; }
  Vertex& operator[](std::size_t i) { return positions_[i]; }
  auto begin() const { return positions_.begin(); }
  auto end() const { return positions_.end(); }
  const std::vector<Vertex>& positions() const { return positions_; }

  std::uint64_t hash() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Vertex> positions_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const {
    return static_cast<std::size_t>(c.hash());
  }
};

struct AgentTask {
  int id = 0;
  Vertex start;
  Vertex goal;
};

// A MAPF problem: map plus per-agent start/goal tasks. Validates that starts
// and goals are passable and pairwise distinct. Immutable after construction.
class Instance {
 public:
  Instance(GridMap map, std::vector<AgentTask> tasks);

  const GridMap& map() const { return map_; }
  const std::vector<AgentTask>& tasks() const { return tasks_; }
  int agent_count() const { return static_cast<int>(tasks_.size()); }
  const Configuration& start_config() const { return start_; }
  const Configuration& goal_config() const { return goal_; }

  // Same map and goals with agents relocated; used by replan-from-scratch.
  Instance with_start(const Configuration& new_start) const;

 private:
  GridMap map_;
  std::vector<AgentTask> tasks_;
  Configuration start_;
  Configuration goal_;
};

// True when the single move from -> to is a stay or one cardinal step onto a
// passable cell. `from` is assumed passable.
bool move_allowed(const GridMap& map, Vertex from, Vertex to);

// True iff every agent's move is allowed, `to` is vertex-collision-free and
// no pair of agents swaps cells. Symmetric in its two configurations.
bool valid_transition(const GridMap& map, const Configuration& from,
                      const Configuration& to);

// Sum over agents of 1 per step, except 0 for an agent staying at its goal.
int step_cost(const Configuration& task_goals, const Configuration& from,
              const Configuration& to);

}  // namespace mapf
