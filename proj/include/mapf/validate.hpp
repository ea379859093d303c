#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mapf/heuristic.hpp"

namespace mapf {

enum class ViolationKind { vertex, edge, move, endpoint };

struct Violation {
  int timestep = 0;  // vertex: the config's index; move/edge: the index the
                     // transition starts from; endpoint: 0 or the last index
  ViolationKind kind = ViolationKind::move;
  std::vector<int> agents;
};

struct SolutionReport {
  bool valid = false;
  std::vector<Violation> violations;
  long long cost = 0;
  double normalized_cost = 0.0;
  bool normalized_defined = false;
};

// Checks endpoints, per-step moves and vertex/edge collisions; cost is the
// step_cost sum regardless of validity. When tables are supplied the
// normalized cost is filled in for valid solutions.
SolutionReport validate(const Instance& instance,
                        const std::vector<Configuration>& configs,
                        const std::vector<DistanceTable>* tables = nullptr);

struct NormalizedCost {
  double value = 0.0;
  bool degenerate = false;  // every agent started at its goal
};

// cost divided by the sum of per-agent shortest paths from the start; 1.0
// with the degenerate flag when that sum is zero.
NormalizedCost normalized_cost(const Instance& instance, long long cost,
                               const std::vector<DistanceTable>& tables);

struct OracleResult {
  enum class Status { solved, unsolvable, too_large };
  Status status = Status::unsolvable;
  int makespan = 0;        // fewest timesteps, via joint BFS
  long long cost = 0;      // minimum step_cost sum, via uniform-cost search
  std::size_t explored = 0;
};

// Exhaustive search over joint configurations with valid_transition as the
// successor relation. Exact but exponential; exists for tests and the CLI
// `oracle` subcommand only. Aborts with too_large past state_cap states.
OracleResult joint_bfs_oracle(const Instance& instance,
                              std::size_t state_cap = 1000000);

std::string to_string(ViolationKind kind);

}  // namespace mapf
