#include "mapf/validate.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace mapf {

namespace {

// Collect agents that break the transition from -> to, split by kind.
void collect_transition_violations(const GridMap& map,
                                   const Configuration& from,
                                   const Configuration& to, int timestep,
                                   std::vector<Violation>& out) {
  const std::size_t n = from.size();

  std::vector<int> bad_moves;
  for (std::size_t i = 0; i < n; ++i) {
    if (!move_allowed(map, from[i], to[i])) {
      bad_moves.push_back(static_cast<int>(i));
    }
  }
  if (!bad_moves.empty()) {
    out.push_back(Violation{timestep, ViolationKind::move, bad_moves});
  }

  std::unordered_map<int, std::size_t> from_owner;
  for (std::size_t i = 0; i < n; ++i) from_owner.emplace(map.index(from[i]), i);
  for (std::size_t i = 0; i < n; ++i) {
    if (to[i] == from[i]) continue;
    const auto it = from_owner.find(map.index(to[i]));
    if (it == from_owner.end()) continue;
    const std::size_t j = it->second;
    if (j > i && to[j] == from[i]) {
      out.push_back(Violation{timestep, ViolationKind::edge,
                              {static_cast<int>(i), static_cast<int>(j)}});
    }
  }
}

void collect_vertex_violations(const GridMap& map, const Configuration& config,
                               int timestep, std::vector<Violation>& out) {
  std::unordered_map<int, std::vector<int>> occupants;
  for (std::size_t i = 0; i < config.size(); ++i) {
    occupants[map.index(config[i])].push_back(static_cast<int>(i));
  }
  for (auto& [cellvalue, agents] : occupants) {
    if (agents.size() > 1) {
      out.push_back(Violation{timestep, ViolationKind::vertex, agents});
    }
  }
}

}  // namespace

SolutionReport validate(const Instance& instance,
                        const std::vector<Configuration>& configs,
                        const std::vector<DistanceTable>* tables) {
  SolutionReport report;
  if (configs.empty()) {
    report.violations.push_back(Violation{0, ViolationKind::endpoint, {}});
    return report;
  }
  const auto& map = instance.map();
  const std::size_t n = instance.start_config().size();

  for (const auto& c : configs) {
    if (c.size() != n) {
      report.violations.push_back(Violation{0, ViolationKind::endpoint, {}});
      return report;
    }
  }

  std::vector<int> off;
  for (std::size_t i = 0; i < n; ++i) {
    if (configs.front()[i] != instance.start_config()[i]) {
      off.push_back(static_cast<int>(i));
    }
  }
  if (!off.empty()) {
    report.violations.push_back(Violation{0, ViolationKind::endpoint, off});
  }
  off.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (configs.back()[i] != instance.goal_config()[i]) {
      off.push_back(static_cast<int>(i));
    }
  }
  if (!off.empty()) {
    report.violations.push_back(
        Violation{static_cast<int>(configs.size()) - 1,
                  ViolationKind::endpoint, off});
  }

  for (std::size_t t = 0; t < configs.size(); ++t) {
    collect_vertex_violations(map, configs[t], static_cast<int>(t),
                              report.violations);
  }
  for (std::size_t t = 0; t + 1 < configs.size(); ++t) {
    collect_transition_violations(map, configs[t], configs[t + 1],
                                  static_cast<int>(t), report.violations);
    report.cost +=
        step_cost(instance.goal_config(), configs[t], configs[t + 1]);
  }

  report.valid = report.violations.empty();
  if (report.valid && tables != nullptr) {
    const auto nc = normalized_cost(instance, report.cost, *tables);
    report.normalized_cost = nc.value;
    report.normalized_defined = true;
  }
  return report;
}

NormalizedCost normalized_cost(const Instance& instance, long long cost,
                               const std::vector<DistanceTable>& tables) {
  const long long denom = distance_sum(instance.start_config(), tables);
  if (denom <= 0) {
    return NormalizedCost{1.0, true};
  }
  return NormalizedCost{static_cast<double>(cost) / static_cast<double>(denom),
                        false};
}

namespace {

// Depth-first product of per-agent moves with incremental vertex/edge
// pruning; calls sink for every valid joint successor.
template <typename Sink>
void enumerate_successors(const GridMap& map, const Configuration& from,
                          Sink&& sink) {
  const std::size_t n = from.size();
  std::vector<Vertex> chosen(n);
  std::unordered_map<int, std::size_t> from_owner;
  for (std::size_t i = 0; i < n; ++i) from_owner.emplace(map.index(from[i]), i);
  std::vector<uint8_t> used(static_cast<std::size_t>(map.cell_count()), 0);

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      sink(Configuration(chosen));
      return;
    }
    std::array<Vertex, 5> cand;
    const int k = neighbor_list(map, from[i], cand);
    for (int c = 0; c < k; ++c) {
      const Vertex v = cand[c];
      const int vc = map.index(v);
      if (used[vc]) continue;
      const auto it = from_owner.find(vc);
      if (it != from_owner.end()) {
        const std::size_t j = it->second;
        if (j < i && j != i && chosen[j] == from[i]) continue;  // swap
      }
      used[vc] = 1;
      chosen[i] = v;
      self(self, i + 1);
      used[vc] = 0;
    }
  };
  rec(rec, 0);
}

}  // namespace

OracleResult joint_bfs_oracle(const Instance& instance,
                              std::size_t state_cap) {
  OracleResult result;
  const auto& map = instance.map();
  const auto& goal = instance.goal_config();

  // Makespan via BFS over joint configurations.
  {
    std::unordered_map<Configuration, int, ConfigurationHash> depth;
    std::queue<Configuration> frontier;
    depth.emplace(instance.start_config(), 0);
    frontier.push(instance.start_config());
    bool found = false;
    while (!frontier.empty() && !found) {
      const Configuration cur = std::move(frontier.front());
      frontier.pop();
      const int d = depth.at(cur);
      if (cur == goal) {
        result.makespan = d;
        found = true;
        break;
      }
      enumerate_successors(map, cur, [&](Configuration succ) {
        if (found || depth.count(succ)) return;
        if (succ == goal) {
          result.makespan = d + 1;
          found = true;
          return;
        }
        depth.emplace(succ, d + 1);
        frontier.push(std::move(succ));
      });
      if (depth.size() > state_cap) {
        result.status = OracleResult::Status::too_large;
        result.explored = depth.size();
        return result;
      }
    }
    result.explored = depth.size();
    if (!found) {
      result.status = OracleResult::Status::unsolvable;
      return result;
    }
  }

  // Minimum total cost via uniform-cost search with zero-cost goal waits.
  {
    std::unordered_map<Configuration, long long, ConfigurationHash> best;
    using Entry = std::pair<long long, Configuration>;
    auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    best.emplace(instance.start_config(), 0);
    frontier.push({0, instance.start_config()});
    while (!frontier.empty()) {
      auto [g, cur] = frontier.top();
      frontier.pop();
      const auto it = best.find(cur);
      if (it == best.end() || it->second < g) continue;  // stale entry
      if (cur == goal) {
        result.status = OracleResult::Status::solved;
        result.cost = g;
        result.explored = std::max(result.explored, best.size());
        return result;
      }
      enumerate_successors(map, cur, [&](Configuration succ) {
        const long long ng = g + step_cost(goal, cur, succ);
        const auto bit = best.find(succ);
        if (bit != best.end() && bit->second <= ng) return;
        best[succ] = ng;
        frontier.push({ng, std::move(succ)});
      });
      if (best.size() > state_cap) {
        result.status = OracleResult::Status::too_large;
        result.explored = best.size();
        return result;
      }
    }
    // BFS already proved solvability, so this is unreachable in practice.
    result.status = OracleResult::Status::unsolvable;
  }
  return result;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::vertex:
      return "vertex";
    case ViolationKind::edge:
      return "edge";
    case ViolationKind::move:
      return "move";
    case ViolationKind::endpoint:
      return "endpoint";
  }
  return "unknown";
}

}  // namespace mapf
