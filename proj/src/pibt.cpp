#include "mapf/pibt.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace mapf {

PriorityState::PriorityState(int n_agents)
    : elapsed_(static_cast<std::size_t>(n_agents), 0) {
  compute_order();
}

PriorityState::PriorityState(std::vector<int> elapsed)
    : elapsed_(std::move(elapsed)) {
  compute_order();
}

void PriorityState::compute_order() {
  order_.resize(elapsed_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(), [&](int a, int b) {
    if (elapsed_[a] != elapsed_[b]) return elapsed_[a] > elapsed_[b];
    return a < b;
  });
}

PriorityState update_priorities(const PriorityState& priorities,
                                const Configuration& new_config,
                                const Configuration& goals) {
  std::vector<int> elapsed(new_config.size());
  for (std::size_t i = 0; i < new_config.size(); ++i) {
    elapsed[i] =
        new_config[i] == goals[i] ? 0 : priorities.elapsed(static_cast<int>(i)) + 1;
  }
  return PriorityState(std::move(elapsed));
}

ConfigGenerator::ConfigGenerator(const GridMap& map, const ActionRanker& ranker)
    : map_(&map),
      ranker_(&ranker),
      occupied_now_(static_cast<std::size_t>(map.cell_count()), -1),
      occupied_next_(static_cast<std::size_t>(map.cell_count()), -1) {}

void ConfigGenerator::reset(const Configuration& config) {
  for (int c : touched_) {
    occupied_now_[c] = -1;
    occupied_next_[c] = -1;
  }
  touched_.clear();
  current_ = &config;
  const std::size_t n = config.size();
  next_.assign(n, Vertex{});
  has_next_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cell(config[i]);
    occupied_now_[c] = static_cast<int>(i);
    touched_.push_back(c);
  }
}

bool ConfigGenerator::plan_agent(int agent) {
  const Vertex pos = (*current_)[agent];
  std::array<Vertex, 5> cand;
  const int n = neighbor_list(*map_, pos, cand);
  ranker_->rank(agent, pos, std::span<Vertex>(cand.data(), n));

  for (int k = 0; k < n; ++k) {
    const Vertex u = cand[k];
    const int uc = cell(u);
    if (occupied_next_[uc] != -1) continue;  // vertex conflict

    const int other = occupied_now_[uc];
    // Edge conflict: the current occupant of u already moves into our cell.
    if (other != -1 && has_next_[other] && next_[other] == pos) continue;

    occupied_next_[uc] = agent;
    touched_.push_back(uc);
    next_[agent] = u;
    has_next_[agent] = 1;

    if (other == -1 || u == pos) return true;
    // Priority inheritance: the blocking agent must plan first; on failure
    // it reclaims its cell (our reservation of u is overwritten) and we
    // backtrack to the next candidate.
    if (!has_next_[other] && !plan_agent(other)) continue;
    return true;
  }

  // No candidate worked: stay put, displacing any reservation of our cell.
  const int pc = cell(pos);
  occupied_next_[pc] = agent;
  touched_.push_back(pc);
  next_[agent] = pos;
  has_next_[agent] = 1;
  return false;
}

std::optional<Configuration> ConfigGenerator::generate(
    const Configuration& config, std::span<const Constraint> constraints,
    const PriorityState& priorities) {
  assert(static_cast<int>(config.size()) == priorities.agent_count());
  reset(config);

  for (const auto& c : constraints) {
    assert(c.agent >= 0 && c.agent < static_cast<int>(config.size()));
    assert(move_allowed(*map_, config[c.agent], c.vertex));
    const int uc = cell(c.vertex);
    if (occupied_next_[uc] != -1) return std::nullopt;  // vertex conflict
    // Edge conflict between two constrained agents.
    const int pc = cell(config[c.agent]);
    if (occupied_next_[pc] != -1 && occupied_now_[uc] != -1 &&
        occupied_next_[pc] == occupied_now_[uc]) {
      return std::nullopt;
    }
    occupied_next_[uc] = c.agent;
    touched_.push_back(uc);
    next_[c.agent] = c.vertex;
    has_next_[c.agent] = 1;
  }

  for (int agent : priorities.order()) {
    if (!has_next_[agent] && !plan_agent(agent)) return std::nullopt;
  }

  std::vector<Vertex> out(next_.begin(),
                          next_.begin() + static_cast<long>(config.size()));
  Configuration result(std::move(out));
  assert(valid_transition(*map_, config, result));
  return result;
}

}  // namespace mapf
