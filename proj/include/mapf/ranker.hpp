#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <unordered_map>

#include "mapf/heuristic.hpp"

namespace mapf {

// Orders the candidate next cells of one agent, most preferred first.
// Implementations must permute `candidates` in place and nothing else.
class ActionRanker {
 public:
  virtual ~ActionRanker() = default;
  virtual void rank(int agent, Vertex current,
                    std::span<Vertex> candidates) const = 0;
};

// Greedy ranking by ascending distance-to-goal. Ties keep the fixed action
// order by default, which is fully deterministic but can lock two agents
// into a periodic displacement dance in congested endgames. With a seed,
// ties are broken by tie-breakers drawn freshly on every call, which mixes
// those cycles away; runs remain reproducible because the draw sequence is
// a pure function of the seed and the call order. A seeded ranker is owned
// by one search session and is not shareable across threads.
class DistanceRanker : public ActionRanker {
 public:
  explicit DistanceRanker(const std::vector<DistanceTable>& tables,
                          std::optional<std::uint64_t> seed = std::nullopt);

  void rank(int agent, Vertex current,
            std::span<Vertex> candidates) const override;

 private:
  const std::vector<DistanceTable>* tables_;
  bool seeded_;
  mutable std::uint64_t state_;
};

// Per-(agent, cell) action weights in the fixed action order
// (stay, -y, +x, +y, -x). Text format, one entry per line:
//   agent_id x y w_stay w_up w_right w_down w_left
class PolicyTable {
 public:
  static PolicyTable load(std::istream& in);
  static PolicyTable load_file(const std::string& path);

  void set(int agent, Vertex v, const std::array<double, 5>& weights);
  const std::array<double, 5>* lookup(int agent, Vertex v) const;
  std::size_t size() const { return weights_.size(); }

 private:
  static std::uint64_t key(int agent, Vertex v);
  std::unordered_map<std::uint64_t, std::array<double, 5>> weights_;
};

// Ranks candidates by descending policy weight of the action leading to
// them; (agent, cell) pairs absent from the table fall back to distance
// ranking. This is the CS-PIBT hookup: any one-step action preference can
// drive the generator while PIBT keeps the joint step collision-free.
class PolicyRanker : public ActionRanker {
 public:
  PolicyRanker(const PolicyTable& policy,
               const std::vector<DistanceTable>& fallback_tables)
      : policy_(&policy), fallback_(fallback_tables) {}

  void rank(int agent, Vertex current,
            std::span<Vertex> candidates) const override;

 private:
  const PolicyTable* policy_;
  DistanceRanker fallback_;
};

}  // namespace mapf
