#include "mapf/ranker.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mapf {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Index of the move cur -> cand in the fixed action order; -1 if not a
// unit move or stay.
int action_index(Vertex cur, Vertex cand) {
  const int dx = cand.x - cur.x;
  const int dy = cand.y - cur.y;
  if (dx == 0 && dy == 0) return 0;
  if (dx == 0 && dy == -1) return 1;
  if (dx == 1 && dy == 0) return 2;
  if (dx == 0 && dy == 1) return 3;
  if (dx == -1 && dy == 0) return 4;
  return -1;
}

}  // namespace

DistanceRanker::DistanceRanker(const std::vector<DistanceTable>& tables,
                               std::optional<std::uint64_t> seed)
    : tables_(&tables), seeded_(seed.has_value()), state_(seed.value_or(0)) {}

void DistanceRanker::rank(int agent, Vertex current,
                          std::span<Vertex> candidates) const {
  (void)current;
  const auto& table = (*tables_)[agent];
  if (seeded_) {
    std::array<std::pair<std::uint64_t, Vertex>, 5> keyed;
    const std::size_t n = candidates.size();
    for (std::size_t i = 0; i < n; ++i) {
      keyed[i] = {splitmix64(state_), candidates[i]};
    }
    std::stable_sort(keyed.begin(), keyed.begin() + n,
                     [&](const auto& a, const auto& b) {
                       const int da = table.dist(a.second);
                       const int db = table.dist(b.second);
                       if (da != db) return da < db;
                       return a.first < b.first;
                     });
    for (std::size_t i = 0; i < n; ++i) candidates[i] = keyed[i].second;
  } else {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](Vertex a, Vertex b) {
                       return table.dist(a) < table.dist(b);
                     });
  }
}

std::uint64_t PolicyTable::key(int agent, Vertex v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(agent))
          << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.y)) << 20) |
         static_cast<std::uint32_t>(v.x);
}

void PolicyTable::set(int agent, Vertex v,
                      const std::array<double, 5>& weights) {
  weights_[key(agent, v)] = weights;
}

const std::array<double, 5>* PolicyTable::lookup(int agent, Vertex v) const {
  const auto it = weights_.find(key(agent, v));
  return it == weights_.end() ? nullptr : &it->second;
}

PolicyTable PolicyTable::load(std::istream& in) {
  PolicyTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int agent = 0;
    Vertex v;
    std::array<double, 5> w{};
    if (!(ss >> agent >> v.x >> v.y >> w[0] >> w[1] >> w[2] >> w[3] >> w[4])) {
      throw std::runtime_error("policy table line " + std::to_string(line_no) +
                               ": expected `agent x y` and 5 weights");
    }
    std::string extra;
    if (ss >> extra) {
      throw std::runtime_error("policy table line " + std::to_string(line_no) +
                               ": trailing fields");
    }
    if (agent < 0 || v.x < 0 || v.y < 0) {
      throw std::runtime_error("policy table line " + std::to_string(line_no) +
                               ": negative agent id or coordinate");
    }
    for (double x : w) {
      if (!(x >= 0.0)) {
        throw std::runtime_error("policy table line " +
                                 std::to_string(line_no) +
                                 ": weights must be nonnegative");
      }
    }
    table.set(agent, v, w);
  }
  return table;
}

PolicyTable PolicyTable::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open policy table: " + path);
  return load(f);
}

void PolicyRanker::rank(int agent, Vertex current,
                        std::span<Vertex> candidates) const {
  const auto* weights = policy_->lookup(agent, current);
  if (weights == nullptr) {
    fallback_.rank(agent, current, candidates);
    return;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Vertex a, Vertex b) {
                     const int ia = action_index(current, a);
                     const int ib = action_index(current, b);
                     return (*weights)[ia] > (*weights)[ib];
                   });
}

}  // namespace mapf
