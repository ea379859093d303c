#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "mapf/core.hpp"

namespace mapf {

// Raised on malformed .map/.scen/.paths input; carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// MovingAI .map format: `type`, `height H`, `width W`, `map`, then H rows of
// W cells. '.' and 'G' are passable; '@', 'T', 'O', 'W' are blocked.
GridMap parse_map(std::istream& in);
GridMap parse_map_file(const std::string& path);

// Inverse of parse_map up to cell classification ('.'/'@' only).
std::string serialize_map(const GridMap& map);

// MovingAI .scen format: a `version` line, then one task per row
// (bucket, map, width, height, start_x, start_y, goal_x, goal_y, optimal).
// The first n_agents rows are used in file order.
Instance parse_scenario(std::istream& in, const GridMap& map, int n_agents);
Instance parse_scenario_file(const std::string& path, const GridMap& map,
                             int n_agents);

}  // namespace mapf
