#include "mapf/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace mapf {

namespace {

// getline that strips trailing CR and counts lines.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool has_prefix(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

int parse_header_int(const std::string& line, const std::string& key,
                     int line_no) {
  std::istringstream ss(line);
  std::string word;
  long long value = 0;
  if (!(ss >> word >> value) || word != key || value <= 0) {
    throw ParseError(line_no, "expected `" + key + " <positive integer>`");
  }
  return static_cast<int>(value);
}

}  // namespace

GridMap parse_map(std::istream& in) {
  int line_no = 0;
  std::string line;

  if (!next_line(in, line, line_no) || !has_prefix(line, "type")) {
    throw ParseError(line_no == 0 ? 1 : line_no, "expected `type` header");
  }
  if (!next_line(in, line, line_no)) {
    throw ParseError(line_no + 1, "expected `height` header");
  }
  const int height = parse_header_int(line, "height", line_no);
  if (!next_line(in, line, line_no)) {
    throw ParseError(line_no + 1, "expected `width` header");
  }
  const int width = parse_header_int(line, "width", line_no);
  if (!next_line(in, line, line_no) || line != "map") {
    throw ParseError(line_no == 0 ? 1 : line_no, "expected `map` header");
  }

  std::vector<uint8_t> passable;
  passable.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    if (!next_line(in, line, line_no)) {
      throw ParseError(line_no + 1, "unexpected end of file: expected " +
                                        std::to_string(height) + " map rows");
    }
    if (static_cast<int>(line.size()) != width) {
      throw ParseError(line_no, "row has " + std::to_string(line.size()) +
                                    " cells, expected " +
                                    std::to_string(width));
    }
    for (char c : line) {
      switch (c) {
        case '.':
        case 'G':
          passable.push_back(1);
          break;
        case '@':
        case 'T':
        case 'O':
        case 'W':
          passable.push_back(0);
          break;
        default:
          throw ParseError(line_no,
                           std::string("unknown cell character `") + c + "`");
      }
    }
  }
  return GridMap(width, height, std::move(passable));
}

GridMap parse_map_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open map file: " + path);
  return parse_map(f);
}

std::string serialize_map(const GridMap& map) {
  std::ostringstream out;
  out << "type octile\n";
  out << "height " << map.height() << "\n";
  out << "width " << map.width() << "\n";
  out << "map\n";
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      out << (map.passable({x, y}) ? '.' : '@');
    }
    out << "\n";
  }
  return out.str();
}

Instance parse_scenario(std::istream& in, const GridMap& map, int n_agents) {
  if (n_agents <= 0) {
    throw std::invalid_argument("parse_scenario: n_agents must be positive");
  }
  int line_no = 0;
  std::string line;
  if (!next_line(in, line, line_no) || !has_prefix(line, "version")) {
    throw ParseError(line_no == 0 ? 1 : line_no, "expected `version` header");
  }

  std::vector<AgentTask> tasks;
  std::unordered_set<int> seen_starts;
  std::unordered_set<int> seen_goals;
  while (static_cast<int>(tasks.size()) < n_agents &&
         next_line(in, line, line_no)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int bucket = 0, w = 0, h = 0;
    std::string map_name;
    Vertex start, goal;
    double optimal = 0.0;
    if (!(ss >> bucket >> map_name >> w >> h >> start.x >> start.y >> goal.x >>
          goal.y >> optimal)) {
      throw ParseError(line_no, "expected 9 whitespace-separated fields");
    }
    const int agent = static_cast<int>(tasks.size());
    if (!map.in_bounds(start) || !map.in_bounds(goal)) {
      throw ParseError(line_no, "agent " + std::to_string(agent) +
                                    ": coordinates out of bounds");
    }
    if (!map.passable(start)) {
      throw ParseError(line_no, "agent " + std::to_string(agent) +
                                    ": start is on a blocked cell");
    }
    if (!map.passable(goal)) {
      throw ParseError(line_no, "agent " + std::to_string(agent) +
                                    ": goal is on a blocked cell");
    }
    if (!seen_starts.insert(map.index(start)).second) {
      throw ParseError(line_no, "agent " + std::to_string(agent) +
                                    ": duplicate start location");
    }
    if (!seen_goals.insert(map.index(goal)).second) {
      throw ParseError(line_no, "agent " + std::to_string(agent) +
                                    ": duplicate goal location");
    }
    tasks.push_back(AgentTask{agent, start, goal});
  }
  if (static_cast<int>(tasks.size()) < n_agents) {
    throw ParseError(line_no, "scenario has only " +
                                  std::to_string(tasks.size()) +
                                  " rows, requested " +
                                  std::to_string(n_agents) + " agents");
  }
  return Instance(map, std::move(tasks));
}

Instance parse_scenario_file(const std::string& path, const GridMap& map,
                             int n_agents) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(f, map, n_agents);
}

}  // namespace mapf
