#include "mapf/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "mapf/io.hpp"

namespace mapf {

namespace {

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", s);
  return buf;
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", r);
  return buf;
}

std::string budget_label(const RunSpec& spec) {
  if (spec.budget_expansions) {
    return "exp:" + std::to_string(*spec.budget_expansions);
  }
  if (spec.budget_ms) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ms:%.3f", *spec.budget_ms);
    return buf;
  }
  return "none";
}

bool is_realtime_solver(const std::string& solver) {
  return solver == "rt-lacam" || solver == "naive-rt-lacam";
}

std::string rt_outcome(RtStatus status) {
  switch (status) {
    case RtStatus::success:
      return "success";
    case RtStatus::timeout:
      return "timeout";
    case RtStatus::unsolvable:
      return "unsolvable";
    case RtStatus::step_limit:
      return "step-limit";
  }
  return "unknown";
}

std::string full_outcome(SolveStatus status) {
  switch (status) {
    case SolveStatus::success:
      return "success";
    case SolveStatus::timeout:
      return "timeout";
    case SolveStatus::unsolvable:
      return "unsolvable";
  }
  return "unknown";
}

}  // namespace

std::string csv_header() {
  return "map,scen,n_agents,solver,budget,seed,outcome,total_planning_time_s,"
         "heuristic_build_time_s,iterations,expansions,cost,normalized_cost";
}

std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.map_path << ',' << r.scen_path << ',' << r.n_agents << ','
      << r.solver << ',' << r.budget << ',' << r.seed << ',' << r.outcome
      << ',' << r.total_planning_time_s << ',' << r.heuristic_build_time_s
      << ',' << r.iterations << ',' << r.expansions << ',' << r.cost << ','
      << r.normalized_cost;
  return out.str();
}

std::vector<RunRecord> run_matrix(const RunSpec& spec) {
  if (spec.agent_counts.empty()) {
    throw std::invalid_argument("run_matrix: no agent counts");
  }
  for (std::size_t i = 0; i < spec.agent_counts.size(); ++i) {
    if (spec.agent_counts[i] <= 0 ||
        (i > 0 && spec.agent_counts[i] < spec.agent_counts[i - 1])) {
      throw std::invalid_argument(
          "run_matrix: agent counts must be positive and nondecreasing");
    }
  }
  if (spec.budget_ms && spec.budget_expansions) {
    throw std::invalid_argument("run_matrix: choose one budget kind");
  }
  if (is_realtime_solver(spec.solver) && !spec.budget_ms &&
      !spec.budget_expansions) {
    throw std::invalid_argument("run_matrix: real-time solvers need a budget");
  }
  if (spec.solver != "pibt" && spec.solver != "lacam" &&
      !is_realtime_solver(spec.solver)) {
    throw std::invalid_argument("run_matrix: unknown solver " + spec.solver);
  }

  const GridMap map = parse_map_file(spec.map_path);
  std::optional<PolicyTable> policy;
  if (spec.policy_path) policy = PolicyTable::load_file(*spec.policy_path);

  // Deterministic mode: wall-clock columns would differ between identical
  // re-runs, so they are masked unless the run timed out.
  const bool deterministic = !spec.budget_ms.has_value();

  std::vector<RunRecord> records;
  for (int n : spec.agent_counts) {
    const Instance instance =
        parse_scenario_file(spec.scen_path, map, n);

    const auto h0 = std::chrono::steady_clock::now();
    const auto tables = build_distance_tables(map, instance.goal_config());
    const double heuristic_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - h0)
            .count();

    const DistanceRanker distance_ranker(tables, spec.seed);
    std::optional<PolicyRanker> policy_ranker;
    if (policy) policy_ranker.emplace(*policy, tables);
    const ActionRanker& ranker =
        policy ? static_cast<const ActionRanker&>(*policy_ranker)
               : static_cast<const ActionRanker&>(distance_ranker);

    RunRecord record;
    record.map_path = spec.map_path;
    record.scen_path = spec.scen_path;
    record.n_agents = n;
    record.solver = spec.solver;
    record.budget = budget_label(spec);
    record.seed = spec.seed ? std::to_string(*spec.seed) : "none";

    std::vector<Configuration> executed;
    double planning_s = 0.0;

    if (spec.solver == "lacam") {
      const auto res =
          solve_full_horizon(instance, ranker, tables, spec.timeout_s);
      record.outcome = full_outcome(res.status);
      record.iterations = 1;
      record.expansions = res.expansions;
      planning_s = res.wall_s;
      if (res.status == SolveStatus::success) executed = res.solution;
    } else if (spec.solver == "pibt") {
      const auto res =
          run_pibt(instance, ranker, tables, spec.timeout_s, spec.step_limit);
      record.outcome = rt_outcome(res.status);
      record.iterations =
          static_cast<long long>(res.trace.per_iteration.size());
      record.expansions = 0;
      planning_s = res.total_planning_s;
      if (res.status == RtStatus::success) executed = res.trace.configs;
    } else {
      RtOptions options;
      options.budget = spec.budget_expansions
                           ? ExpansionBudget::expansions(*spec.budget_expansions)
                           : ExpansionBudget::wall_clock_ms(*spec.budget_ms);
      options.cumulative_timeout_s = spec.timeout_s;
      options.step_limit = spec.step_limit;
      const auto res = spec.solver == "rt-lacam"
                           ? run_realtime(instance, ranker, tables, options)
                           : run_naive_realtime(instance, ranker, tables,
                                                options);
      record.outcome = rt_outcome(res.status);
      record.iterations =
          static_cast<long long>(res.trace.per_iteration.size());
      record.expansions = res.total_expansions;
      planning_s = res.total_planning_s;
      if (res.status == RtStatus::success) executed = res.trace.configs;
    }

    if (record.outcome == "timeout") {
      // Timed-out runs are accounted at the full cumulative timeout.
      record.total_planning_time_s = format_seconds(spec.timeout_s);
    } else {
      record.total_planning_time_s =
          deterministic ? "na" : format_seconds(planning_s);
    }
    record.heuristic_build_time_s =
        deterministic ? "na" : format_seconds(heuristic_s);

    if (record.outcome == "success") {
      const auto report = validate(instance, executed, &tables);
      if (!report.valid) {
        throw std::logic_error(
            "run_matrix: solver reported success but the trace fails "
            "validation");
      }
      record.cost = std::to_string(report.cost);
      record.normalized_cost =
          format_ratio(normalized_cost(instance, report.cost, tables).value);
      if (!spec.paths_path.empty()) {
        std::string out = spec.paths_path;
        if (spec.agent_counts.size() > 1) out += "." + std::to_string(n);
        dump_paths_file(executed, out);
      }
    } else {
      record.cost = "na";
      record.normalized_cost = "na";
    }
    records.push_back(std::move(record));
  }

  std::ostringstream csv;
  csv << csv_header() << "\n";
  for (const auto& r : records) csv << to_csv_row(r) << "\n";
  if (spec.csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(spec.csv_path);
    if (!f) throw std::runtime_error("cannot write CSV: " + spec.csv_path);
    f << csv.str();
  }
  return records;
}

void dump_paths(const std::vector<Configuration>& configs, std::ostream& out) {
  if (configs.empty()) {
    throw std::invalid_argument("dump_paths: empty trace");
  }
  for (std::size_t t = 0; t < configs.size(); ++t) {
    out << t << ':';
    for (const auto& v : configs[t]) out << '(' << v.x << ',' << v.y << ')';
    out << '\n';
  }
}

void dump_paths_file(const std::vector<Configuration>& configs,
                     const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write paths file: " + path);
  dump_paths(configs, f);
}

std::vector<Configuration> load_paths(std::istream& in) {
  std::vector<Configuration> configs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(line_no, "expected `t:(x,y)...`");
    }
    long long t = 0;
    try {
      t = std::stoll(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad timestep index");
    }
    if (t != static_cast<long long>(configs.size())) {
      throw ParseError(line_no, "timesteps must be consecutive from 0");
    }
    std::vector<Vertex> positions;
    std::size_t pos = colon + 1;
    while (pos < line.size()) {
      if (line[pos] != '(') throw ParseError(line_no, "expected `(`");
      const auto comma = line.find(',', pos);
      const auto close = line.find(')', pos);
      if (comma == std::string::npos || close == std::string::npos ||
          comma > close) {
        throw ParseError(line_no, "malformed coordinate pair");
      }
      try {
        Vertex v;
        v.x = std::stoi(line.substr(pos + 1, comma - pos - 1));
        v.y = std::stoi(line.substr(comma + 1, close - comma - 1));
        positions.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed coordinate pair");
      }
      pos = close + 1;
    }
    if (positions.empty()) throw ParseError(line_no, "row has no positions");
    if (!configs.empty() && positions.size() != configs.front().size()) {
      throw ParseError(line_no, "inconsistent agent count");
    }
    configs.push_back(Configuration(std::move(positions)));
  }
  if (configs.empty()) throw ParseError(line_no, "empty paths file");
  return configs;
}

std::vector<Configuration> load_paths_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open paths file: " + path);
  return load_paths(f);
}

SolutionReport validate_paths_file(const Instance& instance,
                                   const std::vector<DistanceTable>& tables,
                                   const std::string& paths_path) {
  const auto configs = load_paths_file(paths_path);
  if (!configs.empty() && configs.front().size() !=
                              static_cast<std::size_t>(instance.agent_count())) {
    throw std::runtime_error("paths file agent count does not match scenario");
  }
  return validate(instance, configs, &tables);
}

}  // namespace mapf
