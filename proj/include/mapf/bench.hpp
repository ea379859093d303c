#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mapf/realtime.hpp"
#include "mapf/validate.hpp"

namespace mapf {

// One solver x budget x instance sweep request.
struct RunSpec {
  std::string map_path;
  std::string scen_path;
  std::vector<int> agent_counts;        // positive, nondecreasing
  std::string solver;                   // pibt | lacam | rt-lacam | naive-rt-lacam
  std::optional<double> budget_ms;      // exactly one budget for rt solvers
  std::optional<long long> budget_expansions;
  double timeout_s = 60.0;              // cumulative planning timeout
  std::optional<long long> step_limit;
  std::optional<std::uint64_t> seed;    // randomized tie-breaking when set
  std::optional<std::string> policy_path;  // PolicyTable for the ranker
  std::string csv_path;                 // empty -> stdout
  std::string paths_path;               // empty -> no trace dump
};

struct RunRecord {
  std::string map_path;
  std::string scen_path;
  int n_agents = 0;
  std::string solver;
  std::string budget;   // "exp:K", "ms:X" or "none"
  std::string seed;     // integer or "none"
  std::string outcome;  // success | timeout | unsolvable | step-limit
  // Wall-clock fields are "na" under expansion budgets so that re-running a
  // deterministic configuration reproduces the CSV byte for byte; timed-out
  // runs always record the configured cumulative timeout.
  std::string total_planning_time_s;
  std::string heuristic_build_time_s;
  long long iterations = 0;
  long long expansions = 0;
  std::string cost;             // integer, or "na" for failed runs
  std::string normalized_cost;  // %.6f, or "na"
};

std::string csv_header();
std::string to_csv_row(const RunRecord& record);

// Executes the sweep: one run per agent count, CSV written to csv_path (or
// stdout), per-run traces dumped next to paths_path when requested. Every
// reported success is re-checked by the validator before being recorded.
// Runs execute serially; wall-clock budgets depend on it.
std::vector<RunRecord> run_matrix(const RunSpec& spec);

// Path trace format: one line per timestep, `t:(x0,y0)(x1,y1)...`.
void dump_paths(const std::vector<Configuration>& configs, std::ostream& out);
void dump_paths_file(const std::vector<Configuration>& configs,
                     const std::string& path);
std::vector<Configuration> load_paths(std::istream& in);
std::vector<Configuration> load_paths_file(const std::string& path);

// Exit-code style check of a dumped trace against an instance.
SolutionReport validate_paths_file(const Instance& instance,
                                   const std::vector<DistanceTable>& tables,
                                   const std::string& paths_path);

}  // namespace mapf
