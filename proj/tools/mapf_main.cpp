#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapf/bench.hpp"
#include "mapf/io.hpp"

namespace {

int cmd_solve(const mapf::RunSpec& spec) {
  const auto records = mapf::run_matrix(spec);
  for (const auto& r : records) {
    std::cerr << r.solver << " n=" << r.n_agents << " -> " << r.outcome
              << " (cost " << r.cost << ", expansions " << r.expansions << ")\n";
  }
  return 0;
}

int cmd_validate(const std::string& map_path, const std::string& scen_path,
                 int agents, const std::string& paths_path) {
  const auto map = mapf::parse_map_file(map_path);
  const auto instance = mapf::parse_scenario_file(scen_path, map, agents);
  const auto tables =
      mapf::build_distance_tables(map, instance.goal_config());
  const auto report =
      mapf::validate_paths_file(instance, tables, paths_path);

  std::cout << "valid: " << (report.valid ? "yes" : "no") << "\n";
  std::cout << "cost: " << report.cost << "\n";
  if (report.normalized_defined) {
    std::cout << "normalized_cost: " << report.normalized_cost << "\n";
  }
  for (const auto& v : report.violations) {
    std::cout << "violation: t=" << v.timestep << " kind="
              << mapf::to_string(v.kind) << " agents=";
    for (std::size_t i = 0; i < v.agents.size(); ++i) {
      std::cout << (i ? "," : "") << v.agents[i];
    }
    std::cout << "\n";
  }
  // Machine-readable summary line.
  std::cout << "csv:valid,cost,violations\n";
  std::cout << "csv:" << (report.valid ? 1 : 0) << ',' << report.cost << ','
            << report.violations.size() << "\n";
  return report.valid ? 0 : 1;
}

int cmd_oracle(const std::string& map_path, const std::string& scen_path,
               int agents, std::size_t cap) {
  const auto map = mapf::parse_map_file(map_path);
  const auto instance = mapf::parse_scenario_file(scen_path, map, agents);
  const auto result = mapf::joint_bfs_oracle(instance, cap);
  switch (result.status) {
    case mapf::OracleResult::Status::solved:
      std::cout << "solved cost=" << result.cost
                << " makespan=" << result.makespan
                << " explored=" << result.explored << "\n";
      return 0;
    case mapf::OracleResult::Status::unsolvable:
      std::cout << "unsolvable explored=" << result.explored << "\n";
      return 2;
    case mapf::OracleResult::Status::too_large:
      std::cout << "too-large cap=" << cap << "\n";
      return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "MAPF solver toolkit: PIBT, LaCAM, Real-Time LaCAM and a naive "
      "replanning baseline on MovingAI-format grids"};
  app.require_subcommand(1);

  // solve
  mapf::RunSpec spec;
  std::vector<int> agents;
  double budget_ms = 0.0;
  long long budget_expansions = 0;
  long long step_limit = 0;
  std::uint64_t seed = 0;
  std::string policy_path;

  auto* solve = app.add_subcommand(
      "solve",
      "Run a solver over a scenario and emit CSV records. Runs execute "
      "serially; wall-clock budget runs rely on that to keep timings clean, "
      "expansion budgets are fully deterministic.");
  solve->add_option("--map", spec.map_path, "MovingAI .map file")->required();
  solve->add_option("--scen", spec.scen_path, "MovingAI .scen file")
      ->required();
  solve->add_option("--agents", agents,
                    "agent counts, e.g. 50 or 50,100,150 (nondecreasing)")
      ->required()
      ->delimiter(',');
  solve->add_option("--solver", spec.solver,
                    "pibt | lacam | rt-lacam | naive-rt-lacam")
      ->required();
  auto* bms = solve->add_option("--budget-ms", budget_ms,
                                "per-iteration wall-clock budget (ms)");
  auto* bexp = solve->add_option("--budget-expansions", budget_expansions,
                                 "per-iteration expansion budget");
  bms->excludes(bexp);
  solve->add_option("--timeout-s", spec.timeout_s,
                    "cumulative planning timeout in seconds (default 60)");
  auto* sl = solve->add_option("--step-limit", step_limit,
                               "executed-step limit (default 10*W*H*N)");
  auto* sd = solve->add_option("--seed", seed,
                               "randomize tie-breaking, reproducibly");
  solve->add_option("--csv", spec.csv_path, "CSV output path (default stdout)");
  solve->add_option("--paths", spec.paths_path,
                    "dump executed paths of successful runs here");
  solve->add_option("--policy", policy_path,
                    "policy table file; ranks actions instead of the "
                    "distance heuristic");

  // validate
  std::string v_map, v_scen, v_paths;
  int v_agents = 0;
  auto* validate = app.add_subcommand(
      "validate", "Check a dumped paths file against a scenario");
  validate->add_option("--map", v_map, "MovingAI .map file")->required();
  validate->add_option("--scen", v_scen, "MovingAI .scen file")->required();
  validate->add_option("--agents", v_agents, "agent count")->required();
  validate->add_option("--paths", v_paths, "paths file to check")->required();

  // oracle
  std::string o_map, o_scen;
  int o_agents = 0;
  std::size_t o_cap = 1000000;
  auto* oracle = app.add_subcommand(
      "oracle",
      "Exhaustive joint-space optimum for small instances (tests/debugging)");
  oracle->add_option("--map", o_map, "MovingAI .map file")->required();
  oracle->add_option("--scen", o_scen, "MovingAI .scen file")->required();
  oracle->add_option("--agents", o_agents, "agent count")->required();
  oracle->add_option("--cap", o_cap, "explored joint-state cap (default 1e6)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      spec.agent_counts = agents;
      if (*bms) spec.budget_ms = budget_ms;
      if (*bexp) spec.budget_expansions = budget_expansions;
      if (*sl) spec.step_limit = step_limit;
      if (*sd) spec.seed = seed;
      if (!policy_path.empty()) spec.policy_path = policy_path;
      return cmd_solve(spec);
    }
    if (validate->parsed()) {
      return cmd_validate(v_map, v_scen, v_agents, v_paths);
    }
    if (oracle->parsed()) {
      return cmd_oracle(o_map, o_scen, o_agents, o_cap);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
