#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "railflow/scenario.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int exit_code(railflow::SolveStatus status) {
  switch (status) {
    case railflow::SolveStatus::optimal: return kExitOptimal;
    case railflow::SolveStatus::infeasible:
    case railflow::SolveStatus::unbounded: return kExitInfeasible;
    case railflow::SolveStatus::iteration_limit: return kExitLimit;
  }
  return kExitInput;
}

void print_errors(const railflow::ScenarioError& e) {
  std::cerr << "error: invalid scenario\n";
  for (const auto& line : e.errors()) std::cerr << "  " << line << "\n";
}

struct SolveOptions {
  std::string scenario;
  std::string capacity_mode;
  bool relax = false;
  std::string export_lp;
  std::string out_dir = ".";
  railflow::Tolerances limits;
};

int solve(const SolveOptions& opt) {
  std::optional<railflow::Scenario> loaded;
  try {
    loaded.emplace(railflow::load_scenario_file(opt.scenario));
  } catch (const railflow::ScenarioError& e) {
    print_errors(e);
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  railflow::Scenario& scenario = *loaded;
  if (!opt.capacity_mode.empty()) {
    const auto mode = railflow::parse_capacity_mode(opt.capacity_mode);
    if (!mode) {
      std::cerr << "error: unknown capacity mode '" << opt.capacity_mode << "'\n";
      return kExitInput;
    }
    scenario.config.capacity_mode = *mode;
  }
  if (opt.relax) scenario.config.relax_integrality = true;

  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  const fs::path out(opt.out_dir);

  std::optional<railflow::RunResult> run;
  try {
    run.emplace(railflow::run(scenario, opt.limits));
  } catch (const railflow::ScenarioError& e) {
    print_errors(e);
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const railflow::RunResult& result = *run;

  for (const auto& w : result.model.warnings()) std::cerr << "warning: " << w << "\n";
  if (!opt.export_lp.empty() && !write_file(opt.export_lp, railflow::export_model_text(result.model))) {
    std::cerr << "error: cannot write " << opt.export_lp << "\n";
    return kExitInput;
  }

  const auto& s = result.solve;
  std::printf("scenario %s\n", result.scenario.name.c_str());
  std::printf("capacity mode %s%s\n", std::string(to_string(result.scenario.config.capacity_mode)).c_str(),
              result.model.integrality_relaxed() ? " (relaxed)" : "");
  std::printf("variables %zu constraints %zu\n", result.model.variables().size(), result.model.constraints().size());
  std::printf("status %s\n", std::string(to_string(s.status)).c_str());

  if (s.status != railflow::SolveStatus::optimal) {
    const fs::path mps = out / (result.scenario.name + ".mps");
    if (write_file(mps, railflow::export_model_text(result.model)))
      std::printf("model written to %s\n", mps.string().c_str());
    if (s.values.empty()) return exit_code(s.status);
  }

  std::printf("objective %.6f\n", s.objective);
  std::printf("iterations %ld nodes %ld gap %.2e time %.3fs\n", s.stats.iterations, s.stats.nodes, s.stats.gap,
              s.stats.seconds);
  double cancelled = 0.0;
  for (const auto& d : result.demand.demands) cancelled += d.cancelled_total;
  std::printf("cancelled trains %.2f\n", cancelled);

  const std::pair<const char*, std::string> reports[] = {
      {"capacity_usage.csv", railflow::report_capacity_csv(result.capacity)},
      {"capacity_by_type.csv", railflow::report_capacity_by_type_csv(result.capacity)},
      {"demand_outcome.csv", railflow::report_demand_csv(result.demand)},
  };
  for (const auto& [name, text] : reports) {
    if (!write_file(out / name, text)) {
      std::cerr << "error: cannot write " << (out / name).string() << "\n";
      return kExitInput;
    }
  }
  std::printf("reports written to %s\n", out.string().c_str());
  return exit_code(s.status);
}

int validate(const std::string& path) {
  try {
    const auto scenario = railflow::load_scenario_file(path);
    std::printf("%s: ok (%zu nodes, %zu links, %zu routes, %zu demands, horizon %d)\n", scenario.name.c_str(),
                scenario.network.node_count(), scenario.network.link_count(), scenario.catalog.route_count(),
                scenario.catalog.demand_count(), scenario.network.horizon());
    return kExitOptimal;
  } catch (const railflow::ScenarioError& e) {
    print_errors(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-expanded railway flow model for capacity restriction scenarios"};
  app.require_subcommand(1);

  SolveOptions opt;
  auto* solve_cmd = app.add_subcommand("solve", "Build and solve a scenario, write CSV reports");
  solve_cmd->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
  solve_cmd->add_option("--capacity-mode", opt.capacity_mode,
                        "basic, single_track_alt1, single_track_alt2 or heterogeneous");
  solve_cmd->add_flag("--relax-integrality", opt.relax, "Solve the LP relaxation");
  solve_cmd->add_option("--export-lp", opt.export_lp, "Write the model in MPS format");
  solve_cmd->add_option("--out-dir", opt.out_dir, "Directory for reports")->capture_default_str();
  solve_cmd->add_option("--max-iterations", opt.limits.max_iterations, "Simplex iteration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--max-nodes", opt.limits.max_nodes, "Branch-and-bound node limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario without solving");
  validate_cmd->add_option("--scenario", validate_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (*solve_cmd) return solve(opt);
  return validate(validate_path);
}
