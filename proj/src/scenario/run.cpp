#include "railflow/scenario.hpp"

namespace railflow {

RunResult run(const Scenario& scenario, const Tolerances& tol) {
  Scenario edited = apply_tcr(scenario, scenario.tcr_overrides);
  edited.tcr_overrides.clear();
  TimeExpandedModel model = build_model(edited.network, edited.catalog, edited.config);
  SolveResult solve = solve_mip(model, tol);
  CapacityUsageReport capacity;
  DemandOutcomeReport demand;
  if (!solve.values.empty()) {
    capacity = capacity_usage(model, edited, solve.values);
    demand = demand_outcome(model, edited, solve.values);
  }
  return RunResult{std::move(edited), std::move(model), std::move(solve), std::move(capacity), std::move(demand)};
}

}  // namespace railflow
