#include "railflow/formulation.hpp"

namespace railflow {

std::vector<double> build_objective(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                    const ModelConfig& config) {
  std::vector<double> c(model.variables().size(), 0.0);
  auto at = [&](const VariableRef& ref) -> double& { return c[static_cast<std::size_t>(model.column(ref))]; };
  const int T = model.horizon();

  long long volume = 0;
  for (std::size_t di = 0; di < catalog.demand_count(); ++di) {
    const DemandId d(static_cast<int>(di));
    volume += catalog.demand_total(d);
    at(VariableRef::cancel_total(d)) += config.cost_cancel;
    for (int t = 0; t <= T; ++t) at(VariableRef::post(d, t)) += config.cost_post;
  }
  if (volume == 0) return c;

  // Mean travel time: period-weighted arrivals minus departures over all
  // requested volume. A route serving several demands is counted once per demand.
  const double scale = 1.0 / static_cast<double>(volume);
  for (std::size_t di = 0; di < catalog.demand_count(); ++di)
    for (RouteId r : catalog.implementing_routes(DemandId(static_cast<int>(di))))
      for (int t = 1; t <= T; ++t) {
        at(VariableRef::arr(r, t)) += t * scale;
        at(VariableRef::dep(r, t)) -= t * scale;
      }
  return c;
}

std::vector<double> build_flow_tiebreak(const TimeExpandedModel& model, const ServiceCatalog& catalog) {
  std::vector<double> c(model.variables().size(), 0.0);
  const auto& layout = model.layout();
  if (catalog.route_count() == 0) return c;
  auto fill = [&](VariableKind kind, double w) {
    const auto& b = layout.block(kind);
    for (int i = 0; i < b.size(); ++i) c[static_cast<std::size_t>(b.offset + i)] = w;
  };
  // Cross as early as pacing allows, then move rather than wait.
  fill(VariableKind::next, 1.0);
  fill(VariableKind::ni, 2.0);
  return c;
}

}  // namespace railflow
