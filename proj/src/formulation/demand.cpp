#include "names.hpp"
#include "railflow/formulation.hpp"

namespace railflow {

using detail::num;
using detail::RowBuilder;
using detail::tagged;

std::vector<LinearConstraint> emit_demand_layer(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                                const ModelConfig& config) {
  std::vector<LinearConstraint> rows;
  const int T = model.horizon();

  for (std::size_t di = 0; di < catalog.demand_count(); ++di) {
    const DemandId d(static_cast<int>(di));
    const Demand& demand = catalog.demand(d);
    const auto routes = catalog.implementing_routes(d);
    const double total = static_cast<double>(catalog.demand_total(d));

    rows.push_back(detail::fix_zero(model, "Demand1", tagged("Demand1", {{"d", demand.name}}), VariableRef::post(d, 0)));
    rows.push_back(detail::fix_zero(model, "Demand2", tagged("Demand2", {{"d", demand.name}}), VariableRef::post(d, T)));

    // Departures + carried-forward postponement balance the requested volume.
    for (int t = 1; t <= T; ++t) {
      RowBuilder b(model, "Departure3", tagged("Departure3", {{"d", demand.name}, {"t", num(t)}}));
      for (RouteId r : routes) b.add(VariableRef::dep(r, t), 1.0);
      b.add(VariableRef::post(d, t), 1.0);
      b.add(VariableRef::post(d, t - 1), -1.0);
      b.add(VariableRef::cancel_t(d, t), 1.0);
      rows.push_back(b.finish(Relation::equal, static_cast<double>(demand.volumes[static_cast<std::size_t>(t - 1)])));
    }

    {
      RowBuilder b(model, "Cancel1", tagged("Cancel1", {{"d", demand.name}}));
      for (int t = 1; t <= T; ++t) b.add(VariableRef::cancel_t(d, t), 1.0);
      b.add(VariableRef::cancel_total(d), -1.0);
      rows.push_back(b.finish(Relation::equal, 0.0));
    }
    {
      RowBuilder b(model, "Cancel2", tagged("Cancel2", {{"d", demand.name}}));
      for (int t = 1; t <= T; ++t)
        for (RouteId r : routes) b.add(VariableRef::dep(r, t), 1.0);
      b.add(VariableRef::cancel_total(d), 1.0);
      rows.push_back(b.finish(Relation::equal, total));
    }
    if (config.emit_cancel3) {
      RowBuilder b(model, "Cancel3", tagged("Cancel3", {{"d", demand.name}}));
      for (int t = 1; t <= T; ++t)
        for (RouteId r : routes) b.add(VariableRef::arr(r, t), 1.0);
      b.add(VariableRef::cancel_total(d), 1.0);
      rows.push_back(b.finish(Relation::equal, total));
    }
  }
  return rows;
}

}  // namespace railflow
