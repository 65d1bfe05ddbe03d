#include <cmath>

#include "names.hpp"
#include "railflow/formulation.hpp"

namespace railflow {

using detail::num;
using detail::RowBuilder;
using detail::tagged;

double aggregate_increment(double aggregate, int k) {
  if (k < 0) return 0.0;
  // Durations accumulated from sums of fractions land a few ulps off whole
  // numbers; treat those as whole.
  const double nearest = std::round(aggregate);
  if (std::abs(aggregate - nearest) < 1e-9) aggregate = nearest;
  const double lo = std::floor(aggregate);
  const double hi = std::ceil(aggregate);

  if (k == 0) return std::max(1.0 - aggregate, 0.0);
  if (lo == hi) return static_cast<double>(k) == lo ? 1.0 : 0.0;  // whole volume one shift later
  if (static_cast<double>(k) == lo) return hi - aggregate;
  if (static_cast<double>(k) == hi) return aggregate - lo;
  return 0.0;
}

std::vector<LinearConstraint> emit_aggregates(const TimeExpandedModel& model, const Network& network,
                                              const ServiceCatalog& catalog) {
  std::vector<LinearConstraint> rows;
  const int T = model.horizon();

  for (std::size_t ri = 0; ri < catalog.route_count(); ++ri) {
    const RouteId r(static_cast<int>(ri));
    const std::string& rn = catalog.route(r).name;
    const auto aggregate = catalog.route_aggregate(r);

    for (const auto& nd : network.nodes()) {
      const NodeId node = nd.id;
      const std::string& name = nd.name;
      rows.push_back(detail::fix_zero(model, "Aggregate1", tagged("Aggregate1", {{"n", name}, {"r", rn}}),
                                      VariableRef::aggr(node, 0, r)));
      const int pos = catalog.node_position(r, node);
      if (pos < 0) {
        for (int t = 1; t <= T; ++t)
          rows.push_back(detail::fix_zero(model, "Aggregate2.1",
                                          tagged("Aggregate2.1", {{"n", name}, {"t", num(t)}, {"r", rn}}),
                                          VariableRef::aggr(node, t, r)));
        continue;
      }

      const double d_aggr = aggregate[static_cast<std::size_t>(pos)];
      for (int t = 1; t <= T; ++t) {
        // aggr_t = aggr_{t-1} + departures weighted by the share of their
        // evenly spread volume that can have reached the node by the end of t.
        RowBuilder b(model, "Aggregate2.2", tagged("Aggregate2.2", {{"n", name}, {"t", num(t)}, {"r", rn}}));
        b.add(VariableRef::aggr(node, t, r), 1.0);
        b.add(VariableRef::aggr(node, t - 1, r), -1.0);
        for (int k = 0; k < t; ++k) {
          const double w = aggregate_increment(d_aggr, k);
          if (w != 0.0) b.add(VariableRef::dep(r, t - k), -w);
        }
        rows.push_back(b.finish(Relation::equal, 0.0));
      }

      for (int t = 1; t <= T; ++t) {
        const char* family = t == 1 ? "Aggregate3" : "Aggregate4";
        RowBuilder b(model, family, tagged(family, {{"n", name}, {"t", num(t)}, {"r", rn}}));
        for (int s = 1; s <= t; ++s) b.add(VariableRef::in(node, s, r), 1.0);
        b.add(VariableRef::aggr(node, t, r), -1.0);
        rows.push_back(b.finish(Relation::less_equal, 0.0));
      }
    }
  }
  return rows;
}

std::vector<LinearConstraint> emit_arrival(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                           const ModelConfig& config) {
  std::vector<LinearConstraint> rows;
  const int T = model.horizon();
  for (std::size_t ri = 0; ri < catalog.route_count(); ++ri) {
    const RouteId r(static_cast<int>(ri));
    const Route& route = catalog.route(r);
    const NodeId sink = route.destination;
    const double slack = config.arrival_slack_for(r);
    for (int t = 1; t <= T; ++t) {
      // arr_t >= cumarr_t - cumarr_{t-1} - S_r with cumarr_t = sum_{s<=t} in_s at the sink.
      RowBuilder b(model, "Arrival1", tagged("Arrival1", {{"r", route.name}, {"t", num(t)}}));
      b.add(VariableRef::arr(r, t), 1.0);
      for (int s = 1; s <= t; ++s) b.add(VariableRef::in(sink, s, r), -1.0);
      for (int s = 1; s <= t - 1; ++s) b.add(VariableRef::in(sink, s, r), 1.0);
      rows.push_back(b.finish(Relation::greater_equal, -slack));
    }
  }
  return rows;
}

}  // namespace railflow
