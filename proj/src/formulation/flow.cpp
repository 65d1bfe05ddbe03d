#include "names.hpp"
#include "railflow/formulation.hpp"

namespace railflow {

using detail::fix_zero;
using detail::num;
using detail::RowBuilder;
using detail::tagged;

std::vector<LinearConstraint> emit_flow_layer(const TimeExpandedModel& model, const Network& network,
                                              const ServiceCatalog& catalog) {
  std::vector<LinearConstraint> rows;
  const int T = network.horizon();

  for (std::size_t ri = 0; ri < catalog.route_count(); ++ri) {
    const RouteId r(static_cast<int>(ri));
    const Route& route = catalog.route(r);
    const std::string& rn = route.name;

    // Source and sink coupling to the route layer; ext is zero elsewhere.
    for (const auto& node : network.nodes())
      for (int t = 1; t <= T; ++t) {
        const auto ext = VariableRef::ext(node.id, t, r);
        if (node.id == route.origin) {
          RowBuilder b(model, "Flow1", tagged("Flow1", {{"n", node.name}, {"t", num(t)}, {"r", rn}}));
          rows.push_back(b.add(ext, 1.0).add(VariableRef::dep(r, t), -1.0).finish(Relation::equal, 0.0));
        } else if (node.id == route.destination) {
          RowBuilder b(model, "Flow1", tagged("Flow1", {{"n", node.name}, {"t", num(t)}, {"r", rn}}));
          rows.push_back(b.add(ext, 1.0).add(VariableRef::arr(r, t), 1.0).finish(Relation::equal, 0.0));
        } else {
          rows.push_back(fix_zero(model, "Bound3", tagged("Bound3", {{"n", node.name}, {"t", num(t)}, {"r", rn}}), ext));
        }
      }

    // Flow balance at every timed node on the route. Links off the route are
    // fixed to zero below, so only route links enter the sums.
    const auto nodes = catalog.route_nodes(r);
    for (NodeId n : nodes)
      for (int t = 1; t <= T; ++t) {
        RowBuilder b(model, "Flow2", tagged("Flow2", {{"n", network.node(n).name}, {"t", num(t)}, {"r", rn}}));
        b.add(VariableRef::ext(n, t, r), 1.0);
        b.add(VariableRef::ni(n, t - 1, r), 1.0);
        b.add(VariableRef::ni(n, t, r), -1.0);
        for (LinkId l : route.links) {
          const auto& link = network.link(l);
          if (link.head == n) {
            b.add(VariableRef::direct(l, t, r), 1.0);
            b.add(VariableRef::next(l, t - 1, r), 1.0);
          }
          if (link.tail == n) {
            b.add(VariableRef::direct(l, t, r), -1.0);
            b.add(VariableRef::next(l, t, r), -1.0);
          }
        }
        rows.push_back(b.finish(Relation::equal, 0.0));
      }

    // Volume entering each node per period: departures at the origin plus
    // direct and lagged next arcs along the route.
    for (const auto& node : network.nodes())
      for (int t = 1; t <= T; ++t) {
        RowBuilder b(model, "Flow3", tagged("Flow3", {{"n", node.name}, {"t", num(t)}, {"r", rn}}));
        b.add(VariableRef::in(node.id, t, r), 1.0);
        if (node.id == route.origin) b.add(VariableRef::dep(r, t), -1.0);
        for (LinkId l : route.links)
          if (network.link(l).head == node.id) {
            b.add(VariableRef::next(l, t - 1, r), -1.0);
            b.add(VariableRef::direct(l, t, r), -1.0);
          }
        rows.push_back(b.finish(Relation::equal, 0.0));
      }

    for (const auto& link : network.links()) {
      if (route.uses(link.id)) {
        rows.push_back(fix_zero(model, "Bound4", tagged("Bound4", {{"l", link.name}, {"t", "0"}, {"r", rn}}),
                                VariableRef::next(link.id, 0, r)));
        rows.push_back(fix_zero(model, "Bound4", tagged("Bound4", {{"l", link.name}, {"t", num(T)}, {"r", rn}}),
                                VariableRef::next(link.id, T, r)));
        continue;
      }
      for (int t = 1; t <= T; ++t)
        rows.push_back(fix_zero(model, "Bound1", tagged("Bound1", {{"l", link.name}, {"t", num(t)}, {"r", rn}, {"arc", "direct"}}),
                                VariableRef::direct(link.id, t, r)));
      for (int t = 0; t <= T; ++t)
        rows.push_back(fix_zero(model, "Bound1", tagged("Bound1", {{"l", link.name}, {"t", num(t)}, {"r", rn}, {"arc", "next"}}),
                                VariableRef::next(link.id, t, r)));
    }

    for (const auto& node : network.nodes()) {
      rows.push_back(fix_zero(model, "Bound5", tagged("Bound5", {{"n", node.name}, {"r", rn}}),
                              VariableRef::ni(node.id, 0, r)));
      if (catalog.node_position(r, node.id) >= 0) {
        // Nothing may still be standing when the horizon closes, so every
        // departure arrives and the arrival-side cancellation count follows.
        rows.push_back(fix_zero(model, "EndInventory", tagged("EndInventory", {{"n", node.name}, {"r", rn}}),
                                VariableRef::ni(node.id, T, r)));
        continue;
      }
      for (int t = 1; t <= T; ++t)
        rows.push_back(fix_zero(model, "Bound2", tagged("Bound2", {{"n", node.name}, {"t", num(t)}, {"r", rn}}),
                                VariableRef::ni(node.id, t, r)));
    }
  }
  return rows;
}

}  // namespace railflow
