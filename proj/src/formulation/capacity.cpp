#include <set>

#include "names.hpp"
#include "railflow/formulation.hpp"

namespace railflow {

using detail::num;
using detail::RowBuilder;
using detail::tagged;

std::vector<LinearConstraint> emit_capacity(const TimeExpandedModel& model, const Network& network,
                                            const ServiceCatalog& catalog, const ModelConfig& config) {
  std::vector<LinearConstraint> rows;
  const int T = network.horizon();
  const auto types = network.train_types();

  auto link_name = [&](LinkId l) { return network.link(l).name; };
  auto add_linkcaps = [&](RowBuilder& b, LinkId l, int t, double coef) {
    for (const auto& h : types) b.add(VariableRef::linkcap(l, t, h.id), coef);
  };

  // Capacity1: sum over types of allocated capacity within nominal capacity.
  for (const auto& link : network.links())
    for (int t = 1; t <= T; ++t) {
      RowBuilder b(model, "Capacity1", tagged("Capacity1", {{"l", link.name}, {"t", num(t)}}));
      add_linkcaps(b, link.id, t, 1.0);
      rows.push_back(b.finish(Relation::less_equal, network.capacity(link.id, t)));
    }

  // Capacity4: direct arcs plus half of the incoming and outgoing next arcs,
  // per train type, within the type's allocation.
  for (const auto& link : network.links())
    for (int t = 1; t <= T; ++t)
      for (const auto& h : types) {
        RowBuilder b(model, "Capacity4", tagged("Capacity4", {{"l", link.name}, {"t", num(t)}, {"h", h.label}}));
        for (std::size_t ri = 0; ri < catalog.route_count(); ++ri) {
          const RouteId r(static_cast<int>(ri));
          const Route& route = catalog.route(r);
          if (route.type != h.id || !route.uses(link.id)) continue;
          b.add(VariableRef::direct(link.id, t, r), 1.0);
          b.add(VariableRef::next(link.id, t - 1, r), 0.5);
          b.add(VariableRef::next(link.id, t, r), 0.5);
        }
        b.add(VariableRef::linkcap(link.id, t, h.id), -1.0);
        rows.push_back(b.finish(Relation::less_equal, 0.0));
      }

  const auto pairs = network.coupled_pairs();
  switch (config.capacity_mode) {
    case CapacityMode::basic: break;

    case CapacityMode::single_track_alt1:
      for (const auto& p : pairs)
        for (int t = 1; t <= T; ++t) {
          RowBuilder b(model, "Capacity2alt1", tagged("Capacity2alt1", {{"l", link_name(p.lower)}, {"t", num(t)}}));
          add_linkcaps(b, p.lower, t, 1.0);
          add_linkcaps(b, p.upper, t, 1.0);
          rows.push_back(
              b.finish(Relation::less_equal, 0.5 * (network.capacity(p.lower, t) + network.capacity(p.upper, t))));
        }
      break;

    case CapacityMode::single_track_alt2: {
      const double big_m = config.big_m_for(network);
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto& p = pairs[pi];
        const int pair = static_cast<int>(pi);
        for (int t = 1; t <= T; ++t) {
          // Both directions plus setup within the capacity of either direction.
          for (LinkId side : {p.lower, p.upper}) {
            RowBuilder b(model, "Capacity2alt2", tagged("Capacity2alt2", {{"l", link_name(side)}, {"t", num(t)}}));
            add_linkcaps(b, p.lower, t, 1.0);
            add_linkcaps(b, p.upper, t, 1.0);
            b.add(VariableRef::setup_w(pair, t), 1.0);
            rows.push_back(b.finish(Relation::less_equal, network.capacity(side, t)));
          }
          // sum L_l <= K_l w + M (1 - beta)
          {
            RowBuilder b(model, "Setup1", tagged("Setup1", {{"l", link_name(p.lower)}, {"t", num(t)}}));
            add_linkcaps(b, p.lower, t, 1.0);
            b.add(VariableRef::setup_w(pair, t), -config.setup_coefficient_for(p.lower, t));
            b.add(VariableRef::dirflag_beta(pair, t), big_m);
            rows.push_back(b.finish(Relation::less_equal, big_m));
          }
          // sum L_sigma(l) <= K_sigma(l) w + M beta
          {
            RowBuilder b(model, "Setup2", tagged("Setup2", {{"l", link_name(p.lower)}, {"t", num(t)}}));
            add_linkcaps(b, p.upper, t, 1.0);
            b.add(VariableRef::setup_w(pair, t), -config.setup_coefficient_for(p.upper, t));
            b.add(VariableRef::dirflag_beta(pair, t), -big_m);
            rows.push_back(b.finish(Relation::less_equal, 0.0));
          }
        }
      }
      break;
    }

    case CapacityMode::heterogeneous: {
      const double k = config.heterogeneity_coefficient;
      for (const auto& link : network.links()) {
        std::set<int> present;  // train types with some route on the link
        for (const auto& r : catalog.routes())
          if (r.uses(link.id)) present.insert(r.type.value);
        if (present.empty()) continue;
        // sum_{h in P} (L_h + sum_{h' in P, h' != h} K L_h')
        for (int t = 1; t <= T; ++t) {
          RowBuilder b(model, "Capacity3", tagged("Capacity3", {{"l", link.name}, {"t", num(t)}}));
          for (int h : present) {
            b.add(VariableRef::linkcap(link.id, t, TrainTypeId(h)), 1.0);
            for (int other : present)
              if (other != h) b.add(VariableRef::linkcap(link.id, t, TrainTypeId(other)), k);
          }
          rows.push_back(b.finish(Relation::less_equal, network.capacity(link.id, t)));
        }
      }
      break;
    }
  }
  return rows;
}

}  // namespace railflow
