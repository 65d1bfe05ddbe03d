#include <cmath>

#include <json.hpp>

#include "railflow/scenario.hpp"

namespace railflow {

std::string serialize_scenario(const Scenario& s) {
  using ojson = nlohmann::ordered_json;
  const Network& net = s.network;
  const int T = net.horizon();

  ojson doc;
  doc["name"] = s.name;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["period_length_minutes"] = s.period_length_minutes;
  doc["horizon"] = T;

  ojson types = ojson::array();
  for (const auto& h : net.train_types()) types.push_back(h.label);
  doc["train_types"] = types;
  ojson nodes = ojson::array();
  for (const auto& n : net.nodes()) nodes.push_back(n.name);
  doc["nodes"] = nodes;

  ojson links = ojson::array();
  for (const auto& l : net.links())
    links.push_back({{"name", l.name}, {"from", net.node(l.tail).name}, {"to", net.node(l.head).name}});
  doc["links"] = links;
  ojson coupled = ojson::array();
  for (const auto& p : net.coupled_pairs()) coupled.push_back({net.link(p.lower).name, net.link(p.upper).name});
  doc["coupled"] = coupled;

  ojson caps = ojson::object();
  for (const auto& l : net.links()) {
    ojson row = ojson::array();
    for (int t = 1; t <= T; ++t) row.push_back(net.capacity(l.id, t));
    caps[l.name] = row;
  }
  doc["capacities"] = {{"links", caps}};

  ojson dur = ojson::object();
  for (const auto& l : net.links()) {
    ojson per = ojson::object();
    for (const auto& h : net.train_types())
      if (net.has_duration(l.id, h.id)) per[h.label] = net.duration(l.id, h.id);
    if (!per.empty()) dur[l.name] = per;
  }
  doc["durations"] = {{"unit", "periods"}, {"values", dur}};

  const ServiceCatalog& cat = s.catalog;
  ojson routes = ojson::array();
  for (const auto& r : cat.routes()) {
    ojson lk = ojson::array();
    for (LinkId l : r.links) lk.push_back(net.link(l).name);
    ojson route = {{"name", r.name}, {"type", net.train_type(r.type).label}, {"links", lk}};
    if (!r.attributes.empty()) route["attributes"] = r.attributes;
    routes.push_back(route);
  }
  doc["routes"] = routes;

  ojson demands = ojson::array();
  for (const auto& d : cat.demands()) {
    ojson dm = {{"name", d.name},
                {"origin", net.node(d.origin).name},
                {"destination", net.node(d.destination).name},
                {"type", net.train_type(d.type).label},
                {"volumes", d.volumes}};
    if (!d.via.empty()) dm["via"] = d.via;
    if (!d.attributes.empty()) dm["attributes"] = d.attributes;
    demands.push_back(dm);
  }
  doc["demands"] = demands;

  if (s.explicit_implements) {
    ojson imp = ojson::array();
    for (const auto& [d, r] : cat.implements_pairs()) imp.push_back({cat.demand(d).name, cat.route(r).name});
    doc["implements"] = imp;
  }

  const ModelConfig& c = s.config;
  ojson cfg = {{"capacity_mode", std::string(to_string(c.capacity_mode))},
               {"heterogeneity_coefficient", c.heterogeneity_coefficient},
               {"setup_coefficient", c.setup_coefficient}};
  if (!c.setup_overrides.empty()) {
    ojson so = ojson::array();
    for (const auto& o : c.setup_overrides) {
      ojson e = {{"link", net.link(o.link).name}, {"value", o.value}};
      if (o.period != 0) e["period"] = o.period;
      so.push_back(e);
    }
    cfg["setup_overrides"] = so;
  }
  if (c.big_m) cfg["big_m"] = *c.big_m;
  cfg["arrival_slack"] = c.arrival_slack;
  if (!c.arrival_slack_overrides.empty()) {
    ojson ao = ojson::object();
    for (const auto& o : c.arrival_slack_overrides) ao[cat.route(o.route).name] = o.value;
    cfg["arrival_slack_overrides"] = ao;
  }
  cfg["cost_cancel"] = c.cost_cancel;
  cfg["cost_post"] = c.cost_post;
  cfg["relax_integrality"] = c.relax_integrality;
  cfg["emit_cancel3"] = c.emit_cancel3;
  cfg["flow_tiebreak"] = c.flow_tiebreak;
  doc["config"] = cfg;

  ojson tcr = ojson::array();
  for (const auto& o : s.tcr_overrides) {
    ojson e = {{"link", net.link(o.link).name}};
    if (o.period == 0) e["period"] = "all";
    else e["period"] = o.period;
    e[o.scale ? "factor" : "capacity"] = o.value;
    tcr.push_back(e);
  }
  doc["tcr_overrides"] = tcr;
  return doc.dump(2) + "\n";
}

}  // namespace railflow
