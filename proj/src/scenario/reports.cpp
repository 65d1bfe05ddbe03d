#include <cmath>
#include <cstdio>

#include "railflow/scenario.hpp"

namespace railflow {

namespace {

std::string cell(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(int horizon, const char* lead) {
  std::string out = lead;
  for (int t = 1; t <= horizon; ++t) out += "," + std::to_string(t);
  return out;
}

}  // namespace

CapacityUsageReport capacity_usage(const TimeExpandedModel& model, const Scenario& scenario,
                                   const std::vector<double>& values) {
  const Network& net = scenario.network;
  const ServiceCatalog& cat = scenario.catalog;
  const int T = net.horizon();
  CapacityUsageReport rep;
  rep.horizon = T;
  for (const auto& h : net.train_types()) rep.train_types.push_back(h.label);
  for (const auto& l : net.links()) {
    rep.links.push_back(l.name);
    std::vector<double> used(static_cast<std::size_t>(T), 0.0);
    std::vector<std::vector<double>> by_type(net.train_type_count(), std::vector<double>(static_cast<std::size_t>(T), 0.0));
    std::vector<double> nominal;
    for (int t = 1; t <= T; ++t) {
      nominal.push_back(net.capacity(l.id, t));
      for (std::size_t ri = 0; ri < cat.route_count(); ++ri) {
        const RouteId r(static_cast<int>(ri));
        const Route& route = cat.route(r);
        if (!route.uses(l.id)) continue;
        const double u = model.value(values, VariableRef::direct(l.id, t, r)) +
                         0.5 * model.value(values, VariableRef::next(l.id, t - 1, r)) +
                         0.5 * model.value(values, VariableRef::next(l.id, t, r));
        by_type[route.type.index()][static_cast<std::size_t>(t - 1)] += u;
      }
      for (const auto& row : by_type) used[static_cast<std::size_t>(t - 1)] += row[static_cast<std::size_t>(t - 1)];
    }
    rep.used.push_back(std::move(used));
    rep.by_type.push_back(std::move(by_type));
    rep.nominal.push_back(std::move(nominal));
  }
  if (model.layout().has(VariableKind::setup_w)) {
    const auto pairs = net.coupled_pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      CapacityUsageReport::SetupRow row;
      row.label = "setup:" + net.link(pairs[p].lower).name + "/" + net.link(pairs[p].upper).name;
      for (int t = 1; t <= T; ++t) row.values.push_back(model.value(values, VariableRef::setup_w(static_cast<int>(p), t)));
      rep.setup.push_back(std::move(row));
    }
  }
  return rep;
}

DemandOutcomeReport demand_outcome(const TimeExpandedModel& model, const Scenario& scenario,
                                   const std::vector<double>& values) {
  const ServiceCatalog& cat = scenario.catalog;
  const int T = scenario.network.horizon();
  DemandOutcomeReport rep;
  rep.horizon = T;
  for (std::size_t di = 0; di < cat.demand_count(); ++di) {
    const DemandId d(static_cast<int>(di));
    DemandOutcome out;
    out.demand = cat.demand(d).name;
    out.requested = cat.demand(d).volumes;
    out.requested_total = cat.demand_total(d);
    for (RouteId r : cat.implementing_routes(d)) {
      DemandOutcome::RouteDepartures dep{cat.route(r).name, {}};
      for (int t = 1; t <= T; ++t) {
        const double v = model.value(values, VariableRef::dep(r, t));
        dep.values.push_back(v);
        out.served_total += v;
      }
      out.departures.push_back(std::move(dep));
    }
    for (int t = 1; t <= T; ++t) {
      out.postponed.push_back(model.value(values, VariableRef::post(d, t)));
      out.cancelled.push_back(model.value(values, VariableRef::cancel_t(d, t)));
    }
    out.cancelled_total = model.value(values, VariableRef::cancel_total(d));
    rep.demands.push_back(std::move(out));
  }
  return rep;
}

std::string report_capacity_csv(const CapacityUsageReport& rep) {
  std::string out = header(rep.horizon, "link") + "\n";
  for (std::size_t l = 0; l < rep.links.size(); ++l) {
    out += rep.links[l];
    for (double v : rep.used[l]) out += "," + cell(v);
    out += "\n";
  }
  for (const auto& s : rep.setup) {
    out += s.label;
    for (double v : s.values) out += "," + cell(v);
    out += "\n";
  }
  return out;
}

std::string report_capacity_by_type_csv(const CapacityUsageReport& rep) {
  std::string out = header(rep.horizon, "link,type") + "\n";
  for (std::size_t l = 0; l < rep.links.size(); ++l)
    for (std::size_t h = 0; h < rep.train_types.size(); ++h) {
      out += rep.links[l] + "," + rep.train_types[h];
      for (double v : rep.by_type[l][h]) out += "," + cell(v);
      out += "\n";
    }
  return out;
}

std::string report_demand_csv(const DemandOutcomeReport& rep) {
  std::string out = header(rep.horizon, "demand,kind,route") + ",total\n";
  auto line = [&](const std::string& d, const char* kind, const std::string& route, const std::vector<double>& v,
                  double total) {
    out += d + "," + kind + "," + route;
    for (double x : v) out += "," + cell(x);
    out += "," + cell(total) + "\n";
  };
  for (const auto& d : rep.demands) {
    std::vector<double> requested(d.requested.begin(), d.requested.end());
    line(d.demand, "requested", "", requested, static_cast<double>(d.requested_total));
    std::vector<double> served(static_cast<std::size_t>(rep.horizon), 0.0);
    for (const auto& r : d.departures) {
      double total = 0.0;
      for (std::size_t t = 0; t < r.values.size(); ++t) {
        total += r.values[t];
        served[t] += r.values[t];
      }
      line(d.demand, "departures", r.route, r.values, total);
    }
    line(d.demand, "served", "", served, d.served_total);
    line(d.demand, "postponed", "", d.postponed, 0.0);
    line(d.demand, "cancelled", "", d.cancelled, d.cancelled_total);
  }
  return out;
}

}  // namespace railflow
