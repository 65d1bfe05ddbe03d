#include "railflow/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace railflow {

std::vector<NodeId> Route::nodes(const Network& network) const {
  std::vector<NodeId> out;
  if (links.empty()) {
    out.push_back(origin);
    return out;
  }
  out.reserve(links.size() + 1);
  out.push_back(network.link(links.front()).tail);
  for (LinkId l : links) out.push_back(network.link(l).head);
  return out;
}

bool Route::uses(LinkId link) const { return std::find(links.begin(), links.end(), link) != links.end(); }

Route make_route(const Network& network, std::string name, TrainTypeId type, std::vector<LinkId> links) {
  Route r;
  r.name = std::move(name);
  r.type = type;
  r.links = std::move(links);
  if (!r.links.empty()) {
    r.origin = network.link(r.links.front()).tail;
    r.destination = network.link(r.links.back()).head;
  }
  return r;
}

ValidationReport validate_route(const Route& route, const Network& network) {
  ValidationReport report;
  const std::string who = "route '" + route.name + "'";
  if (route.links.empty()) {
    report.add("empty-route", who + " has no links");
    return report;
  }
  for (LinkId l : route.links)
    if (l.value < 0 || l.index() >= network.link_count()) {
      report.add("unknown-link", who + " references an unknown link");
      return report;
    }

  std::set<int> links_seen;
  for (LinkId l : route.links)
    if (!links_seen.insert(l.value).second) report.add("cycle", who + " passes link '" + network.link(l).name + "' twice");

  for (std::size_t i = 1; i < route.links.size(); ++i) {
    const auto& prev = network.link(route.links[i - 1]);
    const auto& next = network.link(route.links[i]);
    if (prev.head != next.tail)
      report.add("not-contiguous", who + ": '" + prev.name + "' does not end where '" + next.name + "' starts");
  }

  if (!report.has("not-contiguous")) {
    std::set<int> nodes_seen;
    for (NodeId n : route.nodes(network))
      if (!nodes_seen.insert(n.value).second && !report.has("cycle"))
        report.add("cycle", who + " visits node '" + network.node(n).name + "' twice");
  }

  if (network.link(route.links.front()).tail != route.origin ||
      network.link(route.links.back()).head != route.destination)
    report.add("endpoint-mismatch", who + " does not run from its origin to its destination");

  if (route.type.value < 0 || route.type.index() >= network.train_type_count()) {
    report.add("unknown-train-type", who + " has an unknown train type");
    return report;
  }
  for (LinkId l : route.links) {
    if (!network.has_duration(l, route.type)) {
      report.add("missing-duration", who + ": no duration for '" + network.link(l).name + "'");
      continue;
    }
    if (network.duration(l, route.type) > 1.0)
      report.add("duration-exceeds-period",
                 who + ": traversing '" + network.link(l).name + "' takes longer than one period");
  }
  return report;
}

std::vector<double> aggregate_durations(const Route& route, const Network& network) {
  std::vector<double> aggr;
  aggr.reserve(route.links.size() + 1);
  aggr.push_back(0.0);
  double sum = 0.0;
  for (LinkId l : route.links) {
    if (!network.has_duration(l, route.type))
      throw std::invalid_argument("route '" + route.name + "': no duration for link '" + network.link(l).name +
                                  "' and type '" + network.train_type(route.type).label + "'");
    sum += network.duration(l, route.type);
    aggr.push_back(sum);
  }
  return aggr;
}

ServiceCatalog::ServiceCatalog(const Network& network, std::vector<Route> routes, std::vector<Demand> demands,
                               std::optional<std::vector<std::pair<DemandId, RouteId>>> implements)
    : routes_(std::move(routes)), demands_(std::move(demands)) {
  for (const auto& r : routes_) {
    const auto report = validate_route(r, network);
    if (!report.ok()) throw std::invalid_argument(report.violations.front().message);
    route_nodes_.push_back(r.nodes(network));
    route_aggregate_.push_back(aggregate_durations(r, network));
  }

  for (const auto& d : demands_) {
    if (d.origin.value < 0 || d.origin.index() >= network.node_count() || d.destination.value < 0 ||
        d.destination.index() >= network.node_count())
      throw std::invalid_argument("demand '" + d.name + "' references an unknown node");
    if (d.type.value < 0 || d.type.index() >= network.train_type_count())
      throw std::invalid_argument("demand '" + d.name + "' has an unknown train type");
    if (d.origin == d.destination)
      throw std::invalid_argument("demand '" + d.name + "' has identical origin and destination");
    if (d.volumes.size() != static_cast<std::size_t>(network.horizon()))
      throw std::invalid_argument("demand '" + d.name + "' must give one volume per period");
    for (int v : d.volumes)
      if (v < 0) throw std::invalid_argument("demand '" + d.name + "' has a negative volume");
  }

  auto matches = [&](const Demand& d, const Route& r) {
    return d.origin == r.origin && d.destination == r.destination && d.type == r.type;
  };

  implementing_.assign(demands_.size(), {});
  for (std::size_t di = 0; di < demands_.size(); ++di)
    for (std::size_t ri = 0; ri < routes_.size(); ++ri)
      if (matches(demands_[di], routes_[ri])) implementing_[di].emplace_back(static_cast<int>(ri));

  if (implements) {
    std::vector<std::vector<RouteId>> listed(demands_.size());
    for (auto [d, r] : *implements) {
      if (d.value < 0 || d.index() >= demands_.size() || r.value < 0 || r.index() >= routes_.size())
        throw std::invalid_argument("implements relation references an unknown demand or route");
      if (!matches(demands_[d.index()], routes_[r.index()]))
        throw std::invalid_argument("route '" + routes_[r.index()].name + "' cannot implement demand '" +
                                    demands_[d.index()].name + "': origin, destination or train type differ");
      listed[d.index()].push_back(r);
    }
    for (std::size_t di = 0; di < demands_.size(); ++di) {
      auto& l = listed[di];
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      if (l != implementing_[di])
        throw std::invalid_argument("implements relation for demand '" + demands_[di].name +
                                    "' disagrees with the routes matching its origin, destination and type");
    }
  }
}

void ServiceCatalog::check_demand(DemandId d) const {
  if (d.value < 0 || d.index() >= demands_.size())
    throw std::out_of_range("unknown demand id " + std::to_string(d.value));
}

const Route& ServiceCatalog::route(RouteId id) const {
  if (id.value < 0 || id.index() >= routes_.size())
    throw std::out_of_range("unknown route id " + std::to_string(id.value));
  return routes_[id.index()];
}

const Demand& ServiceCatalog::demand(DemandId id) const {
  check_demand(id);
  return demands_[id.index()];
}

std::optional<RouteId> ServiceCatalog::find_route(std::string_view name) const {
  for (std::size_t i = 0; i < routes_.size(); ++i)
    if (routes_[i].name == name) return RouteId(static_cast<int>(i));
  return std::nullopt;
}

std::optional<DemandId> ServiceCatalog::find_demand(std::string_view name) const {
  for (std::size_t i = 0; i < demands_.size(); ++i)
    if (demands_[i].name == name) return DemandId(static_cast<int>(i));
  return std::nullopt;
}

std::span<const RouteId> ServiceCatalog::implementing_routes(DemandId d) const {
  check_demand(d);
  return implementing_[d.index()];
}

std::vector<DemandId> ServiceCatalog::implemented_demands(RouteId r) const {
  route(r);
  std::vector<DemandId> out;
  for (std::size_t di = 0; di < implementing_.size(); ++di)
    for (RouteId x : implementing_[di])
      if (x == r) out.emplace_back(static_cast<int>(di));
  return out;
}

long long ServiceCatalog::demand_total(DemandId d) const {
  check_demand(d);
  const auto& v = demands_[d.index()].volumes;
  return std::accumulate(v.begin(), v.end(), 0LL);
}

std::span<const NodeId> ServiceCatalog::route_nodes(RouteId r) const {
  route(r);
  return route_nodes_[r.index()];
}

std::span<const double> ServiceCatalog::route_aggregate(RouteId r) const {
  route(r);
  return route_aggregate_[r.index()];
}

int ServiceCatalog::node_position(RouteId r, NodeId n) const {
  const auto nodes = route_nodes(r);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == n) return static_cast<int>(i);
  return -1;
}

std::vector<std::pair<DemandId, RouteId>> ServiceCatalog::implements_pairs() const {
  std::vector<std::pair<DemandId, RouteId>> out;
  for (std::size_t di = 0; di < implementing_.size(); ++di)
    for (RouteId r : implementing_[di]) out.emplace_back(DemandId(static_cast<int>(di)), r);
  return out;
}

}  // namespace railflow
