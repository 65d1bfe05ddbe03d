#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "railflow/ids.hpp"
#include "railflow/network.hpp"
#include "railflow/validation.hpp"

namespace railflow {

/// Requested traffic of one origin/destination/train-type combination,
/// volumes[t - 1] trains wanted to depart in period t.
struct Demand {
  std::string name;
  NodeId origin;
  NodeId destination;
  TrainTypeId type;
  std::vector<int> volumes;
  std::vector<std::string> via;  // carried along, never constrained
  std::map<std::string, std::string> attributes;
};

/// Named route (a commodity of the flow model): an ordered chain of links.
struct Route {
  std::string name;
  NodeId origin;
  NodeId destination;
  TrainTypeId type;
  std::vector<LinkId> links;
  std::map<std::string, std::string> attributes;

  /// origin followed by the head of every link; size() == links.size() + 1.
  std::vector<NodeId> nodes(const Network& network) const;
  bool uses(LinkId link) const;
};

/// Builds a route from its link chain, taking origin and destination from
/// the first tail and last head.
Route make_route(const Network& network, std::string name, TrainTypeId type, std::vector<LinkId> links);

ValidationReport validate_route(const Route& route, const Network& network);

/// Maximum aggregated duration from the route origin to each route node, in
/// node order. Throws std::invalid_argument when a link has no duration for
/// the route's train type.
std::vector<double> aggregate_durations(const Route& route, const Network& network);

/// Routes, demands and the demand -> route implementation relation. The
/// relation is checked against origin/destination/type matching at build
/// time and aggregate durations are precomputed.
class ServiceCatalog {
 public:
  /// `implements` lists (demand, route) pairs. When absent, the relation is
  /// derived by property matching. Throws std::invalid_argument on a
  /// mismatch between the listed relation and property matching, or when a
  /// route fails validation.
  ServiceCatalog(const Network& network, std::vector<Route> routes, std::vector<Demand> demands,
                 std::optional<std::vector<std::pair<DemandId, RouteId>>> implements = std::nullopt);

  std::size_t route_count() const { return routes_.size(); }
  std::size_t demand_count() const { return demands_.size(); }

  std::span<const Route> routes() const { return routes_; }
  std::span<const Demand> demands() const { return demands_; }
  const Route& route(RouteId id) const;
  const Demand& demand(DemandId id) const;

  std::optional<RouteId> find_route(std::string_view name) const;
  std::optional<DemandId> find_demand(std::string_view name) const;

  /// I(d): routes implementing the demand; may be empty.
  std::span<const RouteId> implementing_routes(DemandId d) const;
  /// Demands a route implements (inverse of I).
  std::vector<DemandId> implemented_demands(RouteId r) const;

  /// nu(d): total requested volume over the horizon.
  long long demand_total(DemandId d) const;

  /// Route nodes in travel order, origin first.
  std::span<const NodeId> route_nodes(RouteId r) const;
  /// Aggregated duration at each entry of route_nodes(r).
  std::span<const double> route_aggregate(RouteId r) const;
  /// Position of node within the route, or -1 when the route does not pass it.
  int node_position(RouteId r, NodeId n) const;

  std::vector<std::pair<DemandId, RouteId>> implements_pairs() const;

 private:
  void check_demand(DemandId d) const;

  std::vector<Route> routes_;
  std::vector<Demand> demands_;
  std::vector<std::vector<RouteId>> implementing_;
  std::vector<std::vector<NodeId>> route_nodes_;
  std::vector<std::vector<double>> route_aggregate_;
};

}  // namespace railflow
