#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "railflow/catalog.hpp"
#include "railflow/network.hpp"

namespace railflow::testing {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(RAILFLOW_DATA_DIR) / "scenarios" / (name + ".json");
}

/// A -> B -> C, one train type "f", uniform capacity.
inline Network chain_network(double d_ab = 0.15, double d_bc = 0.20, int horizon = 3, double capacity = 5.0) {
  NetworkData d;
  d.horizon = horizon;
  d.train_types = {"f"};
  d.nodes = {"A", "B", "C"};
  d.links = {{"A-B", NodeId(0), NodeId(1)}, {"B-C", NodeId(1), NodeId(2)}};
  d.capacity.assign(2 * static_cast<std::size_t>(horizon), capacity);
  d.duration = {d_ab, d_bc};
  return Network(std::move(d));
}

inline ServiceCatalog chain_catalog(const Network& net, std::vector<int> volumes) {
  std::vector<Route> routes{make_route(net, "A-C-f1", TrainTypeId(0), {LinkId(0), LinkId(1)})};
  std::vector<Demand> demands{{"A-C-f", NodeId(0), NodeId(2), TrainTypeId(0), std::move(volumes), {}, {}}};
  return ServiceCatalog(net, std::move(routes), std::move(demands));
}

/// Two stations joined by a single track X-Y / Y-X, trains both ways.
inline Network single_track_network(int horizon, double capacity, double duration) {
  NetworkData d;
  d.horizon = horizon;
  d.train_types = {"p"};
  d.nodes = {"X", "Y"};
  d.links = {{"X-Y", NodeId(0), NodeId(1)}, {"Y-X", NodeId(1), NodeId(0)}};
  d.sigma = {LinkId(1), LinkId(0)};
  d.capacity.assign(2 * static_cast<std::size_t>(horizon), capacity);
  d.duration = {duration, duration};
  return Network(std::move(d));
}

inline ServiceCatalog single_track_catalog(const Network& net, std::vector<int> east, std::vector<int> west) {
  std::vector<Route> routes{make_route(net, "X-Y-p1", TrainTypeId(0), {LinkId(0)}),
                            make_route(net, "Y-X-p1", TrainTypeId(0), {LinkId(1)})};
  std::vector<Demand> demands{{"X-Y-p", NodeId(0), NodeId(1), TrainTypeId(0), std::move(east), {}, {}},
                              {"Y-X-p", NodeId(1), NodeId(0), TrainTypeId(0), std::move(west), {}, {}}};
  return ServiceCatalog(net, std::move(routes), std::move(demands));
}

}  // namespace railflow::testing
