#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "railflow/ids.hpp"
#include "railflow/validation.hpp"

namespace railflow {

struct TrainType {
  TrainTypeId id;
  std::string label;
};

struct StationNode {
  NodeId id;
  std::string name;
};

struct TrackLink {
  LinkId id;
  std::string name;
  NodeId tail;
  NodeId head;
};

/// Raw construction input for a Network. Capacities are stored link-major
/// (link * horizon + (period - 1)); durations link-major over train types,
/// in fractions of one period. A NaN duration means "not given".
struct NetworkData {
  int horizon = 1;
  std::vector<std::string> train_types;
  std::vector<std::string> nodes;
  struct Link {
    std::string name;
    NodeId tail;
    NodeId head;
  };
  std::vector<Link> links;
  std::vector<LinkId> sigma;  // empty means every link is double track
  std::vector<double> capacity;
  std::vector<double> duration;
};

/// Pair (l, sigma(l)) with l < sigma(l): the two directions of one single track.
struct CoupledPair {
  LinkId lower;
  LinkId upper;
};

/// Geographical railway network over a fixed horizon of periods 1..horizon.
/// Immutable once built; capacity edits return a new network.
///
/// The constructor rejects dangling ids and wrongly sized tables with
/// std::invalid_argument. Semantic defects (self loops, a sigma that is not
/// an involution, ...) are left for validate_network to report.
class Network {
 public:
  explicit Network(NetworkData data);

  int horizon() const { return horizon_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  std::size_t train_type_count() const { return train_types_.size(); }

  std::span<const StationNode> nodes() const { return nodes_; }
  std::span<const TrackLink> links() const { return links_; }
  std::span<const TrainType> train_types() const { return train_types_; }

  const StationNode& node(NodeId id) const;
  const TrackLink& link(LinkId id) const;
  const TrainType& train_type(TrainTypeId id) const;

  LinkId sigma(LinkId id) const;

  /// Nominal capacity of link in period (1-based).
  double capacity(LinkId id, int period) const;
  double duration(LinkId id, TrainTypeId type) const;
  bool has_duration(LinkId id, TrainTypeId type) const;
  double max_capacity() const;

  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<LinkId> find_link(std::string_view name) const;
  std::optional<TrainTypeId> find_train_type(std::string_view label) const;

  /// Single-track pairs in link enumeration order of their lower member.
  std::vector<CoupledPair> coupled_pairs() const;

  Network with_capacity(LinkId id, int period, double value) const;

  const NetworkData& data() const { return data_; }

 private:
  void check_link(LinkId id) const;
  void check_period(int period) const;

  NetworkData data_;
  int horizon_ = 1;
  std::vector<TrainType> train_types_;
  std::vector<StationNode> nodes_;
  std::vector<TrackLink> links_;
};

bool is_single_track(const Network& network, LinkId link);

std::optional<LinkId> link_between(const Network& network, NodeId tail, NodeId head);

/// (link, train type) combination that some route actually traverses.
struct LinkTypeUse {
  LinkId link;
  TrainTypeId type;
};

/// Reports every violated network invariant. Durations are only checked
/// against the one-period limit for `used` combinations; with an empty span
/// every given duration is checked.
ValidationReport validate_network(const Network& network, std::span<const LinkTypeUse> used = {});

}  // namespace railflow
