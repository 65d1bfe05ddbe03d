#include "railflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace railflow {

namespace {

std::string link_label(const Network& net, LinkId id) { return net.link(id).name; }

}  // namespace

Network::Network(NetworkData data) : data_(std::move(data)) {
  if (data_.horizon < 1) throw std::invalid_argument("horizon must be at least one period");
  horizon_ = data_.horizon;

  for (std::size_t i = 0; i < data_.train_types.size(); ++i)
    train_types_.push_back({TrainTypeId(static_cast<int>(i)), data_.train_types[i]});
  for (std::size_t i = 0; i < data_.nodes.size(); ++i)
    nodes_.push_back({NodeId(static_cast<int>(i)), data_.nodes[i]});

  const int n_nodes = static_cast<int>(nodes_.size());
  for (std::size_t i = 0; i < data_.links.size(); ++i) {
    const auto& l = data_.links[i];
    if (l.tail.value < 0 || l.tail.value >= n_nodes || l.head.value < 0 || l.head.value >= n_nodes)
      throw std::invalid_argument("link '" + l.name + "' references an unknown node");
    links_.push_back({LinkId(static_cast<int>(i)), l.name, l.tail, l.head});
  }

  const std::size_t n_links = links_.size();
  if (data_.sigma.empty()) {
    data_.sigma.reserve(n_links);
    for (std::size_t i = 0; i < n_links; ++i) data_.sigma.emplace_back(static_cast<int>(i));
  }
  if (data_.sigma.size() != n_links) throw std::invalid_argument("sigma must map every link");
  for (LinkId s : data_.sigma)
    if (s.value < 0 || static_cast<std::size_t>(s.value) >= n_links)
      throw std::invalid_argument("sigma references an unknown link");

  if (data_.capacity.size() != n_links * static_cast<std::size_t>(horizon_))
    throw std::invalid_argument("capacity table must have one entry per link and period");
  if (data_.duration.empty())
    data_.duration.assign(n_links * train_types_.size(), std::numeric_limits<double>::quiet_NaN());
  if (data_.duration.size() != n_links * train_types_.size())
    throw std::invalid_argument("duration table must have one entry per link and train type");
}

void Network::check_link(LinkId id) const {
  if (id.value < 0 || id.index() >= links_.size())
    throw std::out_of_range("unknown link id " + std::to_string(id.value));
}

void Network::check_period(int period) const {
  if (period < 1 || period > horizon_)
    throw std::out_of_range("period " + std::to_string(period) + " outside horizon");
}

const StationNode& Network::node(NodeId id) const {
  if (id.value < 0 || id.index() >= nodes_.size())
    throw std::out_of_range("unknown node id " + std::to_string(id.value));
  return nodes_[id.index()];
}

const TrackLink& Network::link(LinkId id) const {
  check_link(id);
  return links_[id.index()];
}

const TrainType& Network::train_type(TrainTypeId id) const {
  if (id.value < 0 || id.index() >= train_types_.size())
    throw std::out_of_range("unknown train type id " + std::to_string(id.value));
  return train_types_[id.index()];
}

LinkId Network::sigma(LinkId id) const {
  check_link(id);
  return data_.sigma[id.index()];
}

double Network::capacity(LinkId id, int period) const {
  check_link(id);
  check_period(period);
  return data_.capacity[id.index() * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(period - 1)];
}

double Network::duration(LinkId id, TrainTypeId type) const {
  check_link(id);
  train_type(type);
  return data_.duration[id.index() * train_types_.size() + type.index()];
}

bool Network::has_duration(LinkId id, TrainTypeId type) const { return !std::isnan(duration(id, type)); }

double Network::max_capacity() const {
  double m = 0.0;
  for (double c : data_.capacity) m = std::max(m, c);
  return m;
}

std::optional<NodeId> Network::find_node(std::string_view name) const {
  for (const auto& n : nodes_)
    if (n.name == name) return n.id;
  return std::nullopt;
}

std::optional<LinkId> Network::find_link(std::string_view name) const {
  for (const auto& l : links_)
    if (l.name == name) return l.id;
  return std::nullopt;
}

std::optional<TrainTypeId> Network::find_train_type(std::string_view label) const {
  for (const auto& t : train_types_)
    if (t.label == label) return t.id;
  return std::nullopt;
}

std::vector<CoupledPair> Network::coupled_pairs() const {
  std::vector<CoupledPair> pairs;
  for (const auto& l : links_) {
    const LinkId s = data_.sigma[l.id.index()];
    if (l.id < s) pairs.push_back({l.id, s});
  }
  return pairs;
}

Network Network::with_capacity(LinkId id, int period, double value) const {
  check_link(id);
  check_period(period);
  NetworkData copy = data_;
  copy.capacity[id.index() * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(period - 1)] = value;
  return Network(std::move(copy));
}

bool is_single_track(const Network& network, LinkId link) { return network.sigma(link) != link; }

std::optional<LinkId> link_between(const Network& network, NodeId tail, NodeId head) {
  network.node(tail);
  network.node(head);
  for (const auto& l : network.links())
    if (l.tail == tail && l.head == head) return l.id;
  return std::nullopt;
}

ValidationReport validate_network(const Network& net, std::span<const LinkTypeUse> used) {
  ValidationReport report;

  std::set<std::string> seen;
  for (const auto& t : net.train_types())
    if (!seen.insert(t.label).second) report.add("duplicate-train-type", "train type '" + t.label + "' listed twice");
  seen.clear();
  for (const auto& n : net.nodes())
    if (!seen.insert(n.name).second) report.add("duplicate-node", "node '" + n.name + "' listed twice");
  seen.clear();
  for (const auto& l : net.links())
    if (!seen.insert(l.name).second) report.add("duplicate-link-name", "link name '" + l.name + "' listed twice");

  std::map<std::pair<int, int>, LinkId> by_endpoints;
  for (const auto& l : net.links()) {
    if (l.tail == l.head) report.add("self-loop", "link '" + l.name + "' starts and ends at the same node");
    auto [it, inserted] = by_endpoints.emplace(std::make_pair(l.tail.value, l.head.value), l.id);
    if (!inserted)
      report.add("duplicate-link", "links '" + link_label(net, it->second) + "' and '" + l.name +
                                       "' connect the same ordered node pair");
  }

  for (const auto& l : net.links()) {
    const LinkId s = net.sigma(l.id);
    if (net.sigma(s) != l.id) {
      report.add("sigma-involution", "sigma(sigma(" + l.name + ")) != " + l.name);
      continue;
    }
    if (s != l.id) {
      const auto& r = net.link(s);
      if (r.tail != l.head || r.head != l.tail)
        report.add("sigma-reverse", "coupled link '" + r.name + "' is not the reverse of '" + l.name + "'");
    }
  }

  for (const auto& l : net.links())
    for (int t = 1; t <= net.horizon(); ++t) {
      const double c = net.capacity(l.id, t);
      if (!(c >= 0.0) || !std::isfinite(c))
        report.add("negative-capacity",
                   "capacity of '" + l.name + "' in period " + std::to_string(t) + " is not a nonnegative number");
    }

  for (const auto& l : net.links())
    for (const auto& h : net.train_types()) {
      if (!net.has_duration(l.id, h.id)) continue;
      const double d = net.duration(l.id, h.id);
      if (d < 0.0 || !std::isfinite(d))
        report.add("negative-duration", "duration of '" + l.name + "' for type '" + h.label + "' is negative");
    }

  auto check_period_limit = [&](LinkId link, TrainTypeId type) {
    if (!net.has_duration(link, type)) return;
    if (net.duration(link, type) > 1.0)
      report.add("duration-exceeds-period", "type '" + net.train_type(type).label + "' needs more than one period on '" +
                                                net.link(link).name + "'");
  };
  if (used.empty()) {
    for (const auto& l : net.links())
      for (const auto& h : net.train_types()) check_period_limit(l.id, h.id);
  } else {
    std::set<std::pair<int, int>> done;
    for (const auto& u : used)
      if (done.emplace(u.link.value, u.type.value).second) check_period_limit(u.link, u.type);
  }

  return report;
}

}  // namespace railflow
