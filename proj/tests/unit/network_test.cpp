#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "fixtures.hpp"
#include "railflow/network.hpp"
#include "railflow/scenario.hpp"

using namespace railflow;

namespace {

NetworkData pair_data() {
  NetworkData d;
  d.horizon = 2;
  d.train_types = {"f", "p"};
  d.nodes = {"A", "C", "E"};
  d.links = {{"A-C", NodeId(0), NodeId(1)}, {"C-A", NodeId(1), NodeId(0)}, {"C-E", NodeId(1), NodeId(2)}};
  d.capacity = {5, 5, 5, 5, 4, 3};
  d.duration = {0.3, 0.2, 0.3, 0.2, 0.5, 0.25};
  return d;
}

std::vector<std::string> codes(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& v : r.violations) out.push_back(v.code);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("link_between distinguishes directions and reports missing links") {
  const Network net(pair_data());
  REQUIRE(link_between(net, NodeId(0), NodeId(1)));
  CHECK(net.link(*link_between(net, NodeId(0), NodeId(1))).name == "A-C");
  CHECK(net.link(*link_between(net, NodeId(1), NodeId(0))).name == "C-A");
  CHECK(*link_between(net, NodeId(0), NodeId(1)) != *link_between(net, NodeId(1), NodeId(0)));
  CHECK_FALSE(link_between(net, NodeId(0), NodeId(2)));
}

TEST_CASE("single track is exactly the non-fixed points of sigma") {
  NetworkData d = pair_data();
  CHECK_FALSE(is_single_track(Network(d), LinkId(0)));

  d.sigma = {LinkId(1), LinkId(0), LinkId(2)};
  const Network net(d);
  CHECK(is_single_track(net, LinkId(0)));
  CHECK(is_single_track(net, LinkId(1)));
  CHECK_FALSE(is_single_track(net, LinkId(2)));
  const auto pairs = net.coupled_pairs();
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].lower == LinkId(0));
  CHECK(pairs[0].upper == LinkId(1));
}

TEST_CASE("validation flags self loops, broken sigma and long traversals") {
  SUBCASE("self-loop") {
    NetworkData d = pair_data();
    d.links[2].head = NodeId(1);
    CHECK(validate_network(Network(d)).has("self-loop"));
  }
  SUBCASE("sigma-involution") {
    NetworkData d = pair_data();
    d.sigma = {LinkId(1), LinkId(2), LinkId(0)};
    CHECK(validate_network(Network(d)).has("sigma-involution"));
  }
  SUBCASE("sigma pairs must run in opposite directions") {
    NetworkData d = pair_data();
    d.sigma = {LinkId(2), LinkId(1), LinkId(0)};
    CHECK(validate_network(Network(d)).has("sigma-reverse"));
  }
  SUBCASE("duration above one period on a used link") {
    NetworkData d = pair_data();
    d.duration[0] = 1.2;
    const Network net(d);
    const LinkTypeUse used[] = {{LinkId(0), TrainTypeId(0)}};
    CHECK(validate_network(net, used).has("duration-exceeds-period"));
    const LinkTypeUse unused[] = {{LinkId(2), TrainTypeId(0)}};
    CHECK_FALSE(validate_network(net, unused).has("duration-exceeds-period"));
  }
  SUBCASE("negative capacity") {
    NetworkData d = pair_data();
    d.capacity[3] = -1;
    CHECK(validate_network(Network(d)).has("negative-capacity"));
  }
  SUBCASE("well formed") { CHECK(validate_network(Network(pair_data())).ok()); }
}

TEST_CASE("constructor rejects dangling ids and wrongly sized tables") {
  NetworkData d = pair_data();
  d.links[0].head = NodeId(7);
  CHECK_THROWS_AS(Network{d}, std::invalid_argument);
  d = pair_data();
  d.capacity.pop_back();
  CHECK_THROWS_AS(Network{d}, std::invalid_argument);
  d = pair_data();
  d.sigma = {LinkId(0)};
  CHECK_THROWS_AS(Network{d}, std::invalid_argument);
}

TEST_CASE("validation does not depend on link order") {
  NetworkData d = pair_data();
  d.links.push_back({"E-E", NodeId(2), NodeId(2)});
  d.capacity.insert(d.capacity.end(), {-1, 2});
  d.duration.insert(d.duration.end(), {0.1, 0.1});
  const auto forward = codes(validate_network(Network(d)));

  NetworkData r = d;
  std::reverse(r.links.begin(), r.links.end());
  const int T = d.horizon;
  const std::size_t L = d.links.size();
  const std::size_t H = d.train_types.size();
  for (std::size_t l = 0; l < L; ++l) {
    for (int t = 0; t < T; ++t) r.capacity[l * T + t] = d.capacity[(L - 1 - l) * T + t];
    for (std::size_t h = 0; h < H; ++h) r.duration[l * H + h] = d.duration[(L - 1 - l) * H + h];
  }
  CHECK(codes(validate_network(Network(r))) == forward);
  CHECK(codes(validate_network(Network(d))) == forward);
}

TEST_CASE("capacity edits touch one cell") {
  const Network net(pair_data());
  const Network edited = net.with_capacity(LinkId(2), 2, 0.0);
  for (const auto& l : net.links())
    for (int t = 1; t <= net.horizon(); ++t) {
      if (l.id == LinkId(2) && t == 2) CHECK(edited.capacity(l.id, t) == 0.0);
      else CHECK(edited.capacity(l.id, t) == net.capacity(l.id, t));
    }
  CHECK_THROWS(net.with_capacity(LinkId(0), 3, 1.0));
}

TEST_CASE("durations are looked up per link and type; missing ones are reported") {
  NetworkData d = pair_data();
  d.duration[5] = std::numeric_limits<double>::quiet_NaN();
  const Network net(d);
  CHECK(net.duration(LinkId(2), TrainTypeId(0)) == doctest::Approx(0.5));
  CHECK(net.has_duration(LinkId(0), TrainTypeId(1)));
  CHECK_FALSE(net.has_duration(LinkId(2), TrainTypeId(1)));
}

TEST_CASE("example network: dense ids and reversed sigma pairs") {
  const Scenario s = load_scenario_file(testing::scenario_path("small_network"));
  const Network& net = s.network;
  for (std::size_t i = 0; i < net.node_count(); ++i) CHECK(net.nodes()[i].id.index() == i);
  for (std::size_t i = 0; i < net.link_count(); ++i) CHECK(net.links()[i].id.index() == i);
  for (std::size_t i = 0; i < net.train_type_count(); ++i) CHECK(net.train_types()[i].id.index() == i);

  for (const auto& l : net.links()) {
    const auto& m = net.link(net.sigma(l.id));
    if (m.id == l.id) continue;
    CHECK(m.tail == l.head);
    CHECK(m.head == l.tail);
    CHECK(net.sigma(m.id) == l.id);
  }
  const auto fh = net.find_link("F-H");
  const auto hf = net.find_link("H-F");
  REQUIRE(fh);
  REQUIRE(hf);
  CHECK(is_single_track(net, *fh));
  CHECK(net.sigma(*fh) == *hf);
  CHECK(is_single_track(net, *hf));
}
