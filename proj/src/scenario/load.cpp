#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "railflow/scenario.hpp"

namespace railflow {

namespace {

using json = nlohmann::json;

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = "invalid scenario";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

std::string pointer(const std::string& base, std::string_view key) {
  std::string out = base + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string pointer(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

class Loader {
 public:
  explicit Loader(const json& root) : root_(root) {}

  Scenario load();

 private:
  void error(const std::string& path, const std::string& message) {
    errors_.push_back((path.empty() ? std::string("/") : path) + ": " + message);
  }

  const json* field(const json& obj, const std::string& path, std::string_view key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(path, "missing field '" + std::string(key) + "'");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string_at(const json& v, const std::string& path) {
    if (!v.is_string()) {
      error(path, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<double> number_at(const json& v, const std::string& path) {
    if (!v.is_number()) {
      error(path, "expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<long long> integer_at(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      error(path, "expected an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  std::optional<bool> bool_at(const json& v, const std::string& path) {
    if (!v.is_boolean()) {
      error(path, "expected true or false");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::vector<std::string> name_list(const json& obj, std::string_view key, const char* what);
  std::optional<LinkId> link_named(const json& v, const std::string& path);
  std::optional<NodeId> node_named(const json& v, const std::string& path);
  std::optional<TrainTypeId> type_named(const json& v, const std::string& path);

  void read_links();
  void read_capacities();
  void read_durations();
  std::vector<Route> read_routes();
  std::vector<Demand> read_demands();
  std::optional<std::vector<std::pair<DemandId, RouteId>>> read_implements(const std::vector<Route>& routes,
                                                                           const std::vector<Demand>& demands);
  ModelConfig read_config(const std::vector<Route>& routes);
  std::vector<CapacityOverride> read_overrides();

  const json& root_;
  std::vector<std::string> errors_;
  NetworkData data_;
  int period_minutes_ = 60;
  std::map<std::string, int> node_index_, type_index_, link_index_;
};

std::vector<std::string> Loader::name_list(const json& obj, std::string_view key, const char* what) {
  std::vector<std::string> names;
  const std::string path = pointer("", key);
  const json* v = field(obj, "", key, true);
  if (!v) return names;
  if (!v->is_array()) {
    error(path, "expected an array of names");
    return names;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v->size(); ++i) {
    auto s = string_at((*v)[i], pointer(path, i));
    if (!s) continue;
    if (!seen.insert(*s).second) error(pointer(path, i), std::string("duplicate ") + what + " '" + *s + "'");
    names.push_back(*s);
  }
  return names;
}

std::optional<NodeId> Loader::node_named(const json& v, const std::string& path) {
  auto s = string_at(v, path);
  if (!s) return std::nullopt;
  const auto it = node_index_.find(*s);
  if (it == node_index_.end()) {
    error(path, "unknown node '" + *s + "'");
    return std::nullopt;
  }
  return NodeId(it->second);
}

std::optional<LinkId> Loader::link_named(const json& v, const std::string& path) {
  auto s = string_at(v, path);
  if (!s) return std::nullopt;
  const auto it = link_index_.find(*s);
  if (it == link_index_.end()) {
    error(path, "unknown link '" + *s + "'");
    return std::nullopt;
  }
  return LinkId(it->second);
}

std::optional<TrainTypeId> Loader::type_named(const json& v, const std::string& path) {
  auto s = string_at(v, path);
  if (!s) return std::nullopt;
  const auto it = type_index_.find(*s);
  if (it == type_index_.end()) {
    error(path, "unknown train type '" + *s + "'");
    return std::nullopt;
  }
  return TrainTypeId(it->second);
}

void Loader::read_links() {
  const json* links = field(root_, "", "links", true);
  if (!links) return;
  if (!links->is_array()) {
    error("/links", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < links->size(); ++i) {
    const std::string path = pointer("/links", i);
    const json& l = (*links)[i];
    NetworkData::Link link;
    if (l.is_string()) {
      // "X-Y" shorthand: the one split point whose halves are both nodes.
      const std::string s = l.get<std::string>();
      int matches = 0;
      for (std::size_t p = s.find('-'); p != std::string::npos; p = s.find('-', p + 1)) {
        const auto a = node_index_.find(s.substr(0, p));
        const auto b = node_index_.find(s.substr(p + 1));
        if (a != node_index_.end() && b != node_index_.end()) {
          link.tail = NodeId(a->second);
          link.head = NodeId(b->second);
          ++matches;
        }
      }
      if (matches != 1) {
        error(path, "cannot split '" + s + "' into two known nodes; use {\"name\", \"from\", \"to\"}");
        continue;
      }
      link.name = s;
    } else if (l.is_object()) {
      const json* from = field(l, path, "from", true);
      const json* to = field(l, path, "to", true);
      if (!from || !to) continue;
      auto tail = node_named(*from, pointer(path, "from"));
      auto head = node_named(*to, pointer(path, "to"));
      if (!tail || !head) continue;
      link.tail = *tail;
      link.head = *head;
      link.name = data_.nodes[tail->index()] + "-" + data_.nodes[head->index()];
      if (const json* n = field(l, path, "name", false)) {
        auto s = string_at(*n, pointer(path, "name"));
        if (!s) continue;
        link.name = *s;
      }
    } else {
      error(path, "expected a link name or an object");
      continue;
    }
    if (!link_index_.emplace(link.name, static_cast<int>(data_.links.size())).second) {
      error(path, "duplicate link '" + link.name + "'");
      continue;
    }
    data_.links.push_back(link);
  }
}

void Loader::read_capacities() {
  const std::size_t n_links = data_.links.size();
  const int T = data_.horizon;
  data_.capacity.assign(n_links * static_cast<std::size_t>(T), std::numeric_limits<double>::quiet_NaN());
  data_.sigma.clear();
  for (std::size_t i = 0; i < n_links; ++i) data_.sigma.emplace_back(static_cast<int>(i));
  std::vector<char> coupled(n_links, 0);

  auto couple = [&](LinkId a, LinkId b, const std::string& path) {
    if (a == b) {
      error(path, "a link cannot be coupled with itself");
      return;
    }
    if (coupled[a.index()] || coupled[b.index()]) {
      error(path, "link coupled twice");
      return;
    }
    coupled[a.index()] = coupled[b.index()] = 1;
    data_.sigma[a.index()] = b;
    data_.sigma[b.index()] = a;
  };

  if (const json* c = field(root_, "", "coupled", false)) {
    if (!c->is_array()) error("/coupled", "expected an array of link pairs");
    else
      for (std::size_t i = 0; i < c->size(); ++i) {
        const std::string path = pointer("/coupled", i);
        const json& p = (*c)[i];
        if (!p.is_array() || p.size() != 2) {
          error(path, "expected a pair of link names");
          continue;
        }
        auto a = link_named(p[0], pointer(path, 0));
        auto b = link_named(p[1], pointer(path, 1));
        if (a && b) couple(*a, *b, path);
      }
  }

  const json* caps = field(root_, "", "capacities", true);
  if (!caps) return;
  if (!caps->is_object()) {
    error("/capacities", "expected an object");
    return;
  }
  auto fill = [&](std::size_t l, const json& v, const std::string& path) {
    if (v.is_number()) {
      for (int t = 0; t < T; ++t) data_.capacity[l * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)] = v.get<double>();
    } else if (v.is_array()) {
      if (v.size() != static_cast<std::size_t>(T)) {
        error(path, "expected " + std::to_string(T) + " per-period capacities");
        return;
      }
      for (int t = 0; t < T; ++t) {
        auto x = number_at(v[static_cast<std::size_t>(t)], pointer(path, static_cast<std::size_t>(t)));
        if (x) data_.capacity[l * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)] = *x;
      }
    } else {
      error(path, "expected a number or one number per period");
    }
  };

  if (const json* d = field(*caps, "/capacities", "default", false)) {
    if (!d->is_number()) error("/capacities/default", "expected a number");
    else
      for (std::size_t l = 0; l < n_links; ++l) fill(l, *d, "/capacities/default");
  }
  if (const json* per = field(*caps, "/capacities", "links", false)) {
    if (!per->is_object()) {
      error("/capacities/links", "expected an object keyed by link name");
    } else {
      for (const auto& [key, v] : per->items()) {
        const std::string path = pointer("/capacities/links", key);
        // "F-H/H-F": the two directions of one single track share a row.
        const auto slash = key.find('/');
        std::vector<std::string> names{key};
        if (slash != std::string::npos) names = {key.substr(0, slash), key.substr(slash + 1)};
        std::vector<LinkId> ids;
        for (const auto& n : names) {
          const auto it = link_index_.find(n);
          if (it == link_index_.end()) error(path, "unknown link '" + n + "'");
          else ids.emplace_back(it->second);
        }
        if (ids.size() != names.size()) continue;
        for (LinkId l : ids) fill(l.index(), v, path);
        if (ids.size() == 2 && data_.sigma[ids[0].index()] != ids[1]) couple(ids[0], ids[1], path);
      }
    }
  }
  for (std::size_t l = 0; l < n_links; ++l)
    if (std::isnan(data_.capacity[l * static_cast<std::size_t>(T)]))
      error("/capacities", "no capacity for link '" + data_.links[l].name + "' and no default");
}

void Loader::read_durations() {
  const std::size_t n_types = data_.train_types.size();
  data_.duration.assign(data_.links.size() * n_types, std::numeric_limits<double>::quiet_NaN());
  const json* d = field(root_, "", "durations", true);
  if (!d) return;
  if (!d->is_object()) {
    error("/durations", "expected an object");
    return;
  }
  double scale = 1.0;
  if (const json* unit = field(*d, "/durations", "unit", false)) {
    auto u = string_at(*unit, "/durations/unit");
    if (u && *u == "minutes") scale = 1.0 / period_minutes_;
    else if (u && *u != "periods") error("/durations/unit", "expected \"minutes\" or \"periods\"");
  }
  const json* values = field(*d, "/durations", "values", true);
  if (!values) return;
  if (!values->is_object()) {
    error("/durations/values", "expected an object keyed by link name");
    return;
  }
  for (const auto& [lname, per_type] : values->items()) {
    const std::string path = pointer("/durations/values", lname);
    const auto lit = link_index_.find(lname);
    if (lit == link_index_.end()) {
      error(path, "unknown link '" + lname + "'");
      continue;
    }
    if (!per_type.is_object()) {
      error(path, "expected an object keyed by train type");
      continue;
    }
    for (const auto& [tname, v] : per_type.items()) {
      const std::string tpath = pointer(path, tname);
      const auto tit = type_index_.find(tname);
      if (tit == type_index_.end()) {
        error(tpath, "unknown train type '" + tname + "'");
        continue;
      }
      auto x = number_at(v, tpath);
      if (!x) continue;
      data_.duration[static_cast<std::size_t>(lit->second) * n_types + static_cast<std::size_t>(tit->second)] = *x * scale;
    }
  }
}

std::vector<Route> Loader::read_routes() {
  std::vector<Route> routes;
  const json* rs = field(root_, "", "routes", true);
  if (!rs) return routes;
  if (!rs->is_array()) {
    error("/routes", "expected an array");
    return routes;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < rs->size(); ++i) {
    const std::string path = pointer("/routes", i);
    const json& r = (*rs)[i];
    if (!r.is_object()) {
      error(path, "expected an object");
      continue;
    }
    const json* name = field(r, path, "name", true);
    const json* type = field(r, path, "type", true);
    const json* links = field(r, path, "links", true);
    if (!name || !type || !links) continue;
    auto n = string_at(*name, pointer(path, "name"));
    if (!n) continue;
    if (!seen.insert(*n).second) error(path, "duplicate route '" + *n + "'");
    auto h = type_named(*type, pointer(path, "type"));
    if (!links->is_array() || links->empty()) {
      error(pointer(path, "links"), "route '" + *n + "' needs a non-empty array of links");
      continue;
    }
    std::vector<LinkId> ids;
    bool ok = true;
    for (std::size_t k = 0; k < links->size(); ++k) {
      const json& l = (*links)[k];
      const std::string lpath = pointer(pointer(path, "links"), k);
      if (l.is_string() && !link_index_.count(l.get<std::string>())) {
        error(lpath, "route '" + *n + "' uses unknown link '" + l.get<std::string>() + "'");
        ok = false;
        continue;
      }
      auto id = link_named(l, lpath);
      if (!id) ok = false;
      else ids.push_back(*id);
    }
    if (!ok || !h) continue;
    Route route;
    route.name = *n;
    route.type = *h;
    route.links = ids;
    route.origin = data_.links[ids.front().index()].tail;
    route.destination = data_.links[ids.back().index()].head;
    if (const json* attrs = field(r, path, "attributes", false)) {
      if (!attrs->is_object()) error(pointer(path, "attributes"), "expected an object");
      else
        for (const auto& [k, v] : attrs->items()) route.attributes[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    routes.push_back(std::move(route));
  }
  return routes;
}

std::vector<Demand> Loader::read_demands() {
  std::vector<Demand> demands;
  const json* ds = field(root_, "", "demands", true);
  if (!ds) return demands;
  if (!ds->is_array()) {
    error("/demands", "expected an array");
    return demands;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ds->size(); ++i) {
    const std::string path = pointer("/demands", i);
    const json& d = (*ds)[i];
    if (!d.is_object()) {
      error(path, "expected an object");
      continue;
    }
    const json* name = field(d, path, "name", true);
    const json* o = field(d, path, "origin", true);
    const json* dst = field(d, path, "destination", true);
    const json* type = field(d, path, "type", true);
    const json* vols = field(d, path, "volumes", true);
    if (!name || !o || !dst || !type || !vols) continue;
    auto n = string_at(*name, pointer(path, "name"));
    auto origin = node_named(*o, pointer(path, "origin"));
    auto dest = node_named(*dst, pointer(path, "destination"));
    auto h = type_named(*type, pointer(path, "type"));
    if (!n || !origin || !dest || !h) continue;
    if (!seen.insert(*n).second) error(path, "duplicate demand '" + *n + "'");
    if (*origin == *dest) error(path, "demand '" + *n + "' has the same origin and destination");
    Demand demand;
    demand.name = *n;
    demand.origin = *origin;
    demand.destination = *dest;
    demand.type = *h;
    const std::string vpath = pointer(path, "volumes");
    if (!vols->is_array() || vols->size() != static_cast<std::size_t>(data_.horizon)) {
      error(vpath, "expected " + std::to_string(data_.horizon) + " per-period volumes");
      continue;
    }
    bool ok = true;
    for (std::size_t t = 0; t < vols->size(); ++t) {
      auto v = integer_at((*vols)[t], pointer(vpath, t));
      if (!v || *v < 0) {
        if (v) error(pointer(vpath, t), "volume must be nonnegative");
        ok = false;
        continue;
      }
      demand.volumes.push_back(static_cast<int>(*v));
    }
    if (!ok) continue;
    if (const json* via = field(d, path, "via", false)) {
      if (!via->is_array()) error(pointer(path, "via"), "expected an array of node names");
      else
        for (std::size_t k = 0; k < via->size(); ++k)
          if (auto node = node_named((*via)[k], pointer(pointer(path, "via"), k))) demand.via.push_back(data_.nodes[node->index()]);
    }
    if (const json* attrs = field(d, path, "attributes", false)) {
      if (!attrs->is_object()) error(pointer(path, "attributes"), "expected an object");
      else
        for (const auto& [k, v] : attrs->items()) demand.attributes[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    demands.push_back(std::move(demand));
  }
  return demands;
}

std::optional<std::vector<std::pair<DemandId, RouteId>>> Loader::read_implements(const std::vector<Route>& routes,
                                                                                 const std::vector<Demand>& demands) {
  const json* imp = field(root_, "", "implements", false);
  if (!imp) return std::nullopt;
  std::vector<std::pair<DemandId, RouteId>> pairs;
  if (!imp->is_array()) {
    error("/implements", "expected an array of [demand, route] pairs");
    return pairs;
  }
  for (std::size_t i = 0; i < imp->size(); ++i) {
    const std::string path = pointer("/implements", i);
    const json& p = (*imp)[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      error(path, "expected a [demand, route] pair of names");
      continue;
    }
    const auto dn = p[0].get<std::string>();
    const auto rn = p[1].get<std::string>();
    int d = -1;
    int r = -1;
    for (std::size_t k = 0; k < demands.size(); ++k)
      if (demands[k].name == dn) d = static_cast<int>(k);
    for (std::size_t k = 0; k < routes.size(); ++k)
      if (routes[k].name == rn) r = static_cast<int>(k);
    if (d < 0) error(pointer(path, 0), "unknown demand '" + dn + "'");
    if (r < 0) error(pointer(path, 1), "unknown route '" + rn + "'");
    if (d >= 0 && r >= 0) pairs.emplace_back(DemandId(d), RouteId(r));
  }
  return pairs;
}

ModelConfig Loader::read_config(const std::vector<Route>& routes) {
  ModelConfig cfg;
  const json* c = field(root_, "", "config", false);
  if (!c) return cfg;
  if (!c->is_object()) {
    error("/config", "expected an object");
    return cfg;
  }
  static const std::set<std::string> known{"capacity_mode", "heterogeneity_coefficient", "setup_coefficient",
                                           "setup_overrides", "big_m", "arrival_slack", "arrival_slack_overrides",
                                           "cost_cancel", "cost_post", "relax_integrality", "emit_cancel3",
                                           "flow_tiebreak"};
  for (const auto& [k, v] : c->items())
    if (!known.count(k)) error(pointer("/config", k), "unknown setting");

  auto num = [&](const char* key, double& out) {
    if (const json* v = field(*c, "/config", key, false))
      if (auto x = number_at(*v, pointer("/config", key))) out = *x;
  };
  auto flag = [&](const char* key, bool& out) {
    if (const json* v = field(*c, "/config", key, false))
      if (auto x = bool_at(*v, pointer("/config", key))) out = *x;
  };

  if (const json* v = field(*c, "/config", "capacity_mode", false)) {
    if (auto s = string_at(*v, "/config/capacity_mode")) {
      auto mode = parse_capacity_mode(*s);
      if (mode) cfg.capacity_mode = *mode;
      else error("/config/capacity_mode", "unknown capacity mode '" + *s + "'");
    }
  }
  num("heterogeneity_coefficient", cfg.heterogeneity_coefficient);
  num("setup_coefficient", cfg.setup_coefficient);
  if (const json* v = field(*c, "/config", "big_m", false))
    if (auto x = number_at(*v, "/config/big_m")) cfg.big_m = *x;
  num("arrival_slack", cfg.arrival_slack);
  num("cost_cancel", cfg.cost_cancel);
  num("cost_post", cfg.cost_post);
  flag("relax_integrality", cfg.relax_integrality);
  flag("emit_cancel3", cfg.emit_cancel3);
  flag("flow_tiebreak", cfg.flow_tiebreak);

  if (const json* so = field(*c, "/config", "setup_overrides", false)) {
    if (!so->is_array()) error("/config/setup_overrides", "expected an array");
    else
      for (std::size_t i = 0; i < so->size(); ++i) {
        const std::string path = pointer("/config/setup_overrides", i);
        const json& o = (*so)[i];
        if (!o.is_object()) {
          error(path, "expected an object");
          continue;
        }
        const json* link = field(o, path, "link", true);
        const json* value = field(o, path, "value", true);
        if (!link || !value) continue;
        auto l = link_named(*link, pointer(path, "link"));
        auto x = number_at(*value, pointer(path, "value"));
        SetupCoefficient sc;
        if (const json* p = field(o, path, "period", false)) {
          auto t = integer_at(*p, pointer(path, "period"));
          if (!t) continue;
          sc.period = static_cast<int>(*t);
        }
        if (!l || !x) continue;
        sc.link = *l;
        sc.value = *x;
        cfg.setup_overrides.push_back(sc);
      }
  }
  if (const json* ao = field(*c, "/config", "arrival_slack_overrides", false)) {
    if (!ao->is_object()) error("/config/arrival_slack_overrides", "expected an object keyed by route name");
    else
      for (const auto& [rname, v] : ao->items()) {
        const std::string path = pointer("/config/arrival_slack_overrides", rname);
        int r = -1;
        for (std::size_t k = 0; k < routes.size(); ++k)
          if (routes[k].name == rname) r = static_cast<int>(k);
        if (r < 0) {
          error(path, "unknown route '" + rname + "'");
          continue;
        }
        if (auto x = number_at(v, path)) cfg.arrival_slack_overrides.push_back({RouteId(r), *x});
      }
  }
  return cfg;
}

std::vector<CapacityOverride> Loader::read_overrides() {
  std::vector<CapacityOverride> out;
  const json* os = field(root_, "", "tcr_overrides", false);
  if (!os) return out;
  if (!os->is_array()) {
    error("/tcr_overrides", "expected an array");
    return out;
  }
  for (std::size_t i = 0; i < os->size(); ++i) {
    const std::string path = pointer("/tcr_overrides", i);
    const json& o = (*os)[i];
    if (!o.is_object()) {
      error(path, "expected an object");
      continue;
    }
    const json* link = field(o, path, "link", true);
    const json* period = field(o, path, "period", true);
    if (!link || !period) continue;
    auto l = link_named(*link, pointer(path, "link"));
    CapacityOverride co;
    if (period->is_string() && period->get<std::string>() == "all") {
      co.period = 0;
    } else if (auto t = integer_at(*period, pointer(path, "period"))) {
      if (*t < 1 || *t > data_.horizon) {
        error(pointer(path, "period"), "period " + std::to_string(*t) + " outside the horizon 1.." +
                                           std::to_string(data_.horizon));
        continue;
      }
      co.period = static_cast<int>(*t);
    } else {
      continue;
    }
    const json* cap = field(o, path, "capacity", false);
    const json* factor = field(o, path, "factor", false);
    if ((cap != nullptr) == (factor != nullptr)) {
      error(path, "give exactly one of 'capacity' and 'factor'");
      continue;
    }
    auto x = cap ? number_at(*cap, pointer(path, "capacity")) : number_at(*factor, pointer(path, "factor"));
    if (!x || !l) continue;
    if (*x < 0.0) {
      error(path, "override must be nonnegative");
      continue;
    }
    co.link = *l;
    co.scale = factor != nullptr;
    co.value = *x;
    out.push_back(co);
  }
  return out;
}

Scenario Loader::load() {
  if (!root_.is_object()) throw ScenarioError({"/: expected a JSON object"});

  std::string name;
  std::string description;
  if (const json* n = field(root_, "", "name", false))
    if (auto s = string_at(*n, "/name")) name = *s;
  if (const json* n = field(root_, "", "description", false))
    if (auto s = string_at(*n, "/description")) description = *s;
  static const std::set<std::string> known{"name", "description", "period_length_minutes", "horizon",
                                           "train_types", "nodes", "links", "coupled", "capacities",
                                           "durations", "routes", "demands", "implements", "config",
                                           "tcr_overrides"};
  for (const auto& [k, v] : root_.items())
    if (!known.count(k)) error(pointer("", k), "unknown field");
  if (const json* p = field(root_, "", "period_length_minutes", false))
    if (auto v = integer_at(*p, "/period_length_minutes")) {
      if (*v < 1) error("/period_length_minutes", "must be a positive integer");
      else period_minutes_ = static_cast<int>(*v);
    }
  if (const json* h = field(root_, "", "horizon", true))
    if (auto v = integer_at(*h, "/horizon")) {
      if (*v < 1) error("/horizon", "must be at least 1");
      else data_.horizon = static_cast<int>(*v);
    }

  data_.train_types = name_list(root_, "train_types", "train type");
  data_.nodes = name_list(root_, "nodes", "node");
  for (std::size_t i = 0; i < data_.nodes.size(); ++i) node_index_.emplace(data_.nodes[i], static_cast<int>(i));
  for (std::size_t i = 0; i < data_.train_types.size(); ++i)
    type_index_.emplace(data_.train_types[i], static_cast<int>(i));

  read_links();
  read_capacities();
  read_durations();
  std::vector<Route> routes = read_routes();
  std::vector<Demand> demands = read_demands();
  auto implements = read_implements(routes, demands);
  ModelConfig config = read_config(routes);
  std::vector<CapacityOverride> overrides = read_overrides();
  if (!errors_.empty()) throw ScenarioError(errors_);

  std::optional<Network> network;
  try {
    network.emplace(data_);
  } catch (const std::exception& e) {
    throw ScenarioError({std::string("/links: ") + e.what()});
  }
  for (const auto& v : validate_network(*network).violations)
    if (v.code != "duration-exceeds-period") error("/links", v.code + ": " + v.message);
  for (std::size_t i = 0; i < routes.size(); ++i)
    for (const auto& v : validate_route(routes[i], *network).violations)
      error(pointer("/routes", i), "route '" + routes[i].name + "': " + v.code + ": " + v.message);
  if (!errors_.empty()) throw ScenarioError(errors_);

  std::optional<ServiceCatalog> catalog;
  try {
    catalog.emplace(*network, std::move(routes), std::move(demands), implements);
  } catch (const std::exception& e) {
    error(implements ? "/implements" : "/demands", e.what());
  }
  try {
    validate_config(config, *network);
  } catch (const std::exception& e) {
    error("/config", e.what());
  }
  if (!errors_.empty()) throw ScenarioError(errors_);

  return Scenario{std::move(name), std::move(description), period_minutes_, std::move(*network), std::move(*catalog), implements.has_value(),
                  std::move(config), std::move(overrides)};
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

Scenario load_scenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ScenarioError({"byte " + std::to_string(e.byte) + ": " + e.what()});
  }
  return Loader(root).load();
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError({path.string() + ": cannot open file"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

}  // namespace railflow
