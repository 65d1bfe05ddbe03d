#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "railflow/formulation.hpp"

namespace railflow {

std::string_view to_string(CapacityMode mode) {
  switch (mode) {
    case CapacityMode::basic: return "basic";
    case CapacityMode::single_track_alt1: return "single_track_alt1";
    case CapacityMode::single_track_alt2: return "single_track_alt2";
    case CapacityMode::heterogeneous: return "heterogeneous";
  }
  return "basic";
}

std::optional<CapacityMode> parse_capacity_mode(std::string_view text) {
  for (auto m : {CapacityMode::basic, CapacityMode::single_track_alt1, CapacityMode::single_track_alt2,
                 CapacityMode::heterogeneous})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::string_view to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::dep: return "dep";
    case VariableKind::arr: return "arr";
    case VariableKind::ext: return "ext";
    case VariableKind::direct: return "direct";
    case VariableKind::next: return "next";
    case VariableKind::ni: return "ni";
    case VariableKind::in: return "in";
    case VariableKind::aggr: return "aggr";
    case VariableKind::post: return "post";
    case VariableKind::cancel_t: return "cancel_t";
    case VariableKind::cancel_total: return "cancel_total";
    case VariableKind::linkcap: return "linkcap";
    case VariableKind::setup_w: return "setup_w";
    case VariableKind::dirflag_beta: return "dirflag_beta";
  }
  return "?";
}

double ModelConfig::setup_coefficient_for(LinkId link, int period) const {
  double value = setup_coefficient;
  for (const auto& o : setup_overrides)
    if (o.link == link && (o.period == 0 || o.period == period)) value = o.value;
  return value;
}

double ModelConfig::arrival_slack_for(RouteId route) const {
  double value = arrival_slack;
  for (const auto& o : arrival_slack_overrides)
    if (o.route == route) value = o.value;
  return value;
}

double ModelConfig::big_m_for(const Network& network) const {
  if (big_m) return *big_m;
  return 10.0 * std::max(network.max_capacity(), 1.0);
}

void validate_config(const ModelConfig& config, const Network& network) {
  if (config.heterogeneity_coefficient < 0.0)
    throw std::invalid_argument("heterogeneity coefficient must be nonnegative");
  auto check_setup = [](double k) {
    if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("setup coefficient must lie in (0, 1]");
  };
  check_setup(config.setup_coefficient);
  for (const auto& o : config.setup_overrides) {
    check_setup(o.value);
    network.link(o.link);
    if (o.period < 0 || o.period > network.horizon())
      throw std::invalid_argument("setup coefficient override outside the horizon");
  }
  if (!(config.big_m_for(network) > network.max_capacity()))
    throw std::invalid_argument("big-M must exceed the largest nominal capacity");
  if (config.arrival_slack < 0.0) throw std::invalid_argument("arrival slack must be nonnegative");
  for (const auto& o : config.arrival_slack_overrides)
    if (o.value < 0.0) throw std::invalid_argument("arrival slack must be nonnegative");
  if (config.cost_cancel < 0.0 || config.cost_post < 0.0)
    throw std::invalid_argument("objective weights must be nonnegative");
}

int VariableLayout::Block::size() const {
  if (!present) return 0;
  int s = 1;
  for (int d = 0; d < rank; ++d) s *= extent[static_cast<std::size_t>(d)];
  return s;
}

void VariableLayout::add(VariableKind kind, std::array<int, 3> extent, std::array<int, 3> base, int rank) {
  Block& b = blocks_[static_cast<std::size_t>(kind)];
  b.offset = columns_;
  b.extent = extent;
  b.base = base;
  b.rank = rank;
  b.present = true;
  columns_ += b.size();
}

VariableLayout::VariableLayout(const Network& network, const ServiceCatalog& catalog, CapacityMode mode) {
  const int T = network.horizon();
  const int N = static_cast<int>(network.node_count());
  const int L = static_cast<int>(network.link_count());
  const int H = static_cast<int>(network.train_type_count());
  const int R = static_cast<int>(catalog.route_count());
  const int D = static_cast<int>(catalog.demand_count());

  add(VariableKind::dep, {R, T, 0}, {0, 1, 0}, 2);
  add(VariableKind::arr, {R, T, 0}, {0, 1, 0}, 2);
  add(VariableKind::ext, {N, T, R}, {0, 1, 0}, 3);
  add(VariableKind::direct, {L, T, R}, {0, 1, 0}, 3);
  add(VariableKind::next, {L, T + 1, R}, {0, 0, 0}, 3);
  add(VariableKind::ni, {N, T + 1, R}, {0, 0, 0}, 3);
  add(VariableKind::in, {N, T + 1, R}, {0, 0, 0}, 3);
  add(VariableKind::aggr, {N, T + 1, R}, {0, 0, 0}, 3);
  add(VariableKind::post, {D, T + 1, 0}, {0, 0, 0}, 2);
  add(VariableKind::cancel_t, {D, T, 0}, {0, 1, 0}, 2);
  add(VariableKind::cancel_total, {D, 0, 0}, {0, 0, 0}, 1);
  add(VariableKind::linkcap, {L, T, H}, {0, 1, 0}, 3);
  if (mode == CapacityMode::single_track_alt2) {
    const int P = static_cast<int>(network.coupled_pairs().size());
    if (P > 0) {
      add(VariableKind::setup_w, {P, T, 0}, {0, 1, 0}, 2);
      add(VariableKind::dirflag_beta, {P, T, 0}, {0, 1, 0}, 2);
    }
  }
}

int VariableLayout::column(const VariableRef& ref) const {
  const Block& b = block(ref.kind);
  if (!b.present) throw std::out_of_range(std::string("variable family '") + std::string(to_string(ref.kind)) + "' is not part of this model");
  const std::array<int, 3> idx{ref.i, ref.j, ref.k};
  int flat = 0;
  for (int d = 0; d < b.rank; ++d) {
    const auto du = static_cast<std::size_t>(d);
    const int v = idx[du] - b.base[du];
    if (v < 0 || v >= b.extent[du])
      throw std::out_of_range(std::string("index out of range for variable family '") + std::string(to_string(ref.kind)) + "'");
    flat = flat * b.extent[du] + v;
  }
  return b.offset + flat;
}

VariableRef VariableLayout::ref(int column) const {
  for (std::size_t kind = 0; kind < kVariableKindCount; ++kind) {
    const Block& b = blocks_[kind];
    if (!b.present || column < b.offset || column >= b.offset + b.size()) continue;
    int flat = column - b.offset;
    std::array<int, 3> idx{0, 0, 0};
    for (int d = b.rank - 1; d >= 0; --d) {
      const auto du = static_cast<std::size_t>(d);
      idx[du] = flat % b.extent[du] + b.base[du];
      flat /= b.extent[du];
    }
    return {static_cast<VariableKind>(kind), idx[0], idx[1], idx[2]};
  }
  throw std::out_of_range("column outside the layout");
}

void LinearConstraint::canonicalize() {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.column < b.column; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("non-finite coefficient in " + name);
    if (!merged.empty() && merged.back().column == t.column)
      merged.back().coefficient += t.coefficient;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == 0.0; });
  terms = std::move(merged);
}

double LinearConstraint::activity(const std::vector<double>& values) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coefficient * values[static_cast<std::size_t>(t.column)];
  return s;
}

TimeExpandedModel::TimeExpandedModel(VariableLayout layout, std::vector<VariableInfo> variables, int horizon)
    : layout_(std::move(layout)), variables_(std::move(variables)), horizon_(horizon) {
  objective_.assign(variables_.size(), 0.0);
}

std::vector<const LinearConstraint*> TimeExpandedModel::family(std::string_view name) const {
  std::vector<const LinearConstraint*> out;
  for (const auto& c : constraints_)
    if (c.family == name) out.push_back(&c);
  return out;
}

double TimeExpandedModel::objective_value(const std::vector<double>& values) const {
  double s = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) s += objective_[j] * values[j];
  return s;
}

void TimeExpandedModel::add_constraints(std::vector<LinearConstraint> batch) {
  const int n = layout_.column_count();
  for (auto& c : batch) {
    for (const auto& t : c.terms)
      if (t.column < 0 || t.column >= n) throw std::logic_error("constraint " + c.name + " references an undeclared variable");
    constraints_.push_back(std::move(c));
  }
}

}  // namespace railflow
