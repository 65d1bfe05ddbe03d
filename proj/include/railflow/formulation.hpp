#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railflow/catalog.hpp"
#include "railflow/ids.hpp"
#include "railflow/network.hpp"

namespace railflow {

enum class CapacityMode { basic, single_track_alt1, single_track_alt2, heterogeneous };

std::string_view to_string(CapacityMode mode);
std::optional<CapacityMode> parse_capacity_mode(std::string_view text);

/// Setup coefficient for one link in one period; period 0 applies to all.
struct SetupCoefficient {
  LinkId link;
  int period = 0;
  double value = 1.0;
};

struct ArrivalSlack {
  RouteId route;
  double value = 0.0;
};

struct ModelConfig {
  CapacityMode capacity_mode = CapacityMode::basic;
  /// Weight of other train types' allocations in the heterogeneous mode.
  double heterogeneity_coefficient = 0.25;
  /// Direction-change setup coefficient, in (0, 1]; 1 means the setup
  /// equals the smaller directional volume.
  double setup_coefficient = 1.0;
  std::vector<SetupCoefficient> setup_overrides;
  /// Disjunction constant of the single-track setup model. Defaults to ten
  /// times the largest nominal capacity.
  std::optional<double> big_m;
  double arrival_slack = 0.0;
  std::vector<ArrivalSlack> arrival_slack_overrides;
  double cost_cancel = 1000.0;
  double cost_post = 20.0;
  bool relax_integrality = false;
  /// Also emit the arrival-side cancellation count (redundant with Cancel2).
  bool emit_cancel3 = false;
  /// Attach the secondary objective that prefers direct arcs over next arcs
  /// and next arcs over waiting. It only breaks ties among primary optima.
  bool flow_tiebreak = true;

  double setup_coefficient_for(LinkId link, int period) const;
  double arrival_slack_for(RouteId route) const;
  double big_m_for(const Network& network) const;
};

/// Throws std::invalid_argument when the configuration breaks its invariants
/// for the given network.
void validate_config(const ModelConfig& config, const Network& network);

enum class VariableKind {
  dep,           // [route, t]
  arr,           // [route, t]
  ext,           // [node, t, route]
  direct,        // [link, t, route]
  next,          // [link, t in 0..T, route]
  ni,            // [node, t in 0..T, route]
  in,            // [node, t in 0..T, route]
  aggr,          // [node, t in 0..T, route]
  post,          // [demand, t in 0..T]
  cancel_t,      // [demand, t]
  cancel_total,  // [demand]
  linkcap,       // [link, t, train type]
  setup_w,       // [coupled pair, t]
  dirflag_beta,  // [coupled pair, t]
};
inline constexpr std::size_t kVariableKindCount = 14;

std::string_view to_string(VariableKind kind);

/// One model variable: its family plus up to three indices, in the order the
/// family comment above lists them. Periods are stored as their real value
/// (1-based, or 0-based for the families that include the initial period).
struct VariableRef {
  VariableKind kind = VariableKind::dep;
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const VariableRef&, const VariableRef&) = default;

  static VariableRef dep(RouteId r, int t) { return {VariableKind::dep, r.value, t, 0}; }
  static VariableRef arr(RouteId r, int t) { return {VariableKind::arr, r.value, t, 0}; }
  static VariableRef ext(NodeId n, int t, RouteId r) { return {VariableKind::ext, n.value, t, r.value}; }
  static VariableRef direct(LinkId l, int t, RouteId r) { return {VariableKind::direct, l.value, t, r.value}; }
  static VariableRef next(LinkId l, int t, RouteId r) { return {VariableKind::next, l.value, t, r.value}; }
  static VariableRef ni(NodeId n, int t, RouteId r) { return {VariableKind::ni, n.value, t, r.value}; }
  static VariableRef in(NodeId n, int t, RouteId r) { return {VariableKind::in, n.value, t, r.value}; }
  static VariableRef aggr(NodeId n, int t, RouteId r) { return {VariableKind::aggr, n.value, t, r.value}; }
  static VariableRef post(DemandId d, int t) { return {VariableKind::post, d.value, t, 0}; }
  static VariableRef cancel_t(DemandId d, int t) { return {VariableKind::cancel_t, d.value, t, 0}; }
  static VariableRef cancel_total(DemandId d) { return {VariableKind::cancel_total, d.value, 0, 0}; }
  static VariableRef linkcap(LinkId l, int t, TrainTypeId h) { return {VariableKind::linkcap, l.value, t, h.value}; }
  static VariableRef setup_w(int pair, int t) { return {VariableKind::setup_w, pair, t, 0}; }
  static VariableRef dirflag_beta(int pair, int t) { return {VariableKind::dirflag_beta, pair, t, 0}; }
};

/// Dense column numbering of every variable family. Each family is a block
/// with up to three extents; columns follow family order, then row-major
/// index order, so numbering is deterministic.
class VariableLayout {
 public:
  struct Block {
    int offset = 0;
    std::array<int, 3> extent{0, 0, 0};
    std::array<int, 3> base{0, 0, 0};  // value of the first index (periods start at 0 or 1)
    int rank = 0;
    bool present = false;
    int size() const;
  };

  VariableLayout() = default;
  VariableLayout(const Network& network, const ServiceCatalog& catalog, CapacityMode mode);

  int column_count() const { return columns_; }
  const Block& block(VariableKind kind) const { return blocks_[static_cast<std::size_t>(kind)]; }
  bool has(VariableKind kind) const { return block(kind).present; }

  /// Column of the variable; throws std::out_of_range for an index outside
  /// the family's domain or an absent family.
  int column(const VariableRef& ref) const;
  VariableRef ref(int column) const;

 private:
  void add(VariableKind kind, std::array<int, 3> extent, std::array<int, 3> base, int rank);

  std::array<Block, kVariableKindCount> blocks_{};
  int columns_ = 0;
};

struct VariableInfo {
  VariableRef ref;
  std::string name;  // family[index=...,...]
  double lower = 0.0;
  double upper = 0.0;  // +inf when unbounded
  bool integer = false;
};

enum class Relation { less_equal, equal, greater_equal };

struct Term {
  int column = 0;
  double coefficient = 0.0;
};

struct LinearConstraint {
  std::string family;  // e.g. "Capacity4"
  std::string name;    // family[index=...,...]
  std::vector<Term> terms;
  Relation relation = Relation::equal;
  double rhs = 0.0;

  /// Sorts terms by column, merges duplicates and drops zero coefficients.
  void canonicalize();
  double activity(const std::vector<double>& values) const;
};

/// The complete linear model: variables, constraints, objective and
/// integrality marks. Built by build_model, immutable afterwards.
class TimeExpandedModel {
 public:
  TimeExpandedModel() = default;
  TimeExpandedModel(VariableLayout layout, std::vector<VariableInfo> variables, int horizon);

  const VariableLayout& layout() const { return layout_; }
  int horizon() const { return horizon_; }

  const std::vector<VariableInfo>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& tiebreak() const { return tiebreak_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// True when built with relax_integrality; solvers then ignore every
  /// integrality mark, including the direction flags.
  bool integrality_relaxed() const { return relaxed_; }

  int column(const VariableRef& ref) const { return layout_.column(ref); }
  const VariableInfo& variable(const VariableRef& ref) const { return variables_[static_cast<std::size_t>(column(ref))]; }
  double value(const std::vector<double>& values, const VariableRef& ref) const {
    return values[static_cast<std::size_t>(column(ref))];
  }

  /// Constraints of one family, in emission order.
  std::vector<const LinearConstraint*> family(std::string_view name) const;
  double objective_value(const std::vector<double>& values) const;

  void add_constraints(std::vector<LinearConstraint> batch);
  void set_objective(std::vector<double> objective) { objective_ = std::move(objective); }
  void set_tiebreak(std::vector<double> tiebreak) { tiebreak_ = std::move(tiebreak); }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }
  void set_integrality_relaxed(bool relaxed) { relaxed_ = relaxed; }

 private:
  VariableLayout layout_;
  std::vector<VariableInfo> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<double> objective_;
  std::vector<double> tiebreak_;
  std::vector<std::string> warnings_;
  int horizon_ = 0;
  bool relaxed_ = false;
};

/// Declares every variable family with bounds and integrality marks; no
/// constraints yet. Throws std::invalid_argument when a route needs more than
/// one period on a link.
TimeExpandedModel build_variables(const Network& network, const ServiceCatalog& catalog, const ModelConfig& config);

std::vector<LinearConstraint> emit_capacity(const TimeExpandedModel& model, const Network& network,
                                            const ServiceCatalog& catalog, const ModelConfig& config);
std::vector<LinearConstraint> emit_demand_layer(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                                const ModelConfig& config);
std::vector<LinearConstraint> emit_flow_layer(const TimeExpandedModel& model, const Network& network,
                                              const ServiceCatalog& catalog);
std::vector<LinearConstraint> emit_aggregates(const TimeExpandedModel& model, const Network& network,
                                              const ServiceCatalog& catalog);
std::vector<LinearConstraint> emit_arrival(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                           const ModelConfig& config);

/// Objective coefficients per column (minimization).
std::vector<double> build_objective(const TimeExpandedModel& model, const ServiceCatalog& catalog,
                                    const ModelConfig& config);

/// Secondary objective used only to pick among primary optima.
std::vector<double> build_flow_tiebreak(const TimeExpandedModel& model, const ServiceCatalog& catalog);

/// Weight of a departure in period t' on the maximum aggregated volume at a
/// node reached after `aggregate` periods of travel, accumulated up to period
/// t (k = t - t' >= 0).
double aggregate_increment(double aggregate, int k);

TimeExpandedModel build_model(const Network& network, const ServiceCatalog& catalog, const ModelConfig& config);

}  // namespace railflow
