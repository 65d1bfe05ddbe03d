#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "railflow/catalog.hpp"
#include "railflow/formulation.hpp"
#include "railflow/network.hpp"
#include "railflow/solver.hpp"

namespace railflow {

/// Replaces (capacity) or scales (factor) the nominal capacity of a link in
/// one period, or in every period when period == 0.
struct CapacityOverride {
  LinkId link;
  int period = 0;
  bool scale = false;
  double value = 0.0;
};

struct Scenario {
  std::string name;
  /// Free text, e.g. which inputs are assumed rather than measured.
  std::string description;
  int period_length_minutes = 60;
  Network network;
  ServiceCatalog catalog;
  /// True when the document listed the demand -> route relation explicitly.
  bool explicit_implements = false;
  ModelConfig config;
  std::vector<CapacityOverride> tcr_overrides;
};

/// Every problem found while loading, each prefixed with a JSON pointer or a
/// byte offset into the document.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Canonical document: durations in period fractions, capacities spelled out
/// per period. Loading it yields an equivalent scenario.
std::string serialize_scenario(const Scenario& scenario);

/// Copy with the listed capacity cells edited. Throws std::invalid_argument
/// for an unknown link, a period outside the horizon or a negative result.
Scenario apply_tcr(const Scenario& scenario, std::span<const CapacityOverride> overrides);

struct CapacityUsageReport {
  int horizon = 0;
  std::vector<std::string> links;
  std::vector<std::string> train_types;
  /// Direct arcs plus half of the next arcs on either side, [link][t - 1].
  std::vector<std::vector<double>> used;
  /// Same split by train type, [link][type][t - 1].
  std::vector<std::vector<std::vector<double>>> by_type;
  std::vector<std::vector<double>> nominal;
  struct SetupRow {
    std::string label;  // "setup:F-H/H-F"
    std::vector<double> values;
  };
  /// Present only for the setup-time single-track mode.
  std::vector<SetupRow> setup;
};

struct DemandOutcome {
  std::string demand;
  long long requested_total = 0;
  std::vector<int> requested;
  struct RouteDepartures {
    std::string route;
    std::vector<double> values;
  };
  std::vector<RouteDepartures> departures;
  std::vector<double> postponed;  // carried out of period t
  std::vector<double> cancelled;
  double cancelled_total = 0.0;
  double served_total = 0.0;
};

struct DemandOutcomeReport {
  int horizon = 0;
  std::vector<DemandOutcome> demands;
};

CapacityUsageReport capacity_usage(const TimeExpandedModel& model, const Scenario& scenario,
                                   const std::vector<double>& values);
DemandOutcomeReport demand_outcome(const TimeExpandedModel& model, const Scenario& scenario,
                                   const std::vector<double>& values);

/// link,1..T with one row per link in enumeration order, then setup rows.
std::string report_capacity_csv(const CapacityUsageReport& report);
/// link,type,1..T.
std::string report_capacity_by_type_csv(const CapacityUsageReport& report);
/// demand,kind,route,1..T,total.
std::string report_demand_csv(const DemandOutcomeReport& report);

struct RunResult {
  Scenario scenario;  // after the inline overrides
  TimeExpandedModel model;
  SolveResult solve;
  CapacityUsageReport capacity;
  DemandOutcomeReport demand;
};

/// Applies the scenario's inline overrides, builds, solves and derives the
/// reports. Reports are empty unless the solve produced values.
RunResult run(const Scenario& scenario, const Tolerances& tol = {});

}  // namespace railflow
