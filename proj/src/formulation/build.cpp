#include "railflow/formulation.hpp"

namespace railflow {

TimeExpandedModel build_model(const Network& network, const ServiceCatalog& catalog, const ModelConfig& config) {
  validate_config(config, network);
  TimeExpandedModel model = build_variables(network, catalog, config);
  model.set_integrality_relaxed(config.relax_integrality);

  const bool single_track = config.capacity_mode == CapacityMode::single_track_alt1 ||
                            config.capacity_mode == CapacityMode::single_track_alt2;
  if (single_track && network.coupled_pairs().empty())
    model.add_warning("capacity mode " + std::string(to_string(config.capacity_mode)) +
                      " requested but the network has no coupled single-track links");

  model.add_constraints(emit_capacity(model, network, catalog, config));
  model.add_constraints(emit_demand_layer(model, catalog, config));
  model.add_constraints(emit_flow_layer(model, network, catalog));
  model.add_constraints(emit_aggregates(model, network, catalog));
  model.add_constraints(emit_arrival(model, catalog, config));
  model.set_objective(build_objective(model, catalog, config));
  if (config.flow_tiebreak) model.set_tiebreak(build_flow_tiebreak(model, catalog));
  return model;
}

}  // namespace railflow
