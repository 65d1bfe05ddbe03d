#include <stdexcept>

#include "railflow/scenario.hpp"

namespace railflow {

Scenario apply_tcr(const Scenario& scenario, std::span<const CapacityOverride> overrides) {
  const Network& net = scenario.network;
  const int T = net.horizon();
  NetworkData data = net.data();
  for (const auto& o : overrides) {
    if (o.link.value < 0 || o.link.index() >= net.link_count())
      throw std::invalid_argument("override names an unknown link");
    if (o.period < 0 || o.period > T)
      throw std::invalid_argument("override period " + std::to_string(o.period) + " outside the horizon");
    if (!(o.value >= 0.0)) throw std::invalid_argument("override must be nonnegative");
    const int first = o.period == 0 ? 1 : o.period;
    const int last = o.period == 0 ? T : o.period;
    for (int t = first; t <= last; ++t) {
      double& cell = data.capacity[o.link.index() * static_cast<std::size_t>(T) + static_cast<std::size_t>(t - 1)];
      cell = o.scale ? cell * o.value : o.value;
    }
  }
  return Scenario{scenario.name, scenario.description, scenario.period_length_minutes, Network(std::move(data)), scenario.catalog,
                  scenario.explicit_implements, scenario.config, scenario.tcr_overrides};
}

}  // namespace railflow
