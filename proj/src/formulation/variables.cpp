#include <limits>
#include <stdexcept>

#include "names.hpp"
#include "railflow/formulation.hpp"

namespace railflow {

using detail::num;
using detail::tagged;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Namer {
  const Network& net;
  const ServiceCatalog& cat;

  std::string node(int i) const { return net.node(NodeId(i)).name; }
  std::string link(int i) const { return net.link(LinkId(i)).name; }
  std::string route(int i) const { return cat.route(RouteId(i)).name; }
  std::string demand(int i) const { return cat.demand(DemandId(i)).name; }
  std::string type(int i) const { return net.train_type(TrainTypeId(i)).label; }

  std::string operator()(const VariableRef& v) const {
    const auto fam = to_string(v.kind);
    switch (v.kind) {
      case VariableKind::dep:
      case VariableKind::arr: return tagged(fam, {{"r", route(v.i)}, {"t", num(v.j)}});
      case VariableKind::ext:
      case VariableKind::ni:
      case VariableKind::in:
      case VariableKind::aggr: return tagged(fam, {{"n", node(v.i)}, {"t", num(v.j)}, {"r", route(v.k)}});
      case VariableKind::direct:
      case VariableKind::next: return tagged(fam, {{"l", link(v.i)}, {"t", num(v.j)}, {"r", route(v.k)}});
      case VariableKind::post:
      case VariableKind::cancel_t: return tagged(fam, {{"d", demand(v.i)}, {"t", num(v.j)}});
      case VariableKind::cancel_total: return tagged(fam, {{"d", demand(v.i)}});
      case VariableKind::linkcap: return tagged(fam, {{"l", link(v.i)}, {"t", num(v.j)}, {"h", type(v.k)}});
      case VariableKind::setup_w:
      case VariableKind::dirflag_beta: {
        const auto pair = net.coupled_pairs()[static_cast<std::size_t>(v.i)];
        return tagged(fam, {{"l", link(pair.lower.value)}, {"t", num(v.j)}});
      }
    }
    return std::string(fam);
  }
};

}  // namespace

TimeExpandedModel build_variables(const Network& network, const ServiceCatalog& catalog, const ModelConfig& config) {
  for (const auto& r : catalog.routes())
    for (LinkId l : r.links)
      if (network.duration(l, r.type) > 1.0)
        throw std::invalid_argument("route '" + r.name + "' needs more than one period on link '" +
                                    network.link(l).name + "'");

  VariableLayout layout(network, catalog, config.capacity_mode);
  const Namer name{network, catalog};

  std::vector<VariableInfo> vars(static_cast<std::size_t>(layout.column_count()));
  for (int c = 0; c < layout.column_count(); ++c) {
    VariableInfo& v = vars[static_cast<std::size_t>(c)];
    v.ref = layout.ref(c);
    v.name = name(v.ref);
    v.lower = 0.0;
    v.upper = kInf;
    switch (v.ref.kind) {
      case VariableKind::ext:
        // Sink side carries -arr, so ext is free.
        v.lower = -kInf;
        break;
      case VariableKind::dirflag_beta:
        v.upper = 1.0;
        v.integer = true;
        break;
      case VariableKind::cancel_total:
        v.upper = static_cast<double>(catalog.demand_total(DemandId(v.ref.i)));
        v.integer = !config.relax_integrality;
        break;
      default: break;
    }
  }
  return TimeExpandedModel(std::move(layout), std::move(vars), network.horizon());
}

}  // namespace railflow
