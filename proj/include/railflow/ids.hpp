#pragma once

#include <compare>
#include <cstddef>
#include <functional>

namespace railflow {

/// Dense zero-based index into one enumerated set. The tag keeps node, link,
/// train-type, route and demand indices from being mixed up.
template <class Tag>
struct Id {
  int value = -1;

  constexpr Id() = default;
  constexpr explicit Id(int v) : value(v) {}

  constexpr bool valid() const { return value >= 0; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using NodeId = Id<struct NodeTag>;
using LinkId = Id<struct LinkTag>;
using TrainTypeId = Id<struct TrainTypeTag>;
using RouteId = Id<struct RouteTag>;
using DemandId = Id<struct DemandTag>;

}  // namespace railflow

template <class Tag>
struct std::hash<railflow::Id<Tag>> {
  std::size_t operator()(railflow::Id<Tag> id) const noexcept {
    return std::hash<int>{}(id.value);
  }
};
