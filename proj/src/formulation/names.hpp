#pragma once

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "railflow/formulation.hpp"

namespace railflow::detail {

/// family[key=value,...]
inline std::string tagged(std::string_view family, std::initializer_list<std::pair<const char*, std::string>> idx) {
  std::string out(family);
  out += '[';
  bool first = true;
  for (const auto& [k, v] : idx) {
    if (!first) out += ',';
    first = false;
    out += k;
    out += '=';
    out += v;
  }
  out += ']';
  return out;
}

inline std::string num(int v) { return std::to_string(v); }

/// Accumulates one constraint; the result is canonicalized.
class RowBuilder {
 public:
  RowBuilder(const TimeExpandedModel& model, std::string family, std::string name)
      : model_(model) {
    row_.family = std::move(family);
    row_.name = std::move(name);
  }

  RowBuilder& add(const VariableRef& ref, double coefficient) {
    row_.terms.push_back({model_.column(ref), coefficient});
    return *this;
  }

  LinearConstraint finish(Relation relation, double rhs) {
    row_.relation = relation;
    row_.rhs = rhs;
    row_.canonicalize();
    return std::move(row_);
  }

 private:
  const TimeExpandedModel& model_;
  LinearConstraint row_;
};

/// Single-variable equality fixing a variable to zero.
inline LinearConstraint fix_zero(const TimeExpandedModel& model, std::string family, std::string name,
                                 const VariableRef& ref) {
  return RowBuilder(model, std::move(family), std::move(name)).add(ref, 1.0).finish(Relation::equal, 0.0);
}

}  // namespace railflow::detail
