#pragma once

#include <string>
#include <vector>

namespace railflow {

struct Violation {
  std::string code;     // stable machine tag, e.g. "self-loop"
  std::string message;  // human readable, names the offending entity
};

/// Findings of a structural check. Empty means well-formed.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const {
    for (const auto& v : violations)
      if (v.code == code) return true;
    return false;
  }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

}  // namespace railflow
