#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sumnet {

/// A list of violated invariants. Violations are data, not errors.
struct ValidationReport {
  struct Violation {
    std::string check;    // short machine-readable tag, e.g. "pair-coverage"
    std::string message;  // human-readable detail
  };

  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(const std::string& check) const {
    for (const auto& v : violations) {
      if (v.check == check) return true;
    }
    return false;
  }
  void add(std::string check, std::string message) {
    violations.push_back({std::move(check), std::move(message)});
  }
};

}  // namespace sumnet
