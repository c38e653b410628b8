#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nuset {

struct Violation {
  std::string kind;
  std::string detail;
};

/// Outcome of a checker.  Violations are data; an empty list means the
/// checked property holds on everything that was examined.
struct Report {
  std::vector<Violation> violations;
  std::size_t checked = 0;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string kind, std::string detail) {
    violations.push_back({std::move(kind), std::move(detail)});
  }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    checked += other.checked;
  }
};

}  // namespace nuset
