#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mpinv/matrix.hpp"

namespace mpinv {

struct ConditionVerdict {
  std::string name;
  bool holds = false;
  double residual = 0.0;
};

/// Ordered list of named verdicts plus the tolerance they were decided at.
struct ConditionReport {
  std::vector<ConditionVerdict> verdicts;
  Tolerance tolerance;

  void add(std::string name, bool holds, double residual) {
    verdicts.push_back({std::move(name), holds, residual});
  }

  /// Throws Error{InvalidArgument} for an unknown name.
  const ConditionVerdict& at(std::string_view name) const;
  bool holds(std::string_view name) const { return at(name).holds; }
  bool contains(std::string_view name) const;
};

}  // namespace mpinv
