#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

// One named numeric check aggregated over a set of configurations: the worst
// value seen is compared against the tolerance (value <= tolerance passes).
struct Check {
  std::string id;
  std::string description;
  double tolerance = 0.0;
  double worst_value = 0.0;
  std::optional<UcpgConfig> worst_config;
  std::size_t evaluated = 0;
  std::size_t failures = 0;

  bool passed() const noexcept { return evaluated > 0 && failures == 0; }

  void record(double value, const UcpgConfig& config) {
    ++evaluated;
    if (!(value <= tolerance)) ++failures;  // NaN fails
    if (evaluated == 1 || !(value <= worst_value)) {
      worst_value = value;
      worst_config = config;
    }
  }
};

}  // namespace qwalk
