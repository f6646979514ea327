#pragma once

// Invariant suite shared by the `verify` command and the acceptance tests.

#include <optional>
#include <vector>

#include "qwalk/checks.hpp"
#include "qwalk/special_cases.hpp"
#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

// Deterministic sample of valid configurations with N <= max_n: a fixed list
// of vertex counts crossed with m0 in {1, 2, N/4, N/2, N-2, N-1} and
// P in {1, 2, 3, N - m0} where divisible, plus the worked examples.
std::vector<UcpgConfig> verification_grid(Index max_n);

// Configurations where the first-order degeneracy argument resolves the
// 101-point gap scan: alpha N (beta+^2 + 1) >= kGapRegimeThreshold.
inline constexpr double kGapRegimeThreshold = 400.0;
bool in_gap_regime(const UcpgConfig& config);
// Scaling-case configurations at N in {2^10, 2^12, 2^14} (3x3 only).
std::vector<UcpgConfig> gap_regime_grid();

struct VerifyOptions {
  Index max_n = 128;
  // Replaces every numeric tolerance when set.
  std::optional<double> tol;
  Index guard = dense_guard();
};

struct VerificationBundle {
  Index max_n = 0;
  std::size_t grid_size = 0;
  std::vector<Check> checks;
  std::vector<CaseReport> special_cases;

  bool all_passed() const;
  std::vector<std::string> failing_ids() const;
};

VerificationBundle run_verification(const VerifyOptions& options);

}  // namespace qwalk
