#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/types.hpp"
#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

enum class SpecialKind { complete, bipartite, star };

std::string_view to_string(SpecialKind kind);
SpecialKind parse_special_kind(std::string_view name);

// complete: m0 = m1 = 1, P = N - 1. bipartite: P = 1 with the given m0.
// star: marked leaf, m0 = N - 1, m1 = 1, P = 1.
UcpgConfig instantiate(SpecialKind kind, Index n, std::optional<Index> m0 = std::nullopt);

struct ExpectedReduced {
  // Displayed form with the exact sqrt(N - 1) for the star graph.
  Matrix3d exact;
  // Star graph only: the large-N form with sqrt(N) in place of sqrt(N - 1).
  std::optional<Matrix3d> large_n_approximation;
  // Star graph only: the entry the projection actually produces,
  // sqrt((N - m0)(m0 - 1)) = sqrt(N - 2).
  std::optional<Matrix3d> projection_value;
};

// The displayed reduced matrix of each family with N (and m0) substituted.
ExpectedReduced expected_reduced(SpecialKind kind, Index n, std::optional<Index> m0 = std::nullopt);

struct CaseDeviation {
  Index n = 0;
  Index m0 = 0;
  int row = 0;
  int col = 0;
  double expected = 0.0;
  double actual = 0.0;
};

struct CaseReport {
  SpecialKind kind = SpecialKind::complete;
  Index n_min = 0;
  Index n_max = 0;
  std::size_t instances = 0;
  double max_abs_error = 0.0;
  std::vector<CaseDeviation> deviations;  // entries outside tolerance
  // Star graph: largest |sqrt(N) - sqrt(N-1)| mismatch of the approximation,
  // recorded without failing.
  double approximation_max_deviation = 0.0;
  // Star graph: largest mismatch against the sqrt(N - 2) projection value.
  double projection_max_deviation = 0.0;
  double tolerance = 1e-12;
  bool passed = false;
};

// Compares reduce_closed_form(instantiate(...)) with expected_reduced for every
// N in [n_min, n_max] (every valid m0 for bipartite).
CaseReport verify_case(SpecialKind kind, Index n_min, Index n_max, double tol = 1e-12);

// The four parameterizations of the optimality argument.
//   1: P = 1, alpha = 1/2
//   2: complete graph (alpha = 1/N, P = N - 1)
//   3: P = 2, m0 = N - 2 (alpha -> 1)
//   4: P = 4, alpha = 1/2
UcpgConfig scaling_case_config(int case_id, Index n);

}  // namespace qwalk
