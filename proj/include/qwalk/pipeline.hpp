#pragma once

// End-to-end search pipeline: dimensionality reduction, Hamiltonian
// construction, basis change, coupling determination, overlap check.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qwalk/checks.hpp"
#include "qwalk/invariant_reduction.hpp"
#include "qwalk/spectral_analysis.hpp"
#include "qwalk/walk_dynamics.hpp"

namespace qwalk {

inline constexpr std::array<std::string_view, 6> kPipelineStages{
    "Configuration",          "Dimensionality Reduction", "Hamiltonian Construction",
    "Basis Change",           "CTQW Initialization",      "Existence of Constant Overlap"};

struct PipelineOptions {
  // Full-space oracle runs when N is within the dense guard.
  bool full_space = true;
  std::optional<double> gamma;  // overrides gamma_opt
  Index guard = dense_guard();
};

struct PipelineBundle {
  UcpgConfig config;
  ReducedHamiltonian reduced;
  std::optional<KrylovReduction<double>> krylov;
  std::optional<SubspaceCertificate> subspace;
  PerturbativeSplit unit_split;  // H0, H1 at gamma = 1
  SpectralData spectral;
  SearchHamiltonian search_h;    // exact, collapsed basis
  SearchHamiltonian eigen_h;     // perturbative model in the (w, e1, e2) basis
  EvolutionSeries series_reduced;
  std::optional<EvolutionSeries> series_full;
  std::optional<double> full_reduced_deviation;
  PeakReport peak;
  double rabi_time = 0.0;
  double direct_overlap = 0.0;
  std::vector<Check> certificates;

  bool all_passed() const;
};

PipelineBundle run_pipeline(const UcpgConfig& config, const PipelineOptions& options = {});
// Validates the triple first; a bad triple raises a stage-0 PipelineError.
PipelineBundle run_pipeline(Index n_total, Index p_parts, Index m0,
                            const PipelineOptions& options = {});

}  // namespace qwalk
