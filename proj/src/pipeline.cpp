#include "qwalk/pipeline.hpp"

#include <algorithm>
#include <utility>

namespace qwalk {
namespace {

constexpr std::size_t kCertificateSamples = 200;

template <typename F>
auto in_stage(int stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, std::string(kPipelineStages[static_cast<std::size_t>(stage)]),
                        e.what());
  }
}

Check single_check(std::string id, std::string description, double value, double tol,
                   const UcpgConfig& config) {
  Check c{std::move(id), std::move(description), tol};
  c.record(value, config);
  return c;
}

}  // namespace

bool PipelineBundle::all_passed() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const Check& c) { return c.passed(); });
}

PipelineBundle run_pipeline(Index n_total, Index p_parts, Index m0,
                            const PipelineOptions& options) {
  const UcpgConfig config = in_stage(0, [&] { return make_config(n_total, p_parts, m0); });
  return run_pipeline(config, options);
}

PipelineBundle run_pipeline(const UcpgConfig& config, const PipelineOptions& options) {
  const bool full = options.full_space && config.n_total() <= options.guard;

  // Stage 1: reduced 3x3 Hamiltonian, certified against Lanczos on H_a.
  ReducedHamiltonian reduced = in_stage(1, [&] { return reduce_closed_form(config); });
  std::optional<FullAdjacency<double>> adjacency;
  std::optional<CollapsedBasis<double>> collapsed;
  std::optional<KrylovReduction<double>> krylov;
  in_stage(1, [&] {
    if (!full) return 0;
    adjacency = build_adjacency<double>(config, options.guard);
    collapsed = build_collapsed_basis_any(config, *adjacency);
    krylov = reduce_krylov<double>(adjacency->matrix, collapsed->omega, config.n_total());
    return 0;
  });

  // Stage 2: H_seek = -gamma H_ra - |w><w| and its H0 + H1 split.
  PerturbativeSplit unit_split = in_stage(2, [&] { return perturbative_split(config, 1.0); });

  // Stage 4 (coupling) runs ahead of the stage 3 basis change, which is
  // evaluated at the chosen coupling.
  const double gamma = in_stage(4, [&] {
    return options.gamma ? *options.gamma : compute_gamma_opt(config);
  });
  SpectralData spectral = in_stage(4, [&] { return analyze_spectrum(config, gamma); });
  PipelineBundle bundle{config,
                        reduced,
                        krylov,
                        std::nullopt,
                        unit_split,
                        spectral,
                        make_search_hamiltonian(reduced, gamma),
                        make_search_hamiltonian(reduced, gamma),
                        {},
                        std::nullopt,
                        std::nullopt,
                        {}};
  // Stage 3: H_seek in the (w, e1, e2) eigenbasis of H0.
  in_stage(3, [&] {
    bundle.eigen_h =
        transform_to_eigenbasis(make_model_search_hamiltonian(config, gamma), spectral);
    return 0;
  });

  const std::vector<double> times = default_times(config, spectral);
  in_stage(4, [&] {
    const InitialState psi0 = uniform_initial_state(config, full);
    const SpectralPropagator<double> reduced_prop = make_propagator(bundle.search_h, psi0);
    bundle.series_reduced = evolve(reduced_prop, kOmega, times, Space::reduced);
    bundle.series_reduced.config = config;
    bundle.series_reduced.gamma = gamma;
    bundle.peak = measure_peak(reduced_prop, kOmega, bundle.series_reduced, config, spectral);
    bundle.rabi_time = rabi_transfer_time(spectral);
    if (full) {
      const FullSearchHamiltonian hf =
          build_full_search_hamiltonian(*adjacency, gamma, options.guard);
      bundle.series_full = evolve(hf, psi0, times);
      bundle.series_full->config = config;
      bundle.full_reduced_deviation =
          max_pointwise_deviation(bundle.series_reduced, *bundle.series_full);
      const std::vector<double> cert_times =
          uniform_times(times.back(), kCertificateSamples);
      bundle.subspace =
          certify_same_subspace(reduced, *collapsed, *krylov, *adjacency, cert_times);
    }
    return 0;
  });

  // Stage 5: overlap of |s> with e1.
  in_stage(5, [&] {
    bundle.direct_overlap = direct_overlap(config, spectral);
    return 0;
  });

  auto& certs = bundle.certificates;
  const auto norm_drift = [](const EvolutionSeries& s) {
    double worst = 0.0;
    for (double n : s.norms) worst = std::max(worst, std::abs(n - 1.0));
    return worst;
  };
  certs.push_back(single_check("walk.unitarity_reduced", "| ||psi(t)|| - 1 | in reduced space",
                               norm_drift(bundle.series_reduced), 1e-10, config));
  if (full) {
    certs.push_back(single_check("reduction.closure", "||(1 - P) H_a v|| over collapsed basis",
                                 collapsed_closure_residual(*adjacency, *collapsed), 1e-10,
                                 config));
    certs.push_back(single_check(
        "reduction.closed_vs_projection", "max |H_ra - B^T H_a B|",
        (reduced.matrix - project_onto_collapsed(*adjacency, *collapsed)).cwiseAbs().maxCoeff(),
        1e-10, config));
    certs.push_back(single_check("reduction.projector_distance",
                                 "||P_collapsed - P_krylov||_F",
                                 bundle.subspace->projector_distance, 1e-9, config));
    certs.push_back(single_check("reduction.dynamics_distance",
                                 "max_t |<w|e^{-iH_a t}|s> - <w|e^{-iH_ra t}|s>|",
                                 bundle.subspace->dynamics_distance, 1e-9, config));
    certs.push_back(single_check("walk.full_vs_reduced", "max_t |p_full(t) - p_reduced(t)|",
                                 *bundle.full_reduced_deviation, 1e-9, config));
    certs.push_back(single_check("walk.unitarity_full", "| ||psi(t)|| - 1 | in full space",
                                 norm_drift(*bundle.series_full), 1e-10, config));
  }
  certs.push_back(single_check("spectral.eigenbasis_symmetry", "max |H - H^T| in (w, e1, e2)",
                               asymmetry(bundle.eigen_h.matrix), 1e-12, config));
  if (!spectral.degenerate_path) {
    certs.push_back(single_check("overlap.closed_vs_direct",
                                 "| P_O closed form - |<e1|s>|^2 |",
                                 std::abs(bundle.peak.p_o_predicted - bundle.direct_overlap),
                                 1e-10, config));
  }
  if (!options.gamma && spectral.degeneracy_reached) {
    certs.push_back(single_check("spectral.lambda_plus_degenerate", "|lambda+ + 1| at gamma_opt",
                                 std::abs(spectral.lambda_plus + 1.0), 1e-12, config));
  }
  return bundle;
}

}  // namespace qwalk
