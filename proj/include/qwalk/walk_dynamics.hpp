#pragma once

#include <optional>
#include <vector>

#include "qwalk/propagator.hpp"
#include "qwalk/spectral_analysis.hpp"
#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

inline constexpr std::size_t kDefaultSamples = 400;
inline constexpr double kDefaultWindowFactor = 3.0;
// Fraction of the window maximum a sampled local maximum must reach to count
// as the first peak; fast escape-channel ripple produces shallower maxima on
// the rising edge.
inline constexpr double kPeakProminence = 0.9;
inline constexpr double kPeakRelTol = 1e-6;

enum class Space { reduced, full };

struct InitialState {
  Vector3c reduced_coeffs = Vector3c::Zero();
  std::optional<VectorXc> full_vector;
};

// |s> = (|w> + sqrt(m0-1)|S_{V0-w}> + sqrt(N-m0)|S_{V0bar}>) / sqrt(N).
InitialState uniform_initial_state(const UcpgConfig& config, bool with_full = false);

struct FullSearchHamiltonian {
  MatrixXd matrix;
  double gamma = 0.0;
  Index marked_index = 0;
};

// -gamma H_a - |w><w| as a dense matrix.
FullSearchHamiltonian build_full_search_hamiltonian(const FullAdjacency<double>& adjacency,
                                                    double gamma,
                                                    Index guard = dense_guard());

struct EvolutionSeries {
  std::vector<double> times;
  std::vector<double> p_success;
  std::vector<double> norms;
  Space space = Space::reduced;
  std::optional<UcpgConfig> config;
  double gamma = 0.0;
};

std::vector<double> uniform_times(double t_max, std::size_t samples);
// kDefaultSamples points over [0, kDefaultWindowFactor * T_run].
std::vector<double> default_times(const UcpgConfig& config, const SpectralData& spectral);

SpectralPropagator<double> make_propagator(const SearchHamiltonian& h, const InitialState& psi0);
SpectralPropagator<double> make_propagator(const FullSearchHamiltonian& h,
                                           const InitialState& psi0);

EvolutionSeries evolve(const SearchHamiltonian& h, const InitialState& psi0,
                       const std::vector<double>& times);
EvolutionSeries evolve(const FullSearchHamiltonian& h, const InitialState& psi0,
                       const std::vector<double>& times);
// Generic kernel: success probability of `site` under any real symmetric H.
EvolutionSeries evolve(const SpectralPropagator<double>& propagator, Index site,
                       const std::vector<double>& times, Space space);

// Largest |p_a(t) - p_b(t)| over matching samples.
double max_pointwise_deviation(const EvolutionSeries& a, const EvolutionSeries& b);

struct PeakReport {
  double t_peak = 0.0;
  double p_peak = 0.0;
  double t_run_predicted = 0.0;
  double p_o_predicted = 0.0;
  double ratio_time = 0.0;
  double ratio_prob = 0.0;
};

// First prominent local maximum of the sampled series after t = 0, refined by
// golden-section search on the propagator.
PeakReport measure_peak(const SpectralPropagator<double>& propagator, Index site,
                        const EvolutionSeries& series, const UcpgConfig& config,
                        const SpectralData& spectral);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

// Least-squares fit of log(y) = intercept + slope log(x).
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct ReducedPeakRun {
  UcpgConfig config;
  SpectralData spectral;
  PeakReport peak;
};

// Reduced-space walk from |s> at the given coupling (gamma_opt when empty),
// sampled with the default grid and peak-refined.
ReducedPeakRun run_reduced_peak(const UcpgConfig& config,
                                std::optional<double> gamma = std::nullopt);

// Independent sweep points evaluated on up to `jobs` threads; output order
// follows the input.
std::vector<ReducedPeakRun> sweep_reduced_peaks(const std::vector<UcpgConfig>& configs,
                                                unsigned jobs = 1,
                                                std::optional<double> gamma_scale = std::nullopt);

}  // namespace qwalk
