#include "qwalk/walk_dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace qwalk {

InitialState uniform_initial_state(const UcpgConfig& config, bool with_full) {
  InitialState psi;
  psi.reduced_coeffs = uniform_superposition_reduced(config).cast<Complex>();
  if (with_full) {
    check_dense_capacity(config.n_total(), dense_guard());
    psi.full_vector = uniform_superposition_full<double>(config.n_total()).cast<Complex>();
  }
  return psi;
}

FullSearchHamiltonian build_full_search_hamiltonian(const FullAdjacency<double>& adjacency,
                                                    double gamma, Index guard) {
  check_dense_capacity(adjacency.matrix.rows(), guard);
  FullSearchHamiltonian h;
  h.matrix = -gamma * adjacency.matrix;
  h.matrix(adjacency.marked_index, adjacency.marked_index) -= 1.0;
  h.gamma = gamma;
  h.marked_index = adjacency.marked_index;
  return h;
}

std::vector<double> uniform_times(double t_max, std::size_t samples) {
  if (samples == 0) throw DomainError("at least one time sample is required");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw DomainError("t_max must be finite and non-negative");
  }
  std::vector<double> times(samples, 0.0);
  if (samples == 1) return times;
  for (std::size_t i = 0; i < samples; ++i) {
    times[i] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  return times;
}

std::vector<double> default_times(const UcpgConfig& config, const SpectralData& spectral) {
  return uniform_times(kDefaultWindowFactor * predicted_runtime(config, spectral),
                       kDefaultSamples);
}

SpectralPropagator<double> make_propagator(const SearchHamiltonian& h, const InitialState& psi0) {
  if (h.basis != SearchBasis::collapsed) {
    throw DomainError("reduced evolution expects the collapsed-basis Hamiltonian");
  }
  return SpectralPropagator<double>(MatrixXd(h.matrix), VectorXc(psi0.reduced_coeffs));
}

SpectralPropagator<double> make_propagator(const FullSearchHamiltonian& h,
                                           const InitialState& psi0) {
  if (!psi0.full_vector) throw DomainError("full-space evolution needs a full-space initial state");
  return SpectralPropagator<double>(h.matrix, *psi0.full_vector);
}

EvolutionSeries evolve(const SpectralPropagator<double>& propagator, Index site,
                       const std::vector<double>& times, Space space) {
  EvolutionSeries series;
  series.space = space;
  series.times = times;
  series.p_success.reserve(times.size());
  series.norms.reserve(times.size());
  for (double t : times) {
    const VectorXc psi = propagator.state(t);
    series.p_success.push_back(std::norm(psi(site)));
    series.norms.push_back(psi.norm());
  }
  return series;
}

EvolutionSeries evolve(const SearchHamiltonian& h, const InitialState& psi0,
                       const std::vector<double>& times) {
  EvolutionSeries series = evolve(make_propagator(h, psi0), kOmega, times, Space::reduced);
  series.config = h.config;
  series.gamma = h.gamma;
  return series;
}

EvolutionSeries evolve(const FullSearchHamiltonian& h, const InitialState& psi0,
                       const std::vector<double>& times) {
  EvolutionSeries series = evolve(make_propagator(h, psi0), h.marked_index, times, Space::full);
  series.gamma = h.gamma;
  return series;
}

double max_pointwise_deviation(const EvolutionSeries& a, const EvolutionSeries& b) {
  if (a.times.size() != b.times.size()) {
    throw DomainError("series have different sample counts");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (a.times[i] != b.times[i]) throw DomainError("series are sampled at different times");
    worst = std::max(worst, std::abs(a.p_success[i] - b.p_success[i]));
  }
  return worst;
}

namespace {

template <typename F>
double golden_section_max(F&& f, double a, double b, double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200; ++iter) {
    const double scale = std::max(std::abs(0.5 * (a + b)), 1e-300);
    if (b - a <= rel_tol * scale) break;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PeakReport measure_peak(const SpectralPropagator<double>& propagator, Index site,
                        const EvolutionSeries& series, const UcpgConfig& config,
                        const SpectralData& spectral) {
  PeakReport report;
  report.t_run_predicted = predicted_runtime(config, spectral);
  report.p_o_predicted = predicted_overlap(config, spectral);
  const auto& t = series.times;
  const auto& p = series.p_success;
  if (t.size() < 3 || t.back() < 2.0 * report.t_run_predicted * (1.0 - 1e-12)) {
    throw SearchWindowError("series must span [0, 2 T_run] with T_run=" +
                            std::to_string(report.t_run_predicted));
  }
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  const double threshold = kPeakProminence * *hi;
  // Rounding noise on a flat curve is not a peak.
  const bool flat = *hi - *lo <= kPeakRelTol * *hi;
  std::size_t hit = 0;
  for (std::size_t i = 1; !flat && i + 1 < p.size(); ++i) {
    if (p[i] > p[i - 1] && p[i] >= p[i + 1] && p[i] >= threshold) {
      hit = i;
      break;
    }
  }
  if (hit == 0) {
    throw SearchWindowError("no local maximum of the success probability inside [0, " +
                            std::to_string(t.back()) + "]");
  }
  const auto prob = [&](double time) { return propagator.probability(site, time); };
  const double refined = golden_section_max(prob, t[hit - 1], t[hit + 1], kPeakRelTol);
  const double p_refined = prob(refined);
  if (p_refined >= p[hit]) {
    report.t_peak = refined;
    report.p_peak = p_refined;
  } else {
    report.t_peak = t[hit];
    report.p_peak = p[hit];
  }
  report.ratio_time = report.t_peak / report.t_run_predicted;
  report.ratio_prob = report.p_peak / report.p_o_predicted;
  return report;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw FitError("fit inputs have different lengths");
  if (x.size() < 3) {
    throw FitError("a power-law fit needs at least 3 points, got " + std::to_string(x.size()));
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw FitError("power-law fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw FitError("power-law fit needs at least two distinct x values");
  PowerLawFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssr += r * r;
  }
  fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  return fit;
}

ReducedPeakRun run_reduced_peak(const UcpgConfig& config, std::optional<double> gamma) {
  const double g = gamma ? *gamma : compute_gamma_opt(config);
  ReducedPeakRun run{config, analyze_spectrum(config, g), {}};
  const SearchHamiltonian h = make_search_hamiltonian(reduce_closed_form(config), g);
  const InitialState psi0 = uniform_initial_state(config);
  const SpectralPropagator<double> propagator = make_propagator(h, psi0);
  const EvolutionSeries series =
      evolve(propagator, kOmega, default_times(config, run.spectral), Space::reduced);
  run.peak = measure_peak(propagator, kOmega, series, config, run.spectral);
  return run;
}

std::vector<ReducedPeakRun> sweep_reduced_peaks(const std::vector<UcpgConfig>& configs,
                                                unsigned jobs,
                                                std::optional<double> gamma_scale) {
  std::vector<std::optional<ReducedPeakRun>> slots(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        std::optional<double> gamma;
        if (gamma_scale) gamma = *gamma_scale * compute_gamma_opt(configs[i]);
        slots[i] = run_reduced_peak(configs[i], gamma);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::clamp<unsigned>(jobs, 1u, static_cast<unsigned>(
                                                              std::max<std::size_t>(1, configs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  std::vector<ReducedPeakRun> out;
  out.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace qwalk
