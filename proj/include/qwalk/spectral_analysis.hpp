#pragma once

// Search Hamiltonian H_seek = -gamma H_ra - |w><w|, its split into the
// block-diagonal part H0 and the w <-> S_{V0bar} coupling H1, the change to
// the (w, e1, e2) eigenbasis of H0, and the optimal coupling factor.
//
// H0/H1 follow the closed forms in terms of alpha = m0/N, whose (S_{V0-w},
// S_{V0bar}) entry is -gamma N sqrt(alpha (1 - alpha)) = -gamma sqrt(m0 (N - m0)).
// The exact H_seek has sqrt((m0 - 1)(N - m0)) there; the two agree for m0 >> 1.
// Both are available through SearchModel.

#include <vector>

#include "qwalk/invariant_reduction.hpp"
#include "qwalk/types.hpp"
#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

enum class SearchBasis { collapsed, eigen };
enum class SearchModel { exact, perturbative };

struct SearchHamiltonian {
  Matrix3d matrix;
  double gamma = 0.0;
  UcpgConfig config;
  SearchBasis basis = SearchBasis::collapsed;
  SearchModel model = SearchModel::exact;
};

struct Betas {
  double plus = 0.0;
  double minus = 0.0;
};

// Redundant route: eigendecomposition of the (S_{V0-w}, S_{V0bar}) block of H0.
struct DirectSpectrum {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Eigen::Vector2d e1 = Eigen::Vector2d::Zero();
  Eigen::Vector2d e2 = Eigen::Vector2d::Zero();
  double max_discrepancy = 0.0;  // vs. the closed forms
};

struct SpectralData {
  UcpgConfig config;
  double kappa = 0.0;
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  double gamma = 0.0;          // coupling at which v*, lambda*, delta* are evaluated
  double gamma_opt = 0.0;
  double gamma_formula = 0.0;  // closed form, also evaluated on the m0 = 1 path
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  // Coefficients over (S_{V0-w}, S_{V0bar}).
  Eigen::Vector2d e1_coeffs = Eigen::Vector2d::Zero();
  Eigen::Vector2d e2_coeffs = Eigen::Vector2d::Zero();
  DirectSpectrum direct;
  // m0 = 1: no S_{V0-w}; e1 = S_{V0bar}, gamma_opt from numerical degeneracy.
  bool degenerate_path = false;
  // False only when no coupling makes w and e1 degenerate (m0 = 1 with P = 1).
  bool degeneracy_reached = true;
};

double compute_kappa(const UcpgConfig& config);
double compute_kappa(double alpha, Index p_parts);
Betas compute_betas(double kappa);

// Closed form (N sqrt(alpha(1 - alpha)) beta+)^-1 valid for every config.
double gamma_closed_form(const UcpgConfig& config);

// m0 >= 2: closed form. m0 = 1: bisection on gamma until the w level and the
// S_{V0bar} level of H0 coincide to 1e-12.
double compute_gamma_opt(const UcpgConfig& config);

// H0 and H1 at the given coupling (perturbative model).
struct PerturbativeSplit {
  Matrix3d h0;
  Matrix3d h1;
};
PerturbativeSplit perturbative_split(const UcpgConfig& config, double gamma);

SearchHamiltonian make_search_hamiltonian(const ReducedHamiltonian& reduced, double gamma);
SearchHamiltonian make_model_search_hamiltonian(const UcpgConfig& config, double gamma);

// Spectral data at gamma_opt.
SpectralData analyze_spectrum(const UcpgConfig& config);
// Same quantities evaluated at an arbitrary coupling (gamma_opt still recorded).
SpectralData analyze_spectrum(const UcpgConfig& config, double gamma);

// U^T H U with U = [w, e1, e2] expressed in the collapsed basis.
SearchHamiltonian transform_to_eigenbasis(const SearchHamiltonian& search_h,
                                          const SpectralData& spectral);

// pi sqrt(alpha N (beta+^2 + 1) / 2)
double predicted_runtime(const UcpgConfig& config, const SpectralData& spectral);
// pi / (2 |delta1|): the two-level transfer time, sqrt(2) x smaller at gamma_opt.
double rabi_transfer_time(const SpectralData& spectral);
// |<e1|s>|^2 through the closed form in alpha, beta+, N.
double predicted_overlap(const UcpgConfig& config, const SpectralData& spectral);
// |<e1|s>|^2 by inner product of the reduced vectors.
double direct_overlap(const UcpgConfig& config, const SpectralData& spectral);

// Reduced coefficients of |s> over (w, S_{V0-w}, S_{V0bar}).
Vector3d uniform_superposition_reduced(const UcpgConfig& config);

// Gap between the two lowest eigenvalues of a 3x3 symmetric matrix.
double lowest_gap(const Matrix3d& h);

struct GapScan {
  std::vector<double> gammas;
  std::vector<double> gaps;
  std::size_t argmin = 0;
  std::size_t center = 0;
};
// Lowest-two-level gap of the exact H_seek over points uniformly spaced in
// [lo, hi] * gamma_opt.
GapScan scan_gap(const UcpgConfig& config, double gamma_opt, std::size_t points = 101,
                 double lo = 0.5, double hi = 1.5);

}  // namespace qwalk
