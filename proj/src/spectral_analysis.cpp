#include "qwalk/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qwalk {
namespace {

constexpr double kDegeneracyTol = 1e-12;

struct GammaSearch {
  double gamma = 0.0;
  bool reached = false;
};

// Two lowest eigenvalues of the exact H0: diag(-1) (+) (-gamma * slot block of H_ra).
std::pair<double, double> exact_h0_lowest_pair(const Matrix3d& h_ra, double gamma) {
  Matrix3d h0 = -gamma * h_ra;
  h0.row(kOmega).setZero();
  h0.col(kOmega).setZero();
  h0(kOmega, kOmega) = -1.0;
  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(h0, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1)};
}

// Lowest eigenvalue of the non-w block minus the w level (-1); negative once
// the block level has dropped below -1.
double block_level_offset(const Matrix3d& h_ra, double gamma) {
  Eigen::Matrix2d block = -gamma * h_ra.bottomRightCorner<2, 2>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0) + 1.0;
}

GammaSearch degeneracy_by_bisection(const UcpgConfig& config) {
  const Matrix3d h_ra = reduce_closed_form(config).matrix;
  double lo = 0.0;
  double hi = gamma_closed_form(config);
  int doublings = 0;
  while (block_level_offset(h_ra, hi) > 0.0) {
    if (++doublings > 64) return {gamma_closed_form(config), false};
    lo = hi;
    hi *= 2.0;
  }
  double mid = hi;
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    if (block_level_offset(h_ra, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
  }
  const auto [l0, l1] = exact_h0_lowest_pair(h_ra, mid);
  return {mid, l1 - l0 <= kDegeneracyTol};
}

GammaSearch optimal_gamma(const UcpgConfig& config) {
  if (config.m0() >= 2) return {gamma_closed_form(config), true};
  return degeneracy_by_bisection(config);
}

DirectSpectrum direct_block_spectrum(double v1, double v3) {
  Eigen::Matrix2d block;
  block << 0.0, v1, v1, v3;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block);
  DirectSpectrum out;
  out.lambda_plus = solver.eigenvalues()(0);
  out.lambda_minus = solver.eigenvalues()(1);
  out.e1 = solver.eigenvectors().col(0);
  out.e2 = solver.eigenvectors().col(1);
  // Phase convention: S_{V0-w} coefficient positive (S_{V0bar} when it vanishes).
  for (Eigen::Vector2d* e : {&out.e1, &out.e2}) {
    const double lead = std::abs((*e)(0)) > 1e-14 ? (*e)(0) : (*e)(1);
    if (lead < 0.0) *e = -*e;
  }
  return out;
}

}  // namespace

double compute_kappa(double alpha, Index p_parts) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("kappa requires 0 < alpha < 1, got alpha=" + std::to_string(alpha));
  }
  if (p_parts < 1) throw DomainError("kappa requires P >= 1");
  return std::sqrt(1.0 - alpha) * (1.0 - 1.0 / static_cast<double>(p_parts)) /
         std::sqrt(alpha);
}

double compute_kappa(const UcpgConfig& config) {
  return compute_kappa(config.alpha(), config.p_parts());
}

Betas compute_betas(double kappa) {
  if (!(kappa >= 0.0)) throw DomainError("beta requires kappa >= 0");
  const double plus = 0.5 * (kappa + std::sqrt(kappa * kappa + 4.0));
  // (kappa - sqrt(kappa^2 + 4)) / 2 cancels badly for large kappa.
  return {plus, -1.0 / plus};
}

double gamma_closed_form(const UcpgConfig& config) {
  const double alpha = config.alpha();
  const double beta_plus = compute_betas(compute_kappa(config)).plus;
  return 1.0 / (static_cast<double>(config.n_total()) * std::sqrt(alpha * (1.0 - alpha)) *
                beta_plus);
}

double compute_gamma_opt(const UcpgConfig& config) { return optimal_gamma(config).gamma; }

PerturbativeSplit perturbative_split(const UcpgConfig& config, double gamma) {
  const double n = static_cast<double>(config.n_total());
  const double alpha = config.alpha();
  const double v1 = -gamma * n * std::sqrt(alpha * (1.0 - alpha));
  const double v2 = -gamma * std::sqrt((1.0 - alpha) * n);
  // N (1 - alpha - P alpha1^2 / (1 - alpha)) = N - m0 - m1, taken in integers so
  // that P = 1 gives an exact zero.
  const double v3 =
      -gamma * static_cast<double>(config.n_total() - config.m0() - config.m1());
  PerturbativeSplit split{Matrix3d::Zero(), Matrix3d::Zero()};
  split.h0(kOmega, kOmega) = -1.0;
  split.h0(kV0MinusOmega, kVbar0) = split.h0(kVbar0, kV0MinusOmega) = v1;
  split.h0(kVbar0, kVbar0) = v3;
  split.h1(kOmega, kVbar0) = split.h1(kVbar0, kOmega) = v2;
  return split;
}

SearchHamiltonian make_search_hamiltonian(const ReducedHamiltonian& reduced, double gamma) {
  Matrix3d h = -gamma * reduced.matrix;
  h(kOmega, kOmega) -= 1.0;
  return SearchHamiltonian{h, gamma, reduced.config, SearchBasis::collapsed, SearchModel::exact};
}

SearchHamiltonian make_model_search_hamiltonian(const UcpgConfig& config, double gamma) {
  const PerturbativeSplit split = perturbative_split(config, gamma);
  return SearchHamiltonian{split.h0 + split.h1, gamma, config, SearchBasis::collapsed,
                           SearchModel::perturbative};
}

SpectralData analyze_spectrum(const UcpgConfig& config) {
  return analyze_spectrum(config, compute_gamma_opt(config));
}

SpectralData analyze_spectrum(const UcpgConfig& config, double gamma) {
  SpectralData s{config};
  s.kappa = compute_kappa(config);
  const Betas betas = compute_betas(s.kappa);
  s.beta_plus = betas.plus;
  s.beta_minus = betas.minus;
  const GammaSearch opt = optimal_gamma(config);
  s.gamma_opt = opt.gamma;
  s.degeneracy_reached = opt.reached;
  s.gamma_formula = gamma_closed_form(config);
  s.gamma = gamma;
  s.degenerate_path = config.single_vertex_marked_partition();

  if (!s.degenerate_path) {
    const PerturbativeSplit split = perturbative_split(config, gamma);
    s.v1 = split.h0(kV0MinusOmega, kVbar0);
    s.v2 = split.h1(kOmega, kVbar0);
    s.v3 = split.h0(kVbar0, kVbar0);
    s.lambda_plus = s.beta_plus * s.v1;
    s.lambda_minus = s.beta_minus * s.v1;
    s.delta1 = s.v2 * s.beta_plus / std::sqrt(s.beta_plus * s.beta_plus + 1.0);
    s.delta2 = s.v2 * s.beta_minus / std::sqrt(s.beta_minus * s.beta_minus + 1.0);
    s.e1_coeffs = Eigen::Vector2d(1.0, s.beta_plus) / std::sqrt(1.0 + s.beta_plus * s.beta_plus);
    s.e2_coeffs =
        Eigen::Vector2d(1.0, s.beta_minus) / std::sqrt(1.0 + s.beta_minus * s.beta_minus);
  } else {
    // Only S_{V0bar} couples to w; the S_{V0-w} slot is a null direction.
    const Matrix3d h_ra = reduce_closed_form(config).matrix;
    s.v1 = 0.0;
    s.v2 = -gamma * h_ra(kOmega, kVbar0);
    s.v3 = -gamma * h_ra(kVbar0, kVbar0);
    s.lambda_plus = s.v3;
    s.lambda_minus = 0.0;
    s.delta1 = s.v2;
    s.delta2 = 0.0;
    s.e1_coeffs = Eigen::Vector2d(0.0, 1.0);
    s.e2_coeffs = Eigen::Vector2d(1.0, 0.0);
  }

  s.direct = direct_block_spectrum(s.v1, s.v3);
  double worst = std::max(std::abs(s.direct.lambda_plus - s.lambda_plus),
                          std::abs(s.direct.lambda_minus - s.lambda_minus));
  if (std::abs(s.direct.lambda_minus - s.direct.lambda_plus) > 1e-14) {
    worst = std::max({worst, (s.direct.e1 - s.e1_coeffs).cwiseAbs().maxCoeff(),
                      (s.direct.e2 - s.e2_coeffs).cwiseAbs().maxCoeff()});
  }
  s.direct.max_discrepancy = worst;
  return s;
}

SearchHamiltonian transform_to_eigenbasis(const SearchHamiltonian& search_h,
                                          const SpectralData& spectral) {
  if (search_h.basis != SearchBasis::collapsed) {
    throw DomainError("transform_to_eigenbasis expects a collapsed-basis Hamiltonian");
  }
  if (!(search_h.config == spectral.config)) {
    throw IntegrityError("spectral data was computed for " + spectral.config.to_string() +
                         " but the Hamiltonian is for " + search_h.config.to_string());
  }
  const double gamma_scale = std::max(1.0, std::abs(search_h.gamma));
  if (std::abs(search_h.gamma - spectral.gamma) > 1e-12 * gamma_scale) {
    throw IntegrityError("spectral data was evaluated at gamma=" +
                         std::to_string(spectral.gamma) + " but the Hamiltonian uses gamma=" +
                         std::to_string(search_h.gamma));
  }
  const double kappa = compute_kappa(search_h.config);
  if (std::abs(kappa - spectral.kappa) > 1e-12 * std::max(1.0, kappa)) {
    throw IntegrityError("spectral kappa is inconsistent with the configuration");
  }
  Matrix3d u = Matrix3d::Zero();
  u(kOmega, 0) = 1.0;
  u.block<2, 1>(kV0MinusOmega, 1) = spectral.e1_coeffs;
  u.block<2, 1>(kV0MinusOmega, 2) = spectral.e2_coeffs;
  SearchHamiltonian out = search_h;
  out.matrix = u.transpose() * search_h.matrix * u;
  out.basis = SearchBasis::eigen;
  return out;
}

double predicted_runtime(const UcpgConfig& config, const SpectralData& spectral) {
  const double alpha_n = static_cast<double>(config.m0());
  const double b = spectral.beta_plus;
  return std::numbers::pi * std::sqrt(alpha_n * (b * b + 1.0) / 2.0);
}

double rabi_transfer_time(const SpectralData& spectral) {
  return std::numbers::pi / (2.0 * std::abs(spectral.delta1));
}

double predicted_overlap(const UcpgConfig& config, const SpectralData& spectral) {
  const double alpha = config.alpha();
  const double n = static_cast<double>(config.n_total());
  const double b2 = spectral.beta_plus * spectral.beta_plus;
  // alpha/b^2 - 1/(b^2 N) is exactly (m0 - 1)/(N b^2) >= 0; clamp rounding.
  const double inner = std::max(0.0, alpha / b2 - 1.0 / (b2 * n));
  const double amp = (std::sqrt(inner) + std::sqrt(1.0 - alpha)) / std::sqrt(1.0 + 1.0 / b2);
  return amp * amp;
}

Vector3d uniform_superposition_reduced(const UcpgConfig& config) {
  const double n = static_cast<double>(config.n_total());
  const double m0 = static_cast<double>(config.m0());
  return Vector3d(1.0, std::sqrt(m0 - 1.0), std::sqrt(n - m0)) / std::sqrt(n);
}

double direct_overlap(const UcpgConfig& config, const SpectralData& spectral) {
  Vector3d e1 = Vector3d::Zero();
  e1.tail<2>() = spectral.e1_coeffs;
  const double amp = e1.dot(uniform_superposition_reduced(config));
  return amp * amp;
}

double lowest_gap(const Matrix3d& h) {
  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1) - solver.eigenvalues()(0);
}

GapScan scan_gap(const UcpgConfig& config, double gamma_opt, std::size_t points, double lo,
                 double hi) {
  if (points < 2) throw DomainError("gap scan needs at least two points");
  const ReducedHamiltonian reduced = reduce_closed_form(config);
  GapScan scan;
  scan.center = (points - 1) / 2;
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double gamma = frac * gamma_opt;
    scan.gammas.push_back(gamma);
    scan.gaps.push_back(lowest_gap(make_search_hamiltonian(reduced, gamma).matrix));
  }
  scan.argmin = static_cast<std::size_t>(
      std::min_element(scan.gaps.begin(), scan.gaps.end()) - scan.gaps.begin());
  return scan;
}

}  // namespace qwalk
