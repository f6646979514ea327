#include "qwalk/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "qwalk/invariant_reduction.hpp"
#include "qwalk/pipeline.hpp"
#include "qwalk/spectral_analysis.hpp"
#include "qwalk/walk_dynamics.hpp"

namespace qwalk {
namespace {

constexpr Index kGridVertexCounts[] = {2,  4,  7,  9,  12, 16,  21,  30,  33,
                                       48, 64, 100, 128, 129, 200, 256};

const double kStrictlyBelowOne = std::nextafter(1.0, 0.0);

struct Suite {
  std::vector<Check> checks;
  std::optional<double> tol_override;

  // Floating-point error checks take the override; bounds and exact
  // relations keep their tolerance.
  Check& numeric(const std::string& id, const std::string& description, double tol) {
    return get(id, description, tol_override ? *tol_override : tol);
  }
  Check& structural(const std::string& id, const std::string& description, double tol) {
    return get(id, description, tol);
  }

 private:
  Check& get(const std::string& id, const std::string& description, double tol) {
    for (Check& c : checks) {
      if (c.id == id) return c;
    }
    checks.push_back(Check{id, description, tol});
    return checks.back();
  }
};

double orthonormality_error(const MatrixXd& b) {
  return (b.transpose() * b - MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
}

VectorXd sorted_eigenvalues(const MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// H_ra restricted to the slots that exist (drops the null slot when m0 = 1).
MatrixXd restricted_reduced(const ReducedHamiltonian& reduced) {
  if (!reduced.has_null_slot()) return reduced.matrix;
  MatrixXd h(2, 2);
  h << reduced.matrix(kOmega, kOmega), reduced.matrix(kOmega, kVbar0),
      reduced.matrix(kVbar0, kOmega), reduced.matrix(kVbar0, kVbar0);
  return h;
}

double max_norm_drift(const EvolutionSeries& s) {
  double worst = 0.0;
  for (double n : s.norms) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

void check_full_space(Suite& suite, const UcpgConfig& config, Index guard) {
  const FullAdjacency<double> adj = build_adjacency<double>(config, guard);
  const Index n = config.n_total();

  double degree_error = 0.0;
  double structure_error = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double expected = static_cast<double>(n - config.partition_size(config.partition_of(i)));
    degree_error = std::max(degree_error, std::abs(adj.matrix.row(i).sum() - expected));
    structure_error = std::max(structure_error, std::abs(adj.matrix(i, i)));
  }
  structure_error = std::max(structure_error, asymmetry(adj.matrix));
  suite.structural("graph.degree", "max |deg(v) - (N - m_j)|", 0.0).record(degree_error, config);
  suite.structural("graph.symmetric_zero_diagonal", "asymmetry and diagonal of H_a", 0.0)
      .record(structure_error, config);

  const CollapsedBasis<double> basis = build_collapsed_basis_any(config, adj);
  const MatrixXd span = basis.span_columns();
  suite.numeric("graph.orthonormality", "max |B^T B - I|", kOrthonormalTol)
      .record(orthonormality_error(span), config);
  suite.numeric("graph.closure", "max ||(1 - P) H_a v||", kInvarianceTol)
      .record(collapsed_closure_residual(adj, basis), config);
  const VectorXd s = uniform_superposition_full<double>(n);
  suite.numeric("graph.uniform_in_span", "||(1 - P)|s>||", 1e-12)
      .record((s - span * (span.transpose() * s)).norm(), config);

  const ReducedHamiltonian reduced = reduce_closed_form(config);
  suite.numeric("reduction.closed_vs_projection", "max |H_ra - B^T H_a B|", 1e-10)
      .record((reduced.matrix - project_onto_collapsed(adj, basis)).cwiseAbs().maxCoeff(), config);

  const KrylovReduction<double> krylov = reduce_krylov<double>(adj.matrix, basis.omega, n);
  suite.structural("reduction.krylov_dim", "|dim_krylov - dim_collapsed|", 0.0)
      .record(std::abs(static_cast<double>(krylov.dim - basis.dim())), config);
  suite.numeric("reduction.krylov_residual", "Lanczos leakage at termination", kInvarianceTol)
      .record(krylov.residual, config);
  suite.numeric("reduction.krylov_orthonormality", "max |Q^T Q - I|", kOrthonormalTol)
      .record(orthonormality_error(krylov.basis), config);
  const MatrixXd projected = krylov.basis.transpose() * adj.matrix * krylov.basis;
  suite.numeric("reduction.krylov_tridiagonal", "max |T - Q^T H_a Q|", 1e-10)
      .record((projected - krylov.tridiagonal).cwiseAbs().maxCoeff(), config);
  if (krylov.dim == basis.dim()) {
    suite.numeric("reduction.eigenvalue_multiset", "max |eig(T) - eig(H_ra)|", 1e-9)
        .record((sorted_eigenvalues(krylov.tridiagonal) -
                 sorted_eigenvalues(restricted_reduced(reduced)))
                    .cwiseAbs()
                    .maxCoeff(),
                config);
  }
  suite.structural("reduction.self_loop_identity", "N - m0 - m1 == (N - m0)(1 - 1/P)", 0.0)
      .record(self_loop_identity_holds(config) ? 0.0 : 1.0, config);

  const SpectralData spectral = analyze_spectrum(config);
  const std::vector<double> times = default_times(config, spectral);
  if (krylov.dim == basis.dim()) {
    const SubspaceCertificate cert = certify_same_subspace(
        reduced, basis, krylov, adj, uniform_times(times.back(), 200));
    suite.numeric("reduction.projector_distance", "||P_collapsed - P_krylov||_F", 1e-9)
        .record(cert.projector_distance, config);
    suite.numeric("reduction.dynamics_distance", "max_t |<w|e^{-iH_a t}|s> - reduced|", 1e-9)
        .record(cert.dynamics_distance, config);
  }

  const InitialState psi0 = uniform_initial_state(config, true);
  const EvolutionSeries reduced_series =
      evolve(make_search_hamiltonian(reduced, spectral.gamma), psi0, times);
  const EvolutionSeries full_series =
      evolve(build_full_search_hamiltonian(adj, spectral.gamma, guard), psi0, times);
  suite.numeric("walk.full_vs_reduced", "max_t |p_full(t) - p_reduced(t)| on [0, 3 T_run]", 1e-9)
      .record(max_pointwise_deviation(reduced_series, full_series), config);
  suite.numeric("walk.unitarity", "max | ||psi(t)|| - 1 |", 1e-10)
      .record(std::max(max_norm_drift(reduced_series), max_norm_drift(full_series)), config);
}

void check_spectral(Suite& suite, const UcpgConfig& config) {
  const SpectralData s = analyze_spectrum(config);
  const double alpha = config.alpha();

  suite.structural("spectral.kappa_bound", "kappa / sqrt((1 - alpha)/alpha) < 1",
                   kStrictlyBelowOne)
      .record(s.kappa / std::sqrt((1.0 - alpha) / alpha), config);
  suite.structural("spectral.kappa_zero_iff_bipartite", "(kappa == 0) == (P == 1)", 0.0)
      .record(((s.kappa == 0.0) == (config.p_parts() == 1)) ? 0.0 : 1.0, config);
  suite.numeric("spectral.beta_product", "|beta+ beta- + 1|", 1e-14)
      .record(std::abs(s.beta_plus * s.beta_minus + 1.0), config);

  if (s.degenerate_path) {
    if (s.degeneracy_reached) {
      suite.numeric("spectral.single_vertex_degeneracy", "|lambda(S_V0bar) + 1| at gamma_opt",
                    1e-12)
          .record(std::abs(s.lambda_plus + 1.0), config);
    }
    return;
  }

  const bool signs = s.beta_plus > 0.0 && s.beta_minus < 0.0 && s.lambda_plus < 0.0 &&
                     s.lambda_minus > 0.0 && s.v1 < 0.0 && s.v2 < 0.0 && s.v3 <= 0.0;
  suite.structural("spectral.sign_pattern", "beta+ > 0 > beta-, lambda+ < 0 < lambda-", 0.0)
      .record(signs ? 0.0 : 1.0, config);
  suite.numeric("spectral.lambda_plus_degenerate", "|lambda+ + 1| at gamma_opt", 1e-12)
      .record(std::abs(s.lambda_plus + 1.0), config);
  suite.structural("spectral.escape_bound", "|delta2 / lambda-| sqrt(alpha N) < 1",
                   kStrictlyBelowOne)
      .record(std::abs(s.delta2 / s.lambda_minus) * std::sqrt(alpha * config.n_total()), config);
  suite.numeric("spectral.direct_crosscheck", "closed form vs 2x2 eigendecomposition", 1e-10)
      .record(s.direct.max_discrepancy, config);

  const PerturbativeSplit split = perturbative_split(config, s.gamma);
  double residual = 0.0;
  for (const auto& [coeffs, lambda] :
       {std::pair{s.e1_coeffs, s.lambda_plus}, std::pair{s.e2_coeffs, s.lambda_minus}}) {
    Vector3d e = Vector3d::Zero();
    e.tail<2>() = coeffs;
    residual = std::max(residual, (split.h0 * e - lambda * e).norm());
  }
  suite.numeric("spectral.eigenvector_residual", "||H0 e - lambda e||", 1e-11)
      .record(residual, config);

  const SearchHamiltonian eig =
      transform_to_eigenbasis(make_model_search_hamiltonian(config, s.gamma), s);
  suite.numeric("spectral.eigenbasis_symmetry", "max |H - H^T| in (w, e1, e2)", 1e-12)
      .record(asymmetry(eig.matrix), config);
  suite.numeric("spectral.eigenbasis_decoupled", "|H(e1, e2)| in (w, e1, e2)", 1e-12)
      .record(std::abs(eig.matrix(1, 2)), config);
  suite.numeric("overlap.closed_vs_direct", "| P_O closed form - |<e1|s>|^2 |", 1e-10)
      .record(std::abs(predicted_overlap(config, s) - direct_overlap(config, s)), config);
}

void check_gap(Suite& suite, const UcpgConfig& config) {
  const double gamma = compute_gamma_opt(config);
  const GapScan scan = scan_gap(config, gamma);
  const double offset =
      std::abs(static_cast<double>(scan.argmin) - static_cast<double>(scan.center));
  suite.structural("spectral.gap_minimizer",
                   "|argmin gap - gamma_opt| in grid steps (101 points, 0.5..1.5 gamma_opt)", 1.0)
      .record(offset, config);
}

}  // namespace

std::vector<UcpgConfig> verification_grid(Index max_n) {
  std::set<std::tuple<Index, Index, Index>> seen;
  std::vector<UcpgConfig> out;
  const auto add = [&](Index n, Index p, Index m0) {
    if (n > max_n || m0 < 1 || m0 >= n || p < 1 || (n - m0) % p != 0) return;
    if (!seen.insert({n, p, m0}).second) return;
    out.push_back(make_config(n, p, m0));
  };
  for (auto [n, p, m0] : {std::tuple<Index, Index, Index>{7, 2, 3}, {9, 2, 3}, {30, 4, 10},
                          {100, 4, 20}, {4, 3, 1}, {2, 1, 1}}) {
    add(n, p, m0);
  }
  for (Index n : kGridVertexCounts) {
    for (Index m0 : {Index{1}, Index{2}, n / 4, n / 2, n - 2, n - 1}) {
      for (Index p : {Index{1}, Index{2}, Index{3}, n - m0}) add(n, p, m0);
    }
  }
  return out;
}

bool in_gap_regime(const UcpgConfig& config) {
  const double bp = compute_betas(compute_kappa(config)).plus;
  return static_cast<double>(config.m0()) * (bp * bp + 1.0) >= kGapRegimeThreshold;
}

std::vector<UcpgConfig> gap_regime_grid() {
  std::vector<UcpgConfig> out;
  for (Index n : {Index{1} << 10, Index{1} << 12, Index{1} << 14}) {
    for (int c = 1; c <= 4; ++c) out.push_back(scaling_case_config(c, n));
    out.push_back(make_config(n, 3, n / 4));
    out.push_back(make_config(n, n - 2, 2));
  }
  return out;
}

bool VerificationBundle::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

std::vector<std::string> VerificationBundle::failing_ids() const {
  std::vector<std::string> ids;
  for (const Check& c : checks) {
    if (!c.passed()) ids.push_back(c.id);
  }
  return ids;
}

VerificationBundle run_verification(const VerifyOptions& options) {
  check_dense_capacity(options.max_n, options.guard);
  Suite suite;
  suite.tol_override = options.tol;

  const std::vector<UcpgConfig> grid = verification_grid(options.max_n);
  for (const UcpgConfig& config : grid) {
    check_full_space(suite, config, options.guard);
    check_spectral(suite, config);
    if (in_gap_regime(config)) check_gap(suite, config);
  }
  for (const UcpgConfig& config : gap_regime_grid()) {
    check_spectral(suite, config);
    check_gap(suite, config);
  }

  VerificationBundle bundle;
  bundle.max_n = options.max_n;
  bundle.grid_size = grid.size();

  const double case_tol = options.tol ? *options.tol : 1e-12;
  for (SpecialKind kind : {SpecialKind::complete, SpecialKind::bipartite, SpecialKind::star}) {
    CaseReport report = verify_case(kind, 3, 64, case_tol);
    const UcpgConfig probe = instantiate(kind, 64, Index{32});
    if (kind == SpecialKind::star) {
      // The displayed star matrix carries sqrt(N - 1) where the projection
      // yields sqrt(N - 2); that mismatch is reported in special_cases and
      // the gate checks the projection value instead.
      suite.numeric("special.star_projection", "closed form vs sqrt(N - 2) star matrix", 1e-12)
          .record(report.projection_max_deviation, probe);
    } else {
      suite.numeric("special." + std::string(to_string(kind)),
                    "closed form vs displayed matrix, N in [3, 64]", 1e-12)
          .record(report.max_abs_error, probe);
    }
    bundle.special_cases.push_back(std::move(report));
  }

  // Each family flows through the whole pipeline unchanged.
  for (Index n : {Index{3}, Index{8}, Index{17}, Index{32}, Index{64}}) {
    std::vector<UcpgConfig> members{instantiate(SpecialKind::complete, n),
                                    instantiate(SpecialKind::star, n)};
    for (Index m0 : {Index{1}, n / 2, n - 1}) {
      members.push_back(instantiate(SpecialKind::bipartite, n, m0));
    }
    for (const UcpgConfig& config : members) {
      PipelineOptions popt;
      popt.guard = options.guard;
      const PipelineBundle run = run_pipeline(config, popt);
      suite.structural("special.pipeline_hierarchy", "special-case configs pass every pipeline "
                       "certificate", 0.0)
          .record(run.all_passed() ? 0.0 : 1.0, config);
    }
  }

  bundle.checks = std::move(suite.checks);
  return bundle;
}

}  // namespace qwalk
