#include "qwalk/invariant_reduction.hpp"

#include <algorithm>

namespace qwalk {

ReducedHamiltonian reduce_closed_form(const UcpgConfig& config) {
  const double n = static_cast<double>(config.n_total());
  const double m0 = static_cast<double>(config.m0());
  const double m1 = static_cast<double>(config.m1());
  const double hop_omega = std::sqrt(n - m0);
  const double hop_rest = std::sqrt((n - m0) * (m0 - 1.0));
  Matrix3d h = Matrix3d::Zero();
  h(kOmega, kVbar0) = h(kVbar0, kOmega) = hop_omega;
  h(kV0MinusOmega, kVbar0) = h(kVbar0, kV0MinusOmega) = hop_rest;
  h(kVbar0, kVbar0) = n - m0 - m1;
  return ReducedHamiltonian{h, {"omega", "S_V0_minus_omega", "S_Vbar0"}, config};
}

bool self_loop_identity_holds(const UcpgConfig& config) {
  const Index outside = config.n_total() - config.m0();
  return config.p_parts() * (outside - config.m1()) == outside * (config.p_parts() - 1);
}

Matrix3d project_onto_collapsed(const FullAdjacency<double>& adjacency,
                                const CollapsedBasis<double>& collapsed) {
  const MatrixXd b = collapsed.as_columns();
  return b.transpose() * adjacency.matrix * b;
}

double collapsed_closure_residual(const FullAdjacency<double>& adjacency,
                                  const CollapsedBasis<double>& collapsed) {
  const MatrixXd b = collapsed.span_columns();
  double worst = 0.0;
  for (Index k = 0; k < b.cols(); ++k) {
    const VectorXd hv = adjacency.matrix * b.col(k);
    const VectorXd leak = hv - b * (b.transpose() * hv);
    worst = std::max(worst, leak.norm());
  }
  return worst;
}

SubspaceCertificate certify_same_subspace(const ReducedHamiltonian& closed,
                                          const CollapsedBasis<double>& collapsed,
                                          const KrylovReduction<double>& krylov,
                                          const FullAdjacency<double>& adjacency,
                                          const std::vector<double>& times,
                                          SubspaceTolerances tol) {
  SubspaceCertificate cert{closed.config};
  cert.collapsed_dim = collapsed.dim();
  cert.krylov_dim = krylov.dim;
  cert.krylov_residual = krylov.residual;
  cert.tolerances = tol;
  if (cert.collapsed_dim != cert.krylov_dim) {
    throw CertificationError("reduction dimensions differ: collapsed " +
                             std::to_string(cert.collapsed_dim) + " vs Krylov " +
                             std::to_string(cert.krylov_dim));
  }
  const Index n = closed.config.n_total();
  if (adjacency.matrix.rows() != n || collapsed.omega.size() != n ||
      krylov.basis.rows() != n) {
    throw CertificationError("reductions were built for different vertex counts");
  }

  const MatrixXd bc = collapsed.span_columns();
  const MatrixXd pc = bc * bc.transpose();
  const MatrixXd pk = krylov.basis * krylov.basis.transpose();
  cert.projector_distance = (pc - pk).norm();

  const VectorXd s_full = uniform_superposition_full(n);
  Vector3d s_reduced;
  const double nd = static_cast<double>(n);
  s_reduced << 1.0 / std::sqrt(nd), std::sqrt((closed.config.m0() - 1.0) / nd),
      std::sqrt((nd - closed.config.m0()) / nd);
  const SpectralPropagator<double> full(adjacency.matrix, s_full);
  const SpectralPropagator<double> reduced(closed.matrix, s_reduced);
  double worst = 0.0;
  for (double t : times) {
    worst = std::max(worst, std::abs(full.amplitude(adjacency.marked_index, t) -
                                     reduced.amplitude(kOmega, t)));
  }
  cert.dynamics_distance = worst;
  cert.passed = cert.projector_distance <= tol.projector && cert.dynamics_distance <= tol.dynamics &&
                cert.krylov_residual <= kInvarianceTol;
  return cert;
}

}  // namespace qwalk
