#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/propagator.hpp"
#include "qwalk/types.hpp"
#include "qwalk/ucpg_graph.hpp"

namespace qwalk {

inline constexpr double kOrthonormalTol = 1e-12;
inline constexpr double kInvarianceTol = 1e-10;

// H_ra in the (w, S_{V0-w}, S_{V0bar}) basis.
struct ReducedHamiltonian {
  Matrix3d matrix;
  std::array<std::string_view, 3> basis_labels{"omega", "S_V0_minus_omega", "S_Vbar0"};
  UcpgConfig config;

  // Slot 1 is identically zero when m0 = 1.
  bool has_null_slot() const noexcept { return config.m0() == 1; }
};

ReducedHamiltonian reduce_closed_form(const UcpgConfig& config);

// Exact rational check of N - m0 - m1 == (N - m0)(1 - 1/P), i.e.
// P (N - m0 - m1) == (N - m0)(P - 1).
bool self_loop_identity_holds(const UcpgConfig& config);

template <typename Scalar = double>
struct KrylovReduction {
  MatrixX<Scalar> basis;        // N x dim, orthonormal columns
  MatrixX<Scalar> tridiagonal;  // dim x dim
  Scalar residual = Scalar(0);  // norm of the leakage after the last step
  Index dim = 0;
};

// Lanczos with full reorthogonalization. Stops once the next residual drops
// below tol or dim reaches max_dim.
template <typename Scalar = double, typename MatrixDerived, typename VectorDerived>
KrylovReduction<Scalar> reduce_krylov(const Eigen::MatrixBase<MatrixDerived>& a,
                                      const Eigen::MatrixBase<VectorDerived>& start,
                                      Index max_dim, Scalar tol = Scalar(kInvarianceTol)) {
  using std::abs;
  const Index n = a.rows();
  if (a.cols() != n) throw DomainError("Lanczos input must be square");
  if (start.size() != n) throw DomainError("Lanczos start vector has the wrong dimension");
  if (max_dim < 1) throw DomainError("max_dim must be >= 1");
  const MatrixX<Scalar> h = a.template cast<Scalar>();
  if (asymmetry(h) > Scalar(kHermitianTol)) {
    throw DomainError("Lanczos input is not symmetric");
  }
  const VectorX<Scalar> q0 = start.template cast<Scalar>();
  if (abs(q0.norm() - Scalar(1)) > Scalar(kNormTol)) {
    throw DomainError("Lanczos start vector is not normalized");
  }

  const Index cap = std::min(max_dim, n);
  MatrixX<Scalar> q(n, cap);
  std::vector<Scalar> alphas;
  std::vector<Scalar> betas;
  q.col(0) = q0;
  Scalar residual(0);
  Index dim = 0;
  for (Index k = 0; k < cap; ++k) {
    VectorX<Scalar> w = h * q.col(k);
    alphas.push_back(q.col(k).dot(w));
    // Two passes of classical Gram-Schmidt against every previous vector.
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(k + 1) * (q.leftCols(k + 1).transpose() * w);
    }
    residual = w.norm();
    dim = k + 1;
    if (residual < tol || dim == cap) break;
    betas.push_back(residual);
    q.col(k + 1) = w / residual;
  }

  KrylovReduction<Scalar> out;
  out.dim = dim;
  out.basis = q.leftCols(dim);
  out.tridiagonal = MatrixX<Scalar>::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    out.tridiagonal(i, i) = alphas[static_cast<std::size_t>(i)];
    if (i + 1 < dim) {
      out.tridiagonal(i, i + 1) = betas[static_cast<std::size_t>(i)];
      out.tridiagonal(i + 1, i) = betas[static_cast<std::size_t>(i)];
    }
  }
  out.residual = residual;
  return out;
}

struct SubspaceTolerances {
  double projector = 1e-9;
  double dynamics = 1e-9;
};

struct SubspaceCertificate {
  UcpgConfig config;
  Index collapsed_dim = 0;
  Index krylov_dim = 0;
  double projector_distance = 0.0;  // Frobenius norm
  double dynamics_distance = 0.0;
  double krylov_residual = 0.0;
  SubspaceTolerances tolerances;
  bool passed = false;
};

// Compares the closed-form reduction against the Krylov one: projector
// distance of the two spans, and the largest deviation of <w|exp(-iHt)|s>
// between full space (H_a) and reduced space (H_ra) over the sampled times.
SubspaceCertificate certify_same_subspace(const ReducedHamiltonian& closed,
                                          const CollapsedBasis<double>& collapsed,
                                          const KrylovReduction<double>& krylov,
                                          const FullAdjacency<double>& adjacency,
                                          const std::vector<double>& times,
                                          SubspaceTolerances tol = {});

// B^T H_a B in the collapsed basis (zero row/column at the missing slot).
Matrix3d project_onto_collapsed(const FullAdjacency<double>& adjacency,
                                const CollapsedBasis<double>& collapsed);

// Largest ||(1 - P) H_a v|| over the collapsed basis vectors.
double collapsed_closure_residual(const FullAdjacency<double>& adjacency,
                                  const CollapsedBasis<double>& collapsed);

}  // namespace qwalk
