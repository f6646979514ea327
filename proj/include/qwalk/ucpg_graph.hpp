#pragma once

// Uniform complete multi-partite graphs (UCPG): P+1 vertex partitions, the
// marked vertex w living in V0, every V_i (i >= 1) of equal size m1, and an
// edge between every pair of vertices in different partitions.
//
// Vertex ordering: 0..m0-1 is V0 with w = 0, then V1, ..., VP contiguously.

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

inline constexpr Index kDefaultDenseGuard = 4096;

// Dense full-space cap; QWALK_DENSE_GUARD overrides the default of 4096.
Index dense_guard();

class UcpgConfig {
 public:
  // Validates the triple and derives m1 = (N - m0) / P.
  static UcpgConfig make(Index n_total, Index p_parts, Index m0);

  Index n_total() const noexcept { return n_total_; }
  Index p_parts() const noexcept { return p_parts_; }
  Index m0() const noexcept { return m0_; }
  Index m1() const noexcept { return m1_; }

  double alpha() const noexcept {
    return static_cast<double>(m0_) / static_cast<double>(n_total_);
  }
  double alpha1() const noexcept {
    return static_cast<double>(m1_) / static_cast<double>(n_total_);
  }

  // m0 = 1: the collapsed basis is two-dimensional.
  bool single_vertex_marked_partition() const noexcept { return m0_ == 1; }

  // Partition index (0..P) of a vertex under the fixed ordering.
  Index partition_of(Index vertex) const noexcept {
    return vertex < m0_ ? 0 : 1 + (vertex - m0_) / m1_;
  }
  Index partition_size(Index partition) const noexcept {
    return partition == 0 ? m0_ : m1_;
  }

  std::string to_string() const;

  friend bool operator==(const UcpgConfig&, const UcpgConfig&) = default;

 private:
  UcpgConfig(Index n, Index p, Index m0, Index m1)
      : n_total_(n), p_parts_(p), m0_(m0), m1_(m1) {}

  Index n_total_;
  Index p_parts_;
  Index m0_;
  Index m1_;
};

inline UcpgConfig make_config(Index n_total, Index p_parts, Index m0) {
  return UcpgConfig::make(n_total, p_parts, m0);
}

template <typename Scalar = double>
struct FullAdjacency {
  MatrixX<Scalar> matrix;
  Index marked_index = 0;
};

template <typename Scalar = double>
struct CollapsedBasis {
  VectorX<Scalar> omega;
  // Empty (size 0) when m0 = 1.
  VectorX<Scalar> s_v0_minus_omega;
  VectorX<Scalar> s_vbar0;

  Index dim() const noexcept { return s_v0_minus_omega.size() == 0 ? 2 : 3; }

  // Columns in slot order; a zero column stands in for the missing slot when
  // m0 = 1 so the 3x3 data path stays uniform.
  MatrixX<Scalar> as_columns() const {
    MatrixX<Scalar> b = MatrixX<Scalar>::Zero(omega.size(), 3);
    b.col(kOmega) = omega;
    if (dim() == 3) b.col(kV0MinusOmega) = s_v0_minus_omega;
    b.col(kVbar0) = s_vbar0;
    return b;
  }

  // Only the columns that exist (N x dim()).
  MatrixX<Scalar> span_columns() const {
    MatrixX<Scalar> b(omega.size(), dim());
    b.col(0) = omega;
    if (dim() == 3) {
      b.col(1) = s_v0_minus_omega;
      b.col(2) = s_vbar0;
    } else {
      b.col(1) = s_vbar0;
    }
    return b;
  }
};

inline void check_dense_capacity(Index n, Index guard) {
  if (n > guard) {
    throw CapacityError("dense full-space storage for N=" + std::to_string(n) +
                        " exceeds the guard N <= " + std::to_string(guard));
  }
}

template <typename Scalar = double>
FullAdjacency<Scalar> build_adjacency(const UcpgConfig& config,
                                      Index guard = dense_guard()) {
  const Index n = config.n_total();
  check_dense_capacity(n, guard);
  FullAdjacency<Scalar> adj;
  adj.matrix = MatrixX<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index pi = config.partition_of(i);
    for (Index j = 0; j < n; ++j) {
      if (pi != config.partition_of(j)) adj.matrix(i, j) = Scalar(1);
    }
  }
  adj.marked_index = 0;
  return adj;
}

// Three-dimensional case only; m0 = 1 raises DegenerateBasisError.
template <typename Scalar = double>
CollapsedBasis<Scalar> build_collapsed_basis(const UcpgConfig& config,
                                             const FullAdjacency<Scalar>& adjacency);

// Accepts m0 = 1 and returns the two-dimensional (w, S_{V0bar}) basis there.
template <typename Scalar = double>
CollapsedBasis<Scalar> build_collapsed_basis_any(const UcpgConfig& config,
                                                 const FullAdjacency<Scalar>& adjacency) {
  const Index n = config.n_total();
  if (adjacency.matrix.rows() != n || adjacency.matrix.cols() != n) {
    throw DomainError("adjacency size does not match N=" + std::to_string(n));
  }
  using std::sqrt;
  CollapsedBasis<Scalar> basis;
  basis.omega = VectorX<Scalar>::Zero(n);
  basis.omega(adjacency.marked_index) = Scalar(1);

  const Index m0 = config.m0();
  if (m0 >= 2) {
    basis.s_v0_minus_omega = VectorX<Scalar>::Zero(n);
    const Scalar amp = Scalar(1) / sqrt(Scalar(m0 - 1));
    for (Index i = 1; i < m0; ++i) basis.s_v0_minus_omega(i) = amp;
  }
  basis.s_vbar0 = VectorX<Scalar>::Zero(n);
  const Scalar amp = Scalar(1) / sqrt(Scalar(n - m0));
  for (Index i = m0; i < n; ++i) basis.s_vbar0(i) = amp;
  return basis;
}

template <typename Scalar>
CollapsedBasis<Scalar> build_collapsed_basis(const UcpgConfig& config,
                                             const FullAdjacency<Scalar>& adjacency) {
  if (config.m0() == 1) {
    throw DegenerateBasisError(
        "m0 = 1 leaves |S_{V0-w}> undefined; use the two-dimensional (w, S_{V0bar}) "
        "basis from build_collapsed_basis_any");
  }
  return build_collapsed_basis_any(config, adjacency);
}

// Uniform superposition |s> in full space.
template <typename Scalar = double>
VectorX<Scalar> uniform_superposition_full(Index n) {
  using std::sqrt;
  return VectorX<Scalar>::Constant(n, Scalar(1) / sqrt(Scalar(n)));
}

}  // namespace qwalk
