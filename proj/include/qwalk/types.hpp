#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qwalk {

using Index = std::int64_t;

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix3d = Matrix3<double>;
using Vector3d = Vector3<double>;
using Vector3c = Vector3<Complex>;
using MatrixXd = MatrixX<double>;
using VectorXd = VectorX<double>;
using VectorXc = VectorX<Complex>;

// Position of each collapsed basis vector in the reduced 3x3 representation.
enum CollapsedSlot : int { kOmega = 0, kV0MinusOmega = 1, kVbar0 = 2 };

// Largest absolute asymmetry |A(i,j) - A(j,i)|.
template <typename Derived>
typename Derived::RealScalar asymmetry(const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qwalk
