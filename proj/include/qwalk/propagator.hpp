#pragma once

// Exact time evolution under a time-independent real symmetric Hamiltonian by
// spectral decomposition: psi(t) = V exp(-i Lambda t) V^T psi(0).

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "qwalk/errors.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

template <typename Scalar = double>
class SpectralPropagator {
 public:
  using RealMatrix = MatrixX<Scalar>;
  using ComplexScalar = std::complex<Scalar>;
  using ComplexVector = VectorX<ComplexScalar>;

  template <typename MatrixDerived, typename VectorDerived>
  SpectralPropagator(const Eigen::MatrixBase<MatrixDerived>& hamiltonian,
                     const Eigen::MatrixBase<VectorDerived>& psi0) {
    using std::abs;
    if (hamiltonian.rows() != hamiltonian.cols()) {
      throw DomainError("Hamiltonian must be square");
    }
    if (psi0.size() != hamiltonian.rows()) {
      throw DomainError("initial state dimension " + std::to_string(psi0.size()) +
                        " does not match Hamiltonian dimension " +
                        std::to_string(hamiltonian.rows()));
    }
    const RealMatrix h = hamiltonian.template cast<Scalar>();
    if (h.size() > 0 && asymmetry(h) > Scalar(kHermitianTol)) {
      throw DomainError("Hamiltonian is not Hermitian (asymmetry " +
                        std::to_string(static_cast<double>(asymmetry(h))) + ")");
    }
    const ComplexVector psi = psi0.template cast<ComplexScalar>();
    if (abs(psi.norm() - Scalar(1)) > Scalar(kNormTol)) {
      throw DomainError("initial state is not normalized (norm " +
                        std::to_string(static_cast<double>(psi.norm())) + ")");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw DomainError("symmetric eigendecomposition did not converge");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
    coeffs_ = vectors_.transpose().template cast<ComplexScalar>() * psi;
  }

  Index dim() const noexcept { return energies_.size(); }
  const VectorX<Scalar>& energies() const noexcept { return energies_; }
  const RealMatrix& eigenvectors() const noexcept { return vectors_; }

  ComplexVector state(Scalar t) const {
    return vectors_.template cast<ComplexScalar>() * phased(t);
  }

  ComplexScalar amplitude(Index site, Scalar t) const {
    return vectors_.row(site).template cast<ComplexScalar>().dot(phased(t));
  }

  // |<site|psi(t)>|^2
  Scalar probability(Index site, Scalar t) const { return std::norm(amplitude(site, t)); }

 private:
  ComplexVector phased(Scalar t) const {
    ComplexVector out(coeffs_.size());
    for (Index k = 0; k < coeffs_.size(); ++k) {
      const Scalar phase = -energies_(k) * t;
      out(k) = ComplexScalar(std::cos(phase), std::sin(phase)) * coeffs_(k);
    }
    return out;
  }

  VectorX<Scalar> energies_;
  RealMatrix vectors_;
  ComplexVector coeffs_;
};

}  // namespace qwalk
