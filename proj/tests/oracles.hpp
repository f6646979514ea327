#pragma once

// Reference computations that share no code with the library: adjacency from
// explicit partition labels, evolution through the matrix exponential, and
// projectors from a QR factorization.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct Triple {
  std::int64_t n;
  std::int64_t p;
  std::int64_t m0;
  std::int64_t m1() const { return (n - m0) / p; }
};

inline std::vector<int> partition_labels(const Triple& t) {
  std::vector<int> labels;
  for (std::int64_t i = 0; i < t.m0; ++i) labels.push_back(0);
  for (int part = 1; part <= t.p; ++part) {
    for (std::int64_t i = 0; i < t.m1(); ++i) labels.push_back(part);
  }
  return labels;
}

inline Mat adjacency(const Triple& t) {
  const auto labels = partition_labels(t);
  const auto n = static_cast<Eigen::Index>(labels.size());
  Mat a = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (labels[i] != labels[j]) a(i, j) = 1.0;
    }
  }
  return a;
}

// Orthonormal (omega, V0 \ omega, outside-V0) indicator vectors, empty middle when m0 = 1.
inline Mat collapsed_columns(const Triple& t) {
  const auto labels = partition_labels(t);
  const auto n = static_cast<Eigen::Index>(labels.size());
  std::vector<Vec> cols;
  Vec w = Vec::Zero(n);
  w(0) = 1.0;
  cols.push_back(w);
  if (t.m0 > 1) {
    Vec v = Vec::Zero(n);
    for (Eigen::Index i = 1; i < n; ++i) v(i) = labels[i] == 0 ? 1.0 : 0.0;
    cols.push_back(v.normalized());
  }
  Vec o = Vec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) o(i) = labels[i] != 0 ? 1.0 : 0.0;
  cols.push_back(o.normalized());
  Mat b(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) b.col(static_cast<Eigen::Index>(k)) = cols[k];
  return b;
}

inline Mat projector(const Mat& columns) {
  Eigen::HouseholderQR<Mat> qr(columns);
  const Mat q = qr.householderQ() * Mat::Identity(columns.rows(), columns.cols());
  return q * q.transpose();
}

inline CVec expm_evolve(const Mat& h, const CVec& psi0, double t) {
  const CMat gen = CMat(h.cast<std::complex<double>>()) * std::complex<double>(0.0, -t);
  return gen.exp() * psi0;
}

inline Vec uniform(Eigen::Index n) { return Vec::Constant(n, 1.0 / std::sqrt(double(n))); }

// Random valid triples with N <= max_n.
class TripleGenerator {
 public:
  explicit TripleGenerator(std::uint64_t seed, std::int64_t max_n = 96)
      : rng_(seed), max_n_(max_n) {}

  Triple next() {
    for (;;) {
      std::uniform_int_distribution<std::int64_t> p_dist(1, 8);
      std::uniform_int_distribution<std::int64_t> m_dist(1, 24);
      const std::int64_t p = p_dist(rng_);
      const std::int64_t m1 = m_dist(rng_);
      const std::int64_t m0 = m_dist(rng_);
      const std::int64_t n = m0 + p * m1;
      if (n <= max_n_ && n >= 2) return {n, p, m0};
    }
  }

  double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::int64_t max_n_;
};

}  // namespace oracle
