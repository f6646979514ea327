#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qwalk/spectral_analysis.hpp"

using namespace qwalk;

namespace {

// H0 block [[0, v1], [v1, v3]] rebuilt from alpha, P, N without library code.
Eigen::Matrix2d model_block(double n, double p, double m0, double gamma) {
  const double alpha = m0 / n;
  const double m1 = (n - m0) / p;
  Eigen::Matrix2d b;
  b << 0.0, -gamma * n * std::sqrt(alpha * (1 - alpha)), -gamma * n * std::sqrt(alpha * (1 - alpha)),
      -gamma * (n - m0 - m1);
  return b;
}

}  // namespace

TEST_CASE("kappa examples") {
  CHECK(compute_kappa(0.3, 1) == 0.0);
  CHECK(compute_kappa(0.5, 2) == doctest::Approx(0.5));
  for (double n : {10.0, 100.0, 1000.0}) {
    CHECK(compute_kappa(1.0 / n, 2) == doctest::Approx(std::sqrt(n - 1.0) / 2.0));
  }
  CHECK_THROWS_AS(compute_kappa(0.0, 2), DomainError);
  CHECK_THROWS_AS(compute_kappa(1.0, 2), DomainError);
}

TEST_CASE("beta examples and the product identity") {
  const Betas b0 = compute_betas(0.0);
  CHECK(b0.plus == 1.0);
  CHECK(b0.minus == -1.0);
  const Betas b = compute_betas(1.5);
  CHECK(b.plus == doctest::Approx(2.0));
  CHECK(b.minus == doctest::Approx(-0.5));
  CHECK_THROWS_AS(compute_betas(-0.1), DomainError);

  oracle::TripleGenerator gen(3);
  for (int i = 0; i < 200; ++i) {
    const double kappa = std::pow(10.0, gen.uniform_real(-6.0, 6.0));
    const Betas r = compute_betas(kappa);
    CHECK(std::abs(r.plus * r.minus + 1.0) <= 1e-14);
    CHECK(r.plus >= 1.0);
    // beta solves beta^2 - kappa beta - 1 = 0
    CHECK(std::abs(r.plus * r.plus - kappa * r.plus - 1.0) <= 1e-12 * r.plus * r.plus);
  }
  // beta+ grows like kappa for large kappa
  CHECK(compute_betas(std::sqrt(1e6 - 1)).plus / std::sqrt(1e6 - 1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("gamma_opt examples") {
  CHECK(compute_gamma_opt(make_config(100, 1, 50)) == doctest::Approx(0.02));

  const UcpgConfig c = make_config(9, 2, 3);
  const double g = compute_gamma_opt(c);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(model_block(9, 2, 3, g));
  CHECK(std::abs(es.eigenvalues()(0) + 1.0) <= 1e-12);
  CHECK(std::abs(analyze_spectrum(c).lambda_plus + 1.0) <= 1e-12);
}

TEST_CASE("m0 = 1 coupling makes the two lowest levels degenerate") {
  // The non-w block of the exact H0 is -gamma (N - 1 - m1) on S_V0bar, so the level
  // crosses -1 at gamma = 1 / (N - 1 - m1).
  for (Index n : {4, 5, 16, 101}) {
    const UcpgConfig complete = make_config(n, n - 1, 1);
    CHECK(compute_gamma_opt(complete) == doctest::Approx(1.0 / double(n - 2)).epsilon(1e-14));
    const SpectralData s = analyze_spectrum(complete);
    CHECK(s.degenerate_path);
    CHECK(s.degeneracy_reached);

    Matrix3d h0 = -s.gamma * reduce_closed_form(complete).matrix;
    h0.row(0).setZero();
    h0.col(0).setZero();
    h0(0, 0) = -1.0;
    Eigen::SelfAdjointEigenSolver<Matrix3d> es(h0, Eigen::EigenvaluesOnly);
    CHECK(std::abs(es.eigenvalues()(1) - es.eigenvalues()(0)) <= 1e-12);
  }
  const UcpgConfig k2 = make_config(2, 1, 1);
  CHECK_FALSE(analyze_spectrum(k2).degeneracy_reached);
}

TEST_CASE("eigenbasis transform: explicit conjugation oracle") {
  const UcpgConfig c = make_config(9, 2, 3);
  const SpectralData s = analyze_spectrum(c);
  const SearchHamiltonian h = make_model_search_hamiltonian(c, s.gamma);
  const SearchHamiltonian e = transform_to_eigenbasis(h, s);
  CHECK(e.basis == SearchBasis::eigen);
  CHECK(std::abs(e.matrix(1, 2)) <= 1e-12);
  CHECK(asymmetry(e.matrix) <= 1e-12);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(model_block(9, 2, 3, s.gamma));
  Matrix3d u = Matrix3d::Zero();
  u(0, 0) = 1.0;
  u.block<2, 2>(1, 1) = es.eigenvectors();
  const Matrix3d ref = u.transpose() * h.matrix * u;
  // Eigenvector signs are arbitrary in the oracle; compare magnitudes.
  CHECK((ref.cwiseAbs() - e.matrix.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(e.matrix(0, 0) == doctest::Approx(-1.0));
  CHECK(e.matrix(1, 1) == doctest::Approx(s.lambda_plus));
  CHECK(e.matrix(2, 2) == doctest::Approx(s.lambda_minus));
  CHECK(e.matrix(0, 1) == doctest::Approx(s.delta1));
  CHECK(e.matrix(0, 2) == doctest::Approx(s.delta2));
}

TEST_CASE("eigenbasis transform: bipartite sign pattern and bounds") {
  const SpectralData s = analyze_spectrum(make_config(40, 1, 20));
  CHECK(s.delta1 == doctest::Approx(-s.delta2));

  const UcpgConfig c = make_config(100, 4, 20);
  const SpectralData t = analyze_spectrum(c);
  CHECK(std::abs(t.delta2 / t.lambda_minus) < 1.0 / std::sqrt(c.alpha() * 100.0));
}

TEST_CASE("eigenbasis transform: integrity errors") {
  const UcpgConfig c = make_config(9, 2, 3);
  const SpectralData s = analyze_spectrum(c);
  SearchHamiltonian h = make_model_search_hamiltonian(c, s.gamma);
  const SearchHamiltonian e = transform_to_eigenbasis(h, s);
  CHECK_THROWS_AS(transform_to_eigenbasis(e, s), DomainError);
  CHECK_THROWS_AS(transform_to_eigenbasis(h, analyze_spectrum(make_config(7, 2, 3))), IntegrityError);
  CHECK_THROWS_AS(transform_to_eigenbasis(make_model_search_hamiltonian(c, 2 * s.gamma), s),
                  IntegrityError);
  SpectralData bad = s;
  bad.kappa += 0.1;
  CHECK_THROWS_AS(transform_to_eigenbasis(h, bad), IntegrityError);
}

TEST_CASE("runtime and overlap formulas") {
  const UcpgConfig c = make_config(200, 1, 100);
  CHECK(predicted_runtime(c, analyze_spectrum(c)) == doctest::Approx(10.0 * std::numbers::pi));

  // Overlap: lowest eigenvector of the oracle block dotted with the reduced |s>.
  int evaluated = 0;
  for (Index p : {1, 2, 3, 4, 5}) {
    for (double alpha : {0.2, 0.5, 0.8, 0.9}) {
      for (const Index n : {1200, 3600}) {
        const Index m0 = std::lround(alpha * double(n));
        if ((n - m0) % p != 0) continue;
        const UcpgConfig cfg = make_config(n, p, m0);
        const SpectralData s = analyze_spectrum(cfg);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(model_block(n, p, m0, s.gamma));
        const Eigen::Vector2d e1 = es.eigenvectors().col(0);
        const double amp = e1(0) * std::sqrt((m0 - 1.0) / n) + e1(1) * std::sqrt((n - m0) / double(n));
        CAPTURE(cfg.to_string());
        CHECK(std::abs(predicted_overlap(cfg, s) - amp * amp) <= 1e-10);
        CHECK(std::abs(direct_overlap(cfg, s) - amp * amp) <= 1e-10);
        ++evaluated;
      }
    }
  }
  CHECK(evaluated >= 20);
}

TEST_CASE("overlap stays constant as N grows") {
  struct Family {
    double alpha;
    Index p;
  };
  for (const Family f : {Family{0.5, 1}, Family{0.2, 4}, Family{0.5, 2}, Family{0.5, 5}}) {
    std::vector<double> values;
    for (Index n : {100, 1000, 10000}) {
      const UcpgConfig c = make_config(n, f.p, static_cast<Index>(f.alpha * n));
      values.push_back(direct_overlap(c, analyze_spectrum(c)));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    CHECK((*hi - *lo) / *hi < 0.1);
    CHECK(*lo > 0.1);
  }
  std::vector<double> complete;
  for (Index n : {100, 1000, 10000}) {
    const UcpgConfig c = make_config(n, n - 1, 1);
    complete.push_back(predicted_overlap(c, analyze_spectrum(c)));
  }
  CHECK(complete.front() == doctest::Approx(complete.back()).epsilon(0.1));
}

TEST_CASE("gap scan at large N has its minimum at gamma_opt") {
  const UcpgConfig c = make_config(4096, 2, 2048);
  const GapScan scan = scan_gap(c, compute_gamma_opt(c));
  CHECK(scan.gammas.size() == 101);
  CHECK(scan.center == 50);
  CHECK(std::abs(double(scan.argmin) - double(scan.center)) <= 1.0);
  CHECK_THROWS_AS(scan_gap(c, 1.0, 1), DomainError);
}

TEST_CASE("property: spectral invariants on random triples") {
  oracle::TripleGenerator gen(2024, 4000);
  for (int trial = 0; trial < 300; ++trial) {
    const oracle::Triple t = gen.next();
    if (t.m0 < 2) continue;
    const UcpgConfig c = make_config(t.n, t.p, t.m0);
    const SpectralData s = analyze_spectrum(c);
    CAPTURE(c.to_string());
    CHECK(s.kappa >= 0.0);
    CHECK(s.kappa < std::sqrt((1 - c.alpha()) / c.alpha()));
    CHECK((s.kappa == 0.0) == (t.p == 1));
    CHECK(s.beta_plus > 0.0);
    CHECK(s.beta_minus < 0.0);
    CHECK(s.lambda_plus < 0.0);
    CHECK(s.lambda_minus > 0.0);
    CHECK(std::abs(s.lambda_plus + 1.0) <= 1e-12);
    CHECK(std::abs(s.delta2 / s.lambda_minus) < 1.0 / std::sqrt(double(t.m0)));
    const SearchHamiltonian e = transform_to_eigenbasis(make_model_search_hamiltonian(c, s.gamma), s);
    CHECK(asymmetry(e.matrix) <= 1e-12);
    CHECK(std::abs(e.matrix(1, 2)) <= 1e-12);
    // two equivalent forms of delta1
    CHECK(std::abs(s.v2 * s.beta_plus / std::sqrt(s.beta_plus * s.beta_plus + 1) -
                   s.v2 * std::sqrt(s.beta_plus * s.beta_plus + 1) / (s.beta_plus - s.beta_minus)) <=
          1e-12);
  }
}

TEST_CASE("rabi time is sqrt2 shorter than the run time at gamma_opt") {
  const UcpgConfig c = make_config(4096, 1, 2048);
  const SpectralData s = analyze_spectrum(c);
  CHECK(predicted_runtime(c, s) / rabi_transfer_time(s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}
