#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "qwalk/ucpg_graph.hpp"

using namespace qwalk;

TEST_CASE("make_config derives m1 and alpha") {
  const UcpgConfig c = make_config(9, 2, 3);
  CHECK(c.m1() == 3);
  CHECK(c.alpha() == doctest::Approx(1.0 / 3.0));

  const UcpgConfig fig = make_config(7, 2, 3);
  CHECK(fig.m1() == 2);
  CHECK(fig.alpha() == doctest::Approx(3.0 / 7.0));
}

TEST_CASE("make_config rejects bad triples") {
  CHECK_THROWS_AS(make_config(8, 3, 3), ConfigError);
  CHECK_THROWS_AS(make_config(5, 1, 5), DomainError);
  CHECK_THROWS_AS(make_config(5, 1, 7), DomainError);
  CHECK_THROWS_AS(make_config(5, 1, 0), DomainError);
  CHECK_THROWS_AS(make_config(5, 0, 1), ConfigError);
  try {
    make_config(8, 3, 3);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("N=8") != std::string::npos);
    CHECK(msg.find("P=3") != std::string::npos);
    CHECK(msg.find("m0=3") != std::string::npos);
  }
}

TEST_CASE("small adjacency matrices by hand") {
  const auto k2 = build_adjacency<double>(make_config(2, 1, 1));
  oracle::Mat expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK((k2.matrix - expected).norm() == 0.0);

  const auto k4 = build_adjacency<double>(make_config(4, 3, 1));
  CHECK((k4.matrix - (oracle::Mat::Ones(4, 4) - oracle::Mat::Identity(4, 4))).norm() == 0.0);
}

TEST_CASE("seven-vertex graph degrees by brute-force edge count") {
  const oracle::Triple t{7, 2, 3};
  const auto labels = oracle::partition_labels(t);
  const auto adj = build_adjacency<double>(make_config(7, 2, 3));
  for (int v = 0; v < 7; ++v) {
    int cross = 0;
    for (int u = 0; u < 7; ++u) cross += labels[u] != labels[v] ? 1 : 0;
    CHECK(adj.matrix.row(v).sum() == doctest::Approx(cross));
  }
  CHECK(adj.matrix.row(0).sum() == 4.0);
  CHECK(adj.matrix.row(3).sum() == 5.0);
}

TEST_CASE("property: adjacency matches the label oracle on random triples") {
  oracle::TripleGenerator gen(0x5eed);
  for (int trial = 0; trial < 60; ++trial) {
    const oracle::Triple t = gen.next();
    const UcpgConfig c = make_config(t.n, t.p, t.m0);
    const auto adj = build_adjacency<double>(c);
    CAPTURE(c.to_string());
    CHECK((adj.matrix - oracle::adjacency(t)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(adj.matrix.diagonal().cwiseAbs().maxCoeff() == 0.0);
    for (Index v = 0; v < c.n_total(); ++v) {
      const Index size = c.partition_size(c.partition_of(v));
      CHECK(adj.matrix.row(v).sum() == doctest::Approx(double(c.n_total() - size)));
    }
  }
}

TEST_CASE("collapsed basis amplitudes and orthonormality") {
  {
    const UcpgConfig c = make_config(7, 2, 3);
    const auto b = build_collapsed_basis(c, build_adjacency<double>(c));
    CHECK(b.s_v0_minus_omega(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b.s_v0_minus_omega(2) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b.s_v0_minus_omega(0) == 0.0);
  }
  {
    const UcpgConfig c = make_config(9, 2, 3);
    const auto b = build_collapsed_basis(c, build_adjacency<double>(c));
    for (Index i = 3; i < 9; ++i) CHECK(b.s_vbar0(i) == doctest::Approx(1.0 / std::sqrt(6.0)));
  }
  {
    const UcpgConfig c = make_config(30, 4, 10);
    const auto b = build_collapsed_basis(c, build_adjacency<double>(c));
    const oracle::Mat cols = b.span_columns();
    CHECK((cols.transpose() * cols - oracle::Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((cols - oracle::collapsed_columns({30, 4, 10})).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("m0 = 1 signals the two-dimensional basis") {
  const UcpgConfig c = make_config(5, 4, 1);
  const auto adj = build_adjacency<double>(c);
  CHECK_THROWS_AS(build_collapsed_basis(c, adj), DegenerateBasisError);
  const auto b = build_collapsed_basis_any(c, adj);
  CHECK(b.dim() == 2);
  CHECK(b.as_columns().col(kV0MinusOmega).norm() == 0.0);
}

TEST_CASE("property: closure and span membership of |s>") {
  oracle::TripleGenerator gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const oracle::Triple t = gen.next();
    const UcpgConfig c = make_config(t.n, t.p, t.m0);
    const oracle::Mat a = oracle::adjacency(t);
    const oracle::Mat b = oracle::collapsed_columns(t);
    const oracle::Mat pi = oracle::projector(b);
    const oracle::Mat leak = (oracle::Mat::Identity(t.n, t.n) - pi) * a * b;
    CAPTURE(c.to_string());
    CHECK(leak.colwise().norm().maxCoeff() <= 1e-10);
    const oracle::Vec s = oracle::uniform(t.n);
    CHECK((s - pi * s).norm() <= 1e-12);
    CHECK((uniform_superposition_full<double>(t.n) - s).norm() <= 1e-15);
  }
}

TEST_CASE("dense guard") {
  const UcpgConfig c = make_config(10, 1, 5);
  CHECK_THROWS_AS(build_adjacency<double>(c, 8), CapacityError);
  CHECK_NOTHROW(build_adjacency<double>(c, 10));
  CHECK(dense_guard() == (std::getenv("QWALK_DENSE_GUARD") ? dense_guard() : kDefaultDenseGuard));
}

TEST_CASE("long double scalar instantiation") {
  const UcpgConfig c = make_config(7, 2, 3);
  const auto adj = build_adjacency<long double>(c);
  const auto b = build_collapsed_basis(c, adj);
  const auto cols = b.span_columns();
  const auto gram = (cols.transpose() * cols).eval();
  CHECK(static_cast<double>((gram - MatrixX<long double>::Identity(3, 3)).cwiseAbs().maxCoeff()) <=
        1e-18);
}
