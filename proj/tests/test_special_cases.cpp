#include <doctest.h>

#include <cmath>

#include "qwalk/pipeline.hpp"
#include "qwalk/special_cases.hpp"

using namespace qwalk;

namespace {

Matrix3d m3(std::initializer_list<double> v) {
  Matrix3d m;
  auto it = v.begin();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = *it++;
  return m;
}

double maxdiff(const Matrix3d& a, const Matrix3d& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("instantiate") {
  CHECK(instantiate(SpecialKind::complete, 5) == make_config(5, 4, 1));
  const UcpgConfig b = instantiate(SpecialKind::bipartite, 10, 6);
  CHECK(b == make_config(10, 1, 6));
  CHECK(b.m1() == 4);
  const UcpgConfig s = instantiate(SpecialKind::star, 7);
  CHECK(s == make_config(7, 1, 6));
  CHECK(s.m1() == 1);
  CHECK_THROWS_AS(instantiate(SpecialKind::bipartite, 10), DomainError);
  CHECK_THROWS_AS(instantiate(SpecialKind::bipartite, 10, 10), DomainError);
  CHECK_THROWS_AS(instantiate(SpecialKind::complete, 1), DomainError);
  CHECK(parse_special_kind("star") == SpecialKind::star);
  CHECK(to_string(SpecialKind::bipartite) == "bipartite");
  CHECK_THROWS(parse_special_kind("wheel"));
}

TEST_CASE("displayed matrices with numbers substituted") {
  const double r3 = std::sqrt(3.0);
  CHECK(maxdiff(expected_reduced(SpecialKind::complete, 4).exact,
                m3({0, 0, r3, 0, 0, 0, r3, 0, 2})) <= 1e-15);
  const double r20 = std::sqrt(20.0);
  CHECK(maxdiff(expected_reduced(SpecialKind::bipartite, 10, 6).exact,
                m3({0, 0, 2, 0, 0, r20, 2, r20, 0})) <= 1e-15);
  const ExpectedReduced star = expected_reduced(SpecialKind::star, 10);
  CHECK(maxdiff(star.exact, m3({0, 0, 1, 0, 0, 3, 1, 3, 0})) <= 1e-15);
  REQUIRE(star.large_n_approximation);
  CHECK((*star.large_n_approximation)(1, 2) == doctest::Approx(std::sqrt(10.0)));
  REQUIRE(star.projection_value);
  CHECK((*star.projection_value)(1, 2) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("complete and bipartite families match the closed form") {
  const CaseReport complete = verify_case(SpecialKind::complete, 3, 64);
  CHECK(complete.passed);
  CHECK(complete.instances == 62);
  CHECK(complete.max_abs_error <= 1e-12);

  const CaseReport bipartite = verify_case(SpecialKind::bipartite, 4, 64);
  CHECK(bipartite.passed);
  // every m0 in [1, N-1] for N in [4, 64]
  CHECK(bipartite.instances == (3 + 63) * 61 / 2);
}

TEST_CASE("star family: sqrt(N-1) display versus sqrt(N-2) projection") {
  // With the marked vertex a leaf, S_{V0-w} holds the other N-2 leaves and its
  // coupling to the centre is sqrt(N-2); the displayed sqrt(N-1) does not follow.
  const CaseReport star = verify_case(SpecialKind::star, 3, 64);
  CHECK_FALSE(star.passed);
  CHECK(star.projection_max_deviation <= 1e-12);
  CHECK(star.max_abs_error == doctest::Approx(std::sqrt(2.0) - 1.0));
  REQUIRE_FALSE(star.deviations.empty());
  CHECK(star.deviations.front().row == 1);
  CHECK(star.deviations.front().col == 2);
  // the large-N approximation drifts by O(1/sqrt N) and is only recorded
  CHECK(star.approximation_max_deviation > 0.0);
  CHECK(star.approximation_max_deviation < 1.0);
}

TEST_CASE("every special family runs through the pipeline") {
  for (const SpecialKind kind : {SpecialKind::complete, SpecialKind::bipartite, SpecialKind::star}) {
    for (Index n : {3, 8, 17, 32}) {
      const UcpgConfig c = instantiate(kind, n, kind == SpecialKind::bipartite ? std::optional<Index>(n / 2)
                                                                               : std::nullopt);
      const PipelineBundle bundle = run_pipeline(c);
      CAPTURE(c.to_string());
      CHECK(bundle.all_passed());
    }
  }
}

TEST_CASE("scaling case parameterizations") {
  CHECK(scaling_case_config(1, 256) == make_config(256, 1, 128));
  CHECK(scaling_case_config(2, 256) == make_config(256, 255, 1));
  CHECK(scaling_case_config(3, 256) == make_config(256, 2, 254));
  CHECK(scaling_case_config(4, 256) == make_config(256, 4, 128));
  CHECK_THROWS(scaling_case_config(5, 256));
}
