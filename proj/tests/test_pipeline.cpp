#include <doctest.h>

#include <algorithm>

#include "qwalk/pipeline.hpp"
#include "qwalk/verification.hpp"

using namespace qwalk;

TEST_CASE("pipeline on the seven-vertex example") {
  const PipelineBundle b = run_pipeline(7, 2, 3);
  CHECK(b.all_passed());
  CHECK(b.krylov.has_value());
  CHECK(b.krylov->dim == 3);
  CHECK(b.subspace.has_value());
  CHECK(b.series_full.has_value());
  CHECK(*b.full_reduced_deviation <= 1e-9);
  CHECK(b.eigen_h.basis == SearchBasis::eigen);
  CHECK(std::abs(b.eigen_h.matrix(1, 2)) <= 1e-12);
  CHECK(b.certificates.size() >= 5);
}

TEST_CASE("smallest legal graph takes the two-dimensional path") {
  const PipelineBundle b = run_pipeline(2, 1, 1);
  CHECK(b.all_passed());
  CHECK(b.krylov->dim == 2);
  CHECK(b.reduced.has_null_slot());
  CHECK(b.spectral.degenerate_path);
}

TEST_CASE("invalid config is a stage-0 error") {
  try {
    run_pipeline(8, 3, 3);
    FAIL("expected an error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == 0);
    CHECK(e.stage_name() == "Configuration");
  }
}

TEST_CASE("full space is skipped above the guard") {
  PipelineOptions options;
  options.guard = 16;
  const PipelineBundle b = run_pipeline(make_config(64, 1, 32), options);
  CHECK_FALSE(b.series_full.has_value());
  CHECK_FALSE(b.krylov.has_value());
  CHECK(b.all_passed());
}

TEST_CASE("gamma override is carried through") {
  PipelineOptions options;
  const UcpgConfig c = make_config(64, 1, 32);
  options.gamma = 2 * compute_gamma_opt(c);
  const PipelineBundle b = run_pipeline(c, options);
  CHECK(b.search_h.gamma == *options.gamma);
  CHECK(b.spectral.gamma == *options.gamma);
}

TEST_CASE("verification grid") {
  const auto grid = verification_grid(256);
  CHECK(grid.size() >= 20);
  for (const auto& c : grid) CHECK(c.n_total() <= 256);
  CHECK(std::find(grid.begin(), grid.end(), make_config(7, 2, 3)) != grid.end());
  CHECK(std::find(grid.begin(), grid.end(), make_config(2, 1, 1)) != grid.end());
  for (const auto& c : gap_regime_grid()) CHECK(in_gap_regime(c));
}

TEST_CASE("verify passes at default size and fails with an impossible tolerance") {
  VerifyOptions options;
  options.max_n = 64;
  const VerificationBundle ok = run_verification(options);
  CHECK(ok.all_passed());
  CHECK(ok.failing_ids().empty());

  options.tol = 1e-30;
  const VerificationBundle bad = run_verification(options);
  CHECK_FALSE(bad.all_passed());
  CHECK_FALSE(bad.failing_ids().empty());

  VerifyOptions huge;
  huge.max_n = 100000;
  CHECK_THROWS_AS(run_verification(huge), CapacityError);
}
