#include "qwalk/special_cases.hpp"

#include <cmath>

#include "qwalk/invariant_reduction.hpp"

namespace qwalk {

std::string_view to_string(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::complete:
      return "complete";
    case SpecialKind::bipartite:
      return "bipartite";
    case SpecialKind::star:
      return "star";
  }
  return "unknown";
}

SpecialKind parse_special_kind(std::string_view name) {
  if (name == "complete") return SpecialKind::complete;
  if (name == "bipartite") return SpecialKind::bipartite;
  if (name == "star") return SpecialKind::star;
  throw DomainError("unknown special case '" + std::string(name) + "'");
}

UcpgConfig instantiate(SpecialKind kind, Index n, std::optional<Index> m0) {
  if (n < 2) throw DomainError("special cases need N >= 2");
  switch (kind) {
    case SpecialKind::complete:
      return make_config(n, n - 1, 1);
    case SpecialKind::bipartite:
      if (!m0 || *m0 < 1 || *m0 >= n) {
        throw DomainError("bipartite case needs 1 <= m0 < N");
      }
      return make_config(n, 1, *m0);
    case SpecialKind::star:
      return make_config(n, 1, n - 1);
  }
  throw DomainError("unknown special case");
}

ExpectedReduced expected_reduced(SpecialKind kind, Index n, std::optional<Index> m0) {
  const double nd = static_cast<double>(n);
  ExpectedReduced out{Matrix3d::Zero(), std::nullopt, std::nullopt};
  Matrix3d& h = out.exact;
  switch (kind) {
    case SpecialKind::complete:
      if (n < 2) throw DomainError("complete graph needs N >= 2");
      h(0, 2) = h(2, 0) = std::sqrt(nd - 1.0);
      h(2, 2) = nd - 2.0;
      break;
    case SpecialKind::bipartite: {
      if (!m0 || *m0 < 1 || *m0 >= n) throw DomainError("bipartite case needs 1 <= m0 < N");
      const double m1 = nd - static_cast<double>(*m0);
      h(0, 2) = h(2, 0) = std::sqrt(m1);
      h(1, 2) = h(2, 1) = std::sqrt(m1 * (static_cast<double>(*m0) - 1.0));
      break;
    }
    case SpecialKind::star: {
      if (n < 2) throw DomainError("star graph needs N >= 2");
      h(0, 2) = h(2, 0) = 1.0;
      h(1, 2) = h(2, 1) = std::sqrt(nd - 1.0);
      Matrix3d approx = h;
      approx(1, 2) = approx(2, 1) = std::sqrt(nd);
      out.large_n_approximation = approx;
      // V0 minus the marked leaf holds N - 2 satellites.
      Matrix3d projected = h;
      projected(1, 2) = projected(2, 1) = std::sqrt(nd - 2.0);
      out.projection_value = projected;
      break;
    }
  }
  return out;
}

CaseReport verify_case(SpecialKind kind, Index n_min, Index n_max, double tol) {
  CaseReport report;
  report.kind = kind;
  report.n_min = n_min;
  report.n_max = n_max;
  report.tolerance = tol;
  const auto compare = [&](Index n, std::optional<Index> m0) {
    const UcpgConfig config = instantiate(kind, n, m0);
    const Matrix3d actual = reduce_closed_form(config).matrix;
    const ExpectedReduced expected = expected_reduced(kind, n, m0);
    ++report.instances;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const double err = std::abs(actual(r, c) - expected.exact(r, c));
        report.max_abs_error = std::max(report.max_abs_error, err);
        if (err > tol) {
          report.deviations.push_back({n, config.m0(), r, c, expected.exact(r, c), actual(r, c)});
        }
      }
    }
    if (expected.large_n_approximation) {
      report.approximation_max_deviation =
          std::max(report.approximation_max_deviation,
                   (actual - *expected.large_n_approximation).cwiseAbs().maxCoeff());
    }
    if (expected.projection_value) {
      report.projection_max_deviation =
          std::max(report.projection_max_deviation,
                   (actual - *expected.projection_value).cwiseAbs().maxCoeff());
    }
  };
  for (Index n = n_min; n <= n_max; ++n) {
    if (kind == SpecialKind::bipartite) {
      for (Index m0 = 1; m0 < n; ++m0) compare(n, m0);
    } else {
      compare(n, std::nullopt);
    }
  }
  report.passed = report.deviations.empty() && report.instances > 0;
  return report;
}

UcpgConfig scaling_case_config(int case_id, Index n) {
  switch (case_id) {
    case 1:
      return make_config(n, 1, n / 2);
    case 2:
      return make_config(n, n - 1, 1);
    case 3:
      return make_config(n, 2, n - 2);
    case 4:
      return make_config(n, 4, n / 2);
    default:
      throw DomainError("scaling cases are numbered 1..4");
  }
}

}  // namespace qwalk
