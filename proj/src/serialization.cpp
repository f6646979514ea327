#include "qwalk/serialization.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace qwalk {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), ptr);
}

Json to_json(const UcpgConfig& config) {
  return Json{{"n_total", config.n_total()}, {"p_parts", config.p_parts()},
              {"m0", config.m0()},           {"m1", config.m1()},
              {"alpha", config.alpha()},     {"alpha1", config.alpha1()},
              {"small_m0", config.m0() < 2}};
}

Json to_json(const Matrix3d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

Json to_json(const ReducedHamiltonian& reduced) {
  Json labels = Json::array();
  for (auto l : reduced.basis_labels) labels.push_back(std::string(l));
  return Json{{"matrix", to_json(reduced.matrix)},
              {"basis_labels", labels},
              {"null_slot", reduced.has_null_slot() ? Json(2) : Json(nullptr)}};
}

Json to_json(const SpectralData& s) {
  return Json{
      {"kappa", s.kappa},
      {"beta_plus", s.beta_plus},
      {"beta_minus", s.beta_minus},
      {"gamma", s.gamma},
      {"gamma_opt", s.gamma_opt},
      {"gamma_formula", s.gamma_formula},
      {"v1", s.v1},
      {"v2", s.v2},
      {"v3", s.v3},
      {"lambda_plus", s.lambda_plus},
      {"lambda_minus", s.lambda_minus},
      {"delta1", s.delta1},
      {"delta2", s.delta2},
      {"e1_coeffs", {s.e1_coeffs(0), s.e1_coeffs(1)}},
      {"e2_coeffs", {s.e2_coeffs(0), s.e2_coeffs(1)}},
      {"degenerate_path", s.degenerate_path},
      {"degeneracy_reached", s.degeneracy_reached},
      {"direct",
       {{"lambda_plus", s.direct.lambda_plus},
        {"lambda_minus", s.direct.lambda_minus},
        {"e1", {s.direct.e1(0), s.direct.e1(1)}},
        {"e2", {s.direct.e2(0), s.direct.e2(1)}},
        {"max_discrepancy", s.direct.max_discrepancy}}},
  };
}

Json to_json(const PeakReport& p) {
  return Json{{"t_peak", p.t_peak},
              {"p_peak", p.p_peak},
              {"t_run_predicted", p.t_run_predicted},
              {"p_o_predicted", p.p_o_predicted},
              {"ratio_time", p.ratio_time},
              {"ratio_prob", p.ratio_prob}};
}

Json to_json(const SubspaceCertificate& c) {
  return Json{{"config", to_json(c.config)},
              {"dims", {{"collapsed", c.collapsed_dim}, {"krylov", c.krylov_dim}}},
              {"projector_distance", c.projector_distance},
              {"projector_norm", "frobenius"},
              {"dynamics_distance", c.dynamics_distance},
              {"krylov_residual", c.krylov_residual},
              {"tolerances",
               {{"projector", c.tolerances.projector},
                {"dynamics", c.tolerances.dynamics},
                {"invariance", kInvarianceTol}}},
              {"passed", c.passed}};
}

Json to_json(const Check& c) {
  Json j{{"id", c.id},
         {"description", c.description},
         {"tolerance", c.tolerance},
         {"worst_value", c.worst_value},
         {"evaluated", c.evaluated},
         {"failures", c.failures},
         {"passed", c.passed()}};
  j["worst_config"] = c.worst_config ? to_json(*c.worst_config) : Json(nullptr);
  return j;
}

Json to_json(const CaseReport& r) {
  Json deviations = Json::array();
  for (const CaseDeviation& d : r.deviations) {
    deviations.push_back({{"n", d.n},
                          {"m0", d.m0},
                          {"entry", {d.row + 1, d.col + 1}},
                          {"expected", d.expected},
                          {"actual", d.actual}});
  }
  Json j{{"kind", std::string(to_string(r.kind))},
         {"n_range", {r.n_min, r.n_max}},
         {"instances", r.instances},
         {"max_abs_error", r.max_abs_error},
         {"tolerance", r.tolerance},
         {"deviation_count", r.deviations.size()},
         {"passed", r.passed}};
  // Listing every entry of a failing family is noisy; keep the first few.
  if (deviations.size() > 8) deviations.erase(deviations.begin() + 8, deviations.end());
  j["deviations"] = deviations;
  if (r.kind == SpecialKind::star) {
    j["approximation_max_deviation"] = r.approximation_max_deviation;
    j["projection_max_deviation"] = r.projection_max_deviation;
  }
  return j;
}

Json to_json(const PowerLawFit& fit) {
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"slope_stderr", fit.slope_stderr},
              {"points", fit.points}};
}

Json reduction_report(const UcpgConfig& config) {
  const ReducedHamiltonian reduced = reduce_closed_form(config);
  const SpectralData spectral = analyze_spectrum(config);
  return Json{{"config", to_json(config)},
              {"h_ra", to_json(reduced.matrix)},
              {"null_middle_row", reduced.has_null_slot()},
              {"spectral", to_json(spectral)},
              {"gamma_opt", spectral.gamma_opt},
              {"t_run", predicted_runtime(config, spectral)},
              {"t_rabi", rabi_transfer_time(spectral)},
              {"p_o", predicted_overlap(config, spectral)}};
}

Json to_json(const PipelineBundle& b) {
  Json certs = Json::array();
  for (const Check& c : b.certificates) certs.push_back(to_json(c));
  Json j{{"config", to_json(b.config)},
         {"h_ra", to_json(b.reduced)},
         {"h0_unit", to_json(b.unit_split.h0)},
         {"h1_unit", to_json(b.unit_split.h1)},
         {"spectral", to_json(b.spectral)},
         {"h_seek", to_json(b.search_h.matrix)},
         {"h_seek_eigenbasis", to_json(b.eigen_h.matrix)},
         {"peak", to_json(b.peak)},
         {"t_rabi", b.rabi_time},
         {"direct_overlap", b.direct_overlap},
         {"certificates", certs},
         {"passed", b.all_passed()}};
  if (b.krylov) {
    Json tri = Json::array();
    for (Index r = 0; r < b.krylov->tridiagonal.rows(); ++r) {
      Json row = Json::array();
      for (Index c = 0; c < b.krylov->tridiagonal.cols(); ++c) row.push_back(b.krylov->tridiagonal(r, c));
      tri.push_back(row);
    }
    j["krylov"] = {{"dim", b.krylov->dim}, {"residual", b.krylov->residual}, {"tridiagonal", tri}};
  } else {
    j["krylov"] = nullptr;
  }
  j["subspace"] = b.subspace ? to_json(*b.subspace) : Json(nullptr);
  j["full_reduced_deviation"] =
      b.full_reduced_deviation ? Json(*b.full_reduced_deviation) : Json(nullptr);
  return j;
}

Json to_json(const VerificationBundle& b) {
  Json checks = Json::array();
  for (const Check& c : b.checks) checks.push_back(to_json(c));
  Json cases = Json::array();
  for (const CaseReport& r : b.special_cases) cases.push_back(to_json(r));
  Json failing = Json::array();
  for (const std::string& id : b.failing_ids()) failing.push_back(id);
  return Json{{"grid_max_n", b.max_n}, {"grid_size", b.grid_size}, {"checks", checks},
              {"special_cases", cases}, {"failing", failing},    {"passed", b.all_passed()}};
}

void write_csv(std::ostream& os, const EvolutionSeries& series) {
  os << "t,p_success\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    os << format_double(series.times[i]) << ',' << format_double(series.p_success[i]) << '\n';
  }
}

std::string to_csv(const EvolutionSeries& series) {
  std::ostringstream os;
  write_csv(os, series);
  return os.str();
}

}  // namespace qwalk
