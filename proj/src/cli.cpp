#include "qwalk/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qwalk/pipeline.hpp"
#include "qwalk/serialization.hpp"
#include "qwalk/special_cases.hpp"
#include "qwalk/verification.hpp"
#include "qwalk/walk_dynamics.hpp"

namespace qwalk::cli {
namespace {

namespace fs = std::filesystem;

struct GraphFlags {
  Index n = 0;
  Index p = 0;
  Index m0 = 0;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& g) {
  cmd->add_option("--n", g.n, "total vertex count N")->required();
  cmd->add_option("--p", g.p, "partitions not containing the marked vertex")->required();
  cmd->add_option("--m0", g.m0, "size of the marked partition")->required();
}

UcpgConfig config_from(const GraphFlags& g) {
  try {
    return make_config(g.n, g.p, g.m0);
  } catch (const Error& e) {
    throw PipelineError(0, std::string(kPipelineStages[0]), e.what());
  }
}

// Write-then-rename so readers never observe a partial file.
void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json manifest(const std::string& command, Json params, const std::optional<double>& gamma,
              Json outputs) {
  Json gamma_mode = gamma ? Json{{"explicit", *gamma}} : Json("optimal");
  return Json{{"command", command},
              {"parameters", std::move(params)},
              {"gamma_mode", gamma_mode},
              {"tolerances",
               {{"hermitian", kHermitianTol},
                {"norm", kNormTol},
                {"invariance", kInvarianceTol},
                {"orthonormality", kOrthonormalTol},
                {"peak_rel", kPeakRelTol},
                {"peak_prominence", kPeakProminence}}},
              {"outputs", std::move(outputs)},
              {"version", kToolVersion}};
}

fs::path with_suffix(const fs::path& out, const std::string& tag) {
  fs::path p = out;
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  p.replace_extension();
  p += "." + tag + ext;
  return p;
}

std::vector<Index> parse_n_list(const std::string& text) {
  std::vector<Index> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value < 2) {
      throw ConfigError("--n-list entries must be integers >= 2, got '" + item + "'");
    }
    ns.push_back(static_cast<Index>(value));
  }
  return ns;
}

Index exact_fraction(double alpha, Index n) {
  const double m0 = alpha * static_cast<double>(n);
  const double rounded = std::round(m0);
  if (!(alpha > 0.0 && alpha < 1.0) || std::abs(m0 - rounded) > 1e-9) {
    throw ConfigError("alpha=" + format_double(alpha) + " does not give an integer m0 for N=" +
                      std::to_string(n));
  }
  return static_cast<Index>(rounded);
}

int cmd_reduce(const GraphFlags& g, const std::string& format, std::ostream& out) {
  const UcpgConfig config = config_from(g);
  const Json report = reduction_report(config);
  if (format == "json") {
    out << dump(report);
    return kExitOk;
  }
  out << "field,value\n";
  const auto& h = report["h_ra"];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out << "h_ra_" << r + 1 << c + 1 << ',' << format_double(h[r][c].get<double>()) << '\n';
    }
  }
  const auto& s = report["spectral"];
  for (const char* key : {"kappa", "beta_plus", "beta_minus", "lambda_plus", "lambda_minus",
                          "delta1", "delta2", "gamma_formula"}) {
    out << key << ',' << format_double(s[key].get<double>()) << '\n';
  }
  out << "gamma_opt," << format_double(report["gamma_opt"].get<double>()) << '\n';
  out << "t_run," << format_double(report["t_run"].get<double>()) << '\n';
  out << "t_rabi," << format_double(report["t_rabi"].get<double>()) << '\n';
  out << "p_o," << format_double(report["p_o"].get<double>()) << '\n';
  out << "null_middle_row," << (config.m0() == 1 ? 1 : 0) << '\n';
  return kExitOk;
}

int cmd_analyze(const GraphFlags& g, std::optional<double> gamma, bool no_full,
                std::ostream& out) {
  PipelineOptions options;
  options.gamma = gamma;
  options.full_space = !no_full;
  const PipelineBundle bundle = run_pipeline(g.n, g.p, g.m0, options);
  out << dump(to_json(bundle));
  return bundle.all_passed() ? kExitOk : kExitVerificationFailed;
}

struct EvolveFlags {
  std::optional<double> gamma;
  std::optional<double> t_max;
  std::size_t samples = kDefaultSamples;
  std::string space = "reduced";
  std::string out;
};

int cmd_evolve(const GraphFlags& g, const EvolveFlags& f, std::ostream& out) {
  const UcpgConfig config = config_from(g);
  const bool want_reduced = f.space != "full";
  const bool want_full = f.space != "reduced";
  if (want_full) check_dense_capacity(config.n_total(), dense_guard());

  const double gamma = f.gamma ? *f.gamma : compute_gamma_opt(config);
  const SpectralData spectral = analyze_spectrum(config, gamma);
  const double t_max = f.t_max ? *f.t_max : kDefaultWindowFactor * predicted_runtime(config, spectral);
  const std::vector<double> times = uniform_times(t_max, f.samples);
  const InitialState psi0 = uniform_initial_state(config, want_full);

  std::optional<EvolutionSeries> reduced;
  std::optional<EvolutionSeries> full;
  if (want_reduced) {
    reduced = evolve(make_search_hamiltonian(reduce_closed_form(config), gamma), psi0, times);
  }
  if (want_full) {
    const FullAdjacency<double> adj = build_adjacency<double>(config);
    full = evolve(build_full_search_hamiltonian(adj, gamma), psi0, times);
    full->config = config;
  }

  Json outputs = Json::array();
  if (!f.out.empty()) {
    const fs::path base(f.out);
    if (reduced && full) {
      const fs::path pr = with_suffix(base, "reduced");
      const fs::path pf = with_suffix(base, "full");
      write_atomically(pr, to_csv(*reduced));
      write_atomically(pf, to_csv(*full));
      outputs = {pr.string(), pf.string()};
    } else {
      write_atomically(base, to_csv(reduced ? *reduced : *full));
      outputs = {base.string()};
    }
    Json params{{"n", g.n}, {"p", g.p}, {"m0", g.m0}, {"t_max", t_max},
                {"samples", f.samples}, {"space", f.space}};
    fs::path mpath = base;
    mpath += ".manifest.json";
    write_atomically(mpath, dump(manifest("evolve", params, f.gamma, outputs)));
  } else if (!(reduced && full)) {
    out << to_csv(reduced ? *reduced : *full);
  }
  if (reduced && full) {
    out << "max_deviation," << format_double(max_pointwise_deviation(*reduced, *full)) << '\n';
  }
  return kExitOk;
}

struct SweepFlags {
  std::string kind = "complete";
  std::string n_list;
  std::optional<double> alpha;
  std::optional<Index> p;
  std::optional<double> gamma_scale;
  std::string out;
  unsigned jobs = 1;
};

UcpgConfig sweep_config(const SweepFlags& f, Index n) {
  if (f.kind == "complete") return instantiate(SpecialKind::complete, n);
  if (f.kind == "star") return instantiate(SpecialKind::star, n);
  if (f.kind == "bipartite") {
    return instantiate(SpecialKind::bipartite, n, exact_fraction(f.alpha.value_or(0.5), n));
  }
  if (f.kind == "custom") {
    if (!f.alpha || !f.p) throw ConfigError("--case custom requires --alpha and --p");
    return make_config(n, *f.p, exact_fraction(*f.alpha, n));
  }
  throw ConfigError("unknown --case '" + f.kind + "'");
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
  const std::vector<Index> ns = parse_n_list(f.n_list);
  if (ns.size() < 3) {
    throw FitError("sweep needs at least 3 N values for a fit, got " + std::to_string(ns.size()));
  }
  std::vector<UcpgConfig> configs;
  for (Index n : ns) configs.push_back(sweep_config(f, n));
  const std::vector<ReducedPeakRun> runs = sweep_reduced_peaks(configs, f.jobs, f.gamma_scale);

  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> ps;
  std::ostringstream csv;
  csv << "n,p_parts,m0,m1,gamma,t_peak,p_peak,t_run_predicted,p_o_predicted\n";
  Json rows = Json::array();
  for (const ReducedPeakRun& r : runs) {
    xs.push_back(static_cast<double>(r.config.n_total()));
    ts.push_back(r.peak.t_peak);
    ps.push_back(r.peak.p_peak);
    csv << r.config.n_total() << ',' << r.config.p_parts() << ',' << r.config.m0() << ','
        << r.config.m1() << ',' << format_double(r.spectral.gamma) << ','
        << format_double(r.peak.t_peak) << ',' << format_double(r.peak.p_peak) << ','
        << format_double(r.peak.t_run_predicted) << ',' << format_double(r.peak.p_o_predicted)
        << '\n';
    Json row = to_json(r.peak);
    row["config"] = to_json(r.config);
    row["gamma"] = r.spectral.gamma;
    rows.push_back(row);
  }
  const PowerLawFit fit = fit_power_law(xs, ts);
  Json params{{"case", f.kind}, {"n_list", ns}, {"jobs", f.jobs}};
  if (f.alpha) params["alpha"] = *f.alpha;
  if (f.p) params["p"] = *f.p;
  if (f.gamma_scale) params["gamma_scale"] = *f.gamma_scale;
  Json result{{"case", f.kind}, {"rows", rows}, {"fit", to_json(fit)}};
  Json outputs = Json::array();
  if (!f.out.empty()) {
    fs::path csv_path(f.out);
    csv_path += ".csv";
    fs::path json_path(f.out);
    json_path += ".json";
    outputs = {csv_path.string(), json_path.string()};
    result["manifest"] = manifest("sweep", params, std::nullopt, outputs);
    write_atomically(csv_path, csv.str());
    write_atomically(json_path, dump(result));
  } else {
    result["manifest"] = manifest("sweep", params, std::nullopt, outputs);
  }
  out << dump(result);
  return kExitOk;
}

int cmd_verify(Index max_n, std::optional<double> tol, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.max_n = max_n;
  options.tol = tol;
  const VerificationBundle bundle = run_verification(options);
  out << dump(to_json(bundle));
  if (bundle.all_passed()) return kExitOk;
  err << "verification failed:";
  for (const std::string& id : bundle.failing_ids()) err << ' ' << id;
  err << '\n';
  return kExitVerificationFailed;
}

int cmd_special(const std::string& kind_name, Index n_min, Index n_max, std::optional<Index> m0,
                std::ostream& out) {
  const SpecialKind kind = parse_special_kind(kind_name);
  const CaseReport report = verify_case(kind, n_min, n_max);
  Json j = to_json(report);
  const std::optional<Index> m0_for = kind == SpecialKind::bipartite
                                          ? std::optional<Index>(m0.value_or(n_max / 2))
                                          : std::nullopt;
  const ExpectedReduced expected = expected_reduced(kind, n_max, m0_for);
  j["example"] = {{"config", to_json(instantiate(kind, n_max, m0_for))},
                  {"expected", to_json(expected.exact)},
                  {"closed_form", to_json(reduce_closed_form(instantiate(kind, n_max, m0_for)).matrix)}};
  if (expected.large_n_approximation) {
    j["example"]["large_n_approximation"] = to_json(*expected.large_n_approximation);
  }
  if (expected.projection_value) {
    j["example"]["projection_value"] = to_json(*expected.projection_value);
  }
  out << dump(j);
  return report.passed ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-walk search on uniform complete multi-partite graphs", "qwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GraphFlags graph;
  std::string format = "json";
  auto* reduce = app.add_subcommand("reduce", "reduced Hamiltonian and spectral data");
  add_graph_flags(reduce, graph);
  reduce->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::optional<double> analyze_gamma;
  bool no_full = false;
  auto* analyze = app.add_subcommand("analyze", "run the full search pipeline");
  add_graph_flags(analyze, graph);
  analyze->add_option("--gamma", analyze_gamma, "coupling factor (default: optimal)");
  analyze->add_flag("--no-full", no_full, "skip the full-space oracle");

  EvolveFlags evolve_flags;
  auto* evolve_cmd = app.add_subcommand("evolve", "success probability p(t) as CSV");
  add_graph_flags(evolve_cmd, graph);
  evolve_cmd->add_option("--gamma", evolve_flags.gamma, "coupling factor (default: optimal)");
  evolve_cmd->add_option("--t-max", evolve_flags.t_max, "end of the time window (default 3 T_run)");
  evolve_cmd->add_option("--samples", evolve_flags.samples, "number of uniform samples")
      ->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--space", evolve_flags.space, "reduced, full or both")
      ->check(CLI::IsMember({"reduced", "full", "both"}));
  evolve_cmd->add_option("--out", evolve_flags.out, "output CSV path");

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "peak time/probability vs N and log-log fit");
  sweep->add_option("--case", sweep_flags.kind, "complete, bipartite, star or custom")
      ->check(CLI::IsMember({"complete", "bipartite", "star", "custom"}));
  sweep->add_option("--n-list", sweep_flags.n_list, "comma-separated vertex counts")->required();
  sweep->add_option("--alpha", sweep_flags.alpha, "m0 / N (bipartite, custom)");
  sweep->add_option("--p", sweep_flags.p, "P (custom)");
  sweep->add_option("--gamma-scale", sweep_flags.gamma_scale, "run at gamma = scale * gamma_opt");
  sweep->add_option("--out", sweep_flags.out, "output prefix for .csv and .json");
  sweep->add_option("--jobs", sweep_flags.jobs, "worker threads")->check(CLI::PositiveNumber);

  Index grid_max_n = 128;
  std::optional<double> tol;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--grid-max-n", grid_max_n, "largest N in the configuration grid");
  verify->add_option("--tol", tol, "override every numeric tolerance");

  std::string special_kind = "complete";
  Index n_min = 3;
  Index n_max = 64;
  std::optional<Index> special_m0;
  auto* special = app.add_subcommand("special", "check a special graph family");
  special->add_option("--case", special_kind, "complete, bipartite or star")
      ->check(CLI::IsMember({"complete", "bipartite", "star"}));
  special->add_option("--n-min", n_min, "smallest N");
  special->add_option("--n-max", n_max, "largest N");
  special->add_option("--m0", special_m0, "bipartite m0 for the example matrix");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(graph, format, out);
    if (analyze->parsed()) return cmd_analyze(graph, analyze_gamma, no_full, out);
    if (evolve_cmd->parsed()) return cmd_evolve(graph, evolve_flags, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, out);
    if (verify->parsed()) return cmd_verify(grid_max_n, tol, out, err);
    if (special->parsed()) return cmd_special(special_kind, n_min, n_max, special_m0, out);
  } catch (const VerificationError& e) {
    err << "verification error: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const PipelineError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qwalk::cli
