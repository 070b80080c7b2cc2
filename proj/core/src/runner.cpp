#include "ohz/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "ohz/contraction.hpp"
#include "ohz/extremal.hpp"

namespace ohz {

namespace {

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {
      "experiment", "seed",    "out",     "function", "omega",   "alpha",  "m",
      "dims",       "dim",     "trials",  "deltas",   "degree",  "degrees",
      "n",          "n_min",   "n_max",   "N",        "budget",  "restarts",
      "iters",      "cap",     "tag",     "mode",     "in",      "tau",    "runs",
      "base_points", "step_points", "t_min", "t_max"};
  return keys;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config line without '=': " + t);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (!config_keys().count(key)) throw ConfigError("unknown key '" + key + "'");
    cfg.values[key] = value;
  }
  if (cfg.has("experiment")) cfg.experiment = cfg.values.at("experiment");
  if (cfg.has("seed")) cfg.seed = std::stoull(cfg.values.at("seed"));
  if (cfg.has("out")) cfg.out_dir = cfg.values.at("out");
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  return parse(read_text_file(path));
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}
double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stod(it->second);
}
int RunConfig::get_int(const std::string& key, int fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stoi(it->second);
}
std::vector<int> RunConfig::get_ints(const std::string& key, std::vector<int> fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::vector<int> out;
  for (const auto& tok : split_list(it->second)) out.push_back(std::stoi(tok));
  if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
  return out;
}
std::vector<double> RunConfig::get_doubles(const std::string& key,
                                           std::vector<double> fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::vector<double> out;
  for (const auto& tok : split_list(it->second)) out.push_back(std::stod(tok));
  if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "decompose",  "seminorm",   "verify-doi", "verify-moi",      "verify-gen",
      "kappa",      "dilate-check", "holder-scan", "bks",           "omega-scan",
      "omega-search", "commutator-scan", "zygmund-fit", "report"};
  return names;
}

namespace {

struct Outputs {
  ReportBundle bundle;
  std::filesystem::path dir;

  explicit Outputs(const RunConfig& cfg) : dir(cfg.out_dir) {
    std::filesystem::create_directories(dir);
  }
  std::string csv(const std::string& name, const std::string& content) {
    std::string p = (dir / name).string();
    write_text_file(p, content);
    bundle.csv_paths.push_back(p);
    return p;
  }
  std::string svg(const std::string& name, const std::string& content) {
    std::string p = (dir / name).string();
    write_text_file(p, content);
    bundle.svg_paths.push_back(p);
    return p;
  }
  ReportBundle finish(const RunConfig& cfg, nlohmann::json summary) {
    summary["experiment"] = cfg.experiment;
    summary["seed"] = cfg.seed;
    summary["tool_version"] = "ohzlab 0.1.0";
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [k, v] : cfg.values) echo[k] = v;
    summary["config"] = echo;
    bundle.summary = summary;
    bundle.json_path = (dir / "summary.json").string();
    write_text_file(bundle.json_path, summary.dump(2) + "\n");
    return bundle;
  }
};

FunctionModel parse_function(const std::string& id) { return FunctionModel::from_id(id); }

PeriodicSignal parse_periodic(const std::string& id) {
  if (id.rfind("abs_sin_sqrt", 0) == 0) {
    int degree = 4096;
    auto colon = id.find(':');
    if (colon != std::string::npos) degree = std::stoi(id.substr(colon + 1));
    return periodic_from_function([](double x) { return std::sqrt(std::abs(std::sin(x))); },
                                  degree);
  }
  FunctionModel f = parse_function(id);
  if (!f.has_exact_divdiff() || f.domain() != FnDomain::Circle)
    throw ConfigError("expected a circle polynomial function id, got '" + id + "'");
  PeriodicSignal s(std::max(std::abs(f.k_min()), std::abs(f.degree())));
  for (int k = f.k_min(); k <= f.degree(); ++k)
    s.set_coeff(k, f.coeffs()[static_cast<size_t>(k - f.k_min())]);
  return s;
}

GridSpec parse_grid(const RunConfig& cfg) {
  GridSpec g;
  g.base_points = cfg.get_int("base_points", g.base_points);
  g.step_points = cfg.get_int("step_points", g.step_points);
  g.t_min = cfg.get_double("t_min", g.t_min);
  g.t_max = cfg.get_double("t_max", g.t_max);
  return g;
}

ReportBundle run_decompose(const RunConfig& cfg) {
  Outputs out(cfg);
  SmoothCutoff cutoff;
  int n_max = cfg.get_int("n_max", 6);
  PeriodicSignal f = parse_periodic(cfg.get("function", "zpoly:0,1,0,0.25,0,0.0625"));

  out.csv("kernel_table.csv",
          kernel_table_csv(kernel_table(KernelKind::W, 0, n_max, 65,
                                        std::ldexp(1.0, n_max + 1), cutoff)));
  ExperimentRecord blocks;
  blocks.tag = "lp_blocks";
  blocks.seed = cfg.seed;
  PeriodicSignal acc = vp_smooth(f, 0, cutoff);
  for (int n = 0; n <= n_max; ++n) {
    PeriodicSignal block = lp_block(f, n, cutoff);
    TrialRow row;
    row.trial = n;
    row.dim = f.degree();
    row.delta = std::ldexp(1.0, -n);
    row.numerator = block.sup_norm();
    row.denominator = 1.0;
    row.ratio = row.numerator;
    blocks.rows.push_back(row);
  }
  out.csv("blocks.csv", record_to_csv(blocks));
  out.svg("blocks.svg", emit_svg(blocks, PlotKind::RatioVsDelta));

  PeriodicSignal rec = reconstruct(f, cfg.get_int("n", 0), cutoff);
  nlohmann::json summary{{"degree", f.degree()},
                         {"reconstruct_residual", rec.max_coeff_distance(f)},
                         {"rows", blocks.rows.size()}};
  return out.finish(cfg, summary);
}

ReportBundle run_seminorm(const RunConfig& cfg) {
  Outputs out(cfg);
  FunctionModel f = parse_function(cfg.get("function", "abs_power:0.5"));
  GridSpec grid = parse_grid(cfg);
  SeminormReport rep;
  if (cfg.has("omega")) {
    rep = lambda_omega_norm(f, ModulusOfContinuity::from_id(cfg.values.at("omega")),
                            cfg.get_int("m", 1), grid);
  } else {
    rep = holder_seminorm(f, cfg.get_double("alpha", 0.5), grid);
  }
  nlohmann::json j = seminorm_to_json(rep);
  write_text_file((out.dir / "seminorm.json").string(), j.dump(2) + "\n");
  return out.finish(cfg, {{"value", rep.value}, {"t_star", rep.t_star}, {"x_star", rep.x_star}});
}

ReportBundle run_verify_doi(const RunConfig& cfg) {
  Outputs out(cfg);
  std::vector<int> dims = cfg.get_ints("dims", {2, 3, 4, 5, 6, 7, 8});
  int trials = cfg.get_int("trials", 100);
  int degree = cfg.get_int("degree", 6);
  OperatorSampler sampler;
  std::vector<ResidualRow> rows;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(t));
    int dim = dims[static_cast<size_t>(t) % dims.size()];
    std::vector<double> coeffs(static_cast<size_t>(degree) + 1);
    for (auto& c : coeffs) c = rng.uniform(-1.0, 1.0);
    FunctionModel f = FunctionModel::polynomial(coeffs);
    CMat a = sampler.hermitian(rng, dim);
    CMat k = sampler.hermitian_direction(rng, dim);
    CMat diff = func_of(a + k, f) - func_of(a, f);
    CMat via = doi(divided_difference_symbol(f), eig(a + k), eig(a), k);
    double rel = (diff - via).norm() / (1.0 + diff.norm());
    rows.push_back({"bsf", dim, degree, rel});
    worst = std::max(worst, rel);
  }
  out.csv("residuals.csv", residuals_csv(rows));
  return out.finish(cfg, {{"max_residual", worst}, {"rows", rows.size()}});
}

ReportBundle run_verify_moi(const RunConfig& cfg) {
  Outputs out(cfg);
  int m = cfg.get_int("m", 2);
  std::vector<int> dims = cfg.get_ints("dims", m >= 3 ? std::vector<int>{2, 3, 4}
                                                      : std::vector<int>{2, 3, 4, 5});
  int trials = cfg.get_int("trials", 50);
  int degree = cfg.get_int("degree", 6);
  OperatorSampler sampler;
  std::vector<ResidualRow> rows;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(t));
    int dim = dims[static_cast<size_t>(t) % dims.size()];
    std::vector<double> coeffs(static_cast<size_t>(degree) + 1);
    for (auto& c : coeffs) c = rng.uniform(-1.0, 1.0);
    FunctionModel f = FunctionModel::polynomial(coeffs);
    CMat a = sampler.hermitian(rng, dim);
    CMat k = 0.5 * sampler.hermitian_direction(rng, dim);
    CMat lhs = op_finite_diff(f, a, k, m);
    std::vector<Spectrum> spectra;
    for (int j = 0; j <= m; ++j) spectra.push_back(to_spectrum(eig(a + j * k)));
    std::vector<CMat> factors(static_cast<size_t>(m), k);
    double mfac = 1.0;
    for (int i = 2; i <= m; ++i) mfac *= i;
    CMat rhs = mfac * moi(f, m, spectra, factors);
    double rel = (lhs - rhs).norm() / (1.0 + lhs.norm());
    rows.push_back({"lemma_m", dim, degree, rel});
    worst = std::max(worst, rel);
  }
  out.csv("residuals.csv", residuals_csv(rows));
  return out.finish(cfg, {{"max_residual", worst}, {"m", m}, {"rows", rows.size()}});
}

ReportBundle run_verify_binomial_expansion(const RunConfig& cfg) {
  Outputs out(cfg);
  int n = cfg.get_int("N", 3);
  int dim = cfg.get_int("dim", 3);
  int trials = cfg.get_int("trials", 20);
  int degree = cfg.get_int("degree", 4);
  OperatorSampler sampler;
  std::vector<ResidualRow> rows;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(t));
    std::vector<CMat> us;
    for (int j = 0; j < n; ++j) us.push_back(sampler.unitary(rng, dim));
    UnitaryFamily fam(us);
    std::vector<cplx> coeffs(static_cast<size_t>(2 * degree) + 1);
    for (auto& c : coeffs) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    FunctionModel f = FunctionModel::laurent(coeffs, -degree);
    double r = verify_binomial_expansion(n, fam, f);
    rows.push_back({"gen", dim, degree, r});
    worst = std::max(worst, r);
  }
  out.csv("residuals.csv", residuals_csv(rows));
  return out.finish(cfg, {{"max_residual", worst}, {"N", n}, {"rows", rows.size()}});
}

ReportBundle run_kappa(const RunConfig& cfg) {
  Outputs out(cfg);
  int n_max = cfg.get_int("n_max", 8);
  KappaTable table(n_max);
  out.csv("kappa.csv", kappa_table_csv(table));
  out.svg("kappa.svg", emit_svg_kappa(table));
  long long checked = 0, agree = 0, zero_no_one = 0, nonzero_no_one = 0;
  for (const auto& [j, pair] : table.rows()) {
    ++checked;
    if (j.min() == 1) {
      if (pair.first == pair.second) ++agree;
    } else {
      if (pair.first == 0)
        ++zero_no_one;
      else
        ++nonzero_no_one;
    }
  }
  return out.finish(cfg, {{"sets", checked},
                          {"closed_matches_recursive_with_1", agree},
                          {"recursive_zero_without_1", zero_no_one},
                          {"recursive_nonzero_without_1", nonzero_no_one}});
}

ReportBundle run_dilate_check(const RunConfig& cfg) {
  Outputs out(cfg);
  std::vector<int> dims = cfg.get_ints("dims", {1, 2, 3, 4});
  std::vector<int> degrees = cfg.get_ints("degrees", {1, 2, 4, 6});
  int trials = cfg.get_int("trials", 24);
  OperatorSampler sampler;
  std::vector<ResidualRow> rows;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(t));
    int dim = dims[static_cast<size_t>(t) % dims.size()];
    int degree = degrees[(static_cast<size_t>(t) / dims.size()) % degrees.size()];
    CMat tmat = sampler.contraction(rng, dim);
    FiniteUnitaryDilation d = dilate(tmat, degree);
    double uni = (d.block_unitary.adjoint() * d.block_unitary -
                  CMat::Identity(d.total_dim(), d.total_dim()))
                     .norm();
    rows.push_back({"dilation_unitarity", dim, degree, uni});
    rows.push_back({"power_dilation", dim, degree, d.power_residual(tmat)});

    std::vector<cplx> coeffs(static_cast<size_t>(degree) + 1);
    for (auto& c : coeffs) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    FunctionModel f = FunctionModel::analytic_poly(coeffs);
    CMat rmat = sampler.contraction(rng, dim);
    SemiSpectralDoi ss = semi_spectral_doi(f, tmat, rmat);
    rows.push_back({"ssdoi_vs_direct", dim, degree, ss.residual_vs_direct});
    SemiSpectralDoi ss2 = semi_spectral_doi(f, tmat, rmat, degree + 3);
    rows.push_back({"dilation_independence", dim, degree, (ss.result - ss2.result).norm()});
    if (degree >= 2) {
      double mc = segment_chain_residual(f, tmat, rmat, 2);
      rows.push_back({"segment_chain_m2", dim, degree, mc});
    }
    if (t == 0)
      write_text_file((out.dir / "dilation_example.json").string(),
                      matrix_to_json(d.block_unitary).dump(2) + "\n");
  }
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  out.csv("residuals.csv", residuals_csv(rows));
  return out.finish(cfg, {{"max_residual", worst}, {"rows", rows.size()}});
}

ReportBundle run_ratio_scan(const RunConfig& cfg, const std::string& default_tag) {
  Outputs out(cfg);
  std::string tag = cfg.get("tag", default_tag);
  std::string mode = cfg.get("mode", "ratios");

  if (mode == "vn") {
    SmoothCutoff cutoff;
    PeriodicSignal f = parse_periodic(cfg.get("function", "abs_sin_sqrt:2048"));
    ModulusOfContinuity omega = ModulusOfContinuity::from_id(cfg.get("omega", "power:0.5"));
    int m = cfg.get_int("m", 1);
    int n_min = cfg.get_int("n_min", 0);
    int n_max = cfg.get_int("n_max", 12);
    double sn = circle_grid_seminorm(f, omega, m);
    ExperimentRecord rec;
    rec.tag = "vn_ratio";
    rec.seed = cfg.seed;
    rec.function_id = cfg.get("function", "abs_sin_sqrt:2048");
    for (int n = n_min; n <= n_max; ++n) {
      TrialRow row;
      row.trial = n;
      row.dim = f.degree();
      row.delta = std::ldexp(1.0, -n);
      row.ratio = vp_error_ratio(f, omega, m, n, cutoff, sn);
      row.numerator = row.ratio;
      row.denominator = 1.0;
      rec.rows.push_back(row);
    }
    out.csv("vn_ratios.csv", record_to_csv(rec));
    out.svg("vn_ratios.svg", emit_svg(rec, PlotKind::RatioVsDelta));
    return out.finish(cfg, {{"max_ratio", rec.max_ratio()}, {"rows", rec.rows.size()}});
  }

  FunctionModel f = parse_function(cfg.get("function", "abs_power:0.5"));
  RatioParams params;
  params.alpha = cfg.get_double("alpha", 0.5);
  params.m = cfg.get_int("m", 1);
  params.omega = cfg.get("omega", "");
  params.dims = cfg.get_ints("dims", {2, 4, 8});
  params.deltas = cfg.get_doubles("deltas", {1e-3, 1e-2, 1e-1, 0.5});
  params.grid = parse_grid(cfg);
  OperatorSampler sampler;
  sampler.spectrum_halfwidth = cfg.get_double("cap", 1.0);
  int trials = cfg.get_int("trials", 400);
  ExperimentRecord rec = ratio_experiment(tag, f, params, sampler, trials, cfg.seed);
  out.csv("ratios.csv", record_to_csv(rec));
  out.svg("ratios.svg", emit_svg(rec, PlotKind::RatioVsDelta));
  nlohmann::json summary = record_summary_json(rec);
  int runs = cfg.get_int("runs", 0);
  if (runs > 0) {
    ExperimentRecord asc =
        ratio_ascent(tag, f, params, sampler, runs, cfg.get_int("iters", 60), cfg.seed);
    out.csv("ratios_ascent.csv", record_to_csv(asc));
    summary["ascent_max_ratio"] = asc.max_ratio();
  }
  ReportBundle b = out.finish(cfg, summary);
  b.exit_code = rec.violations ? 3 : 0;
  return b;
}

ReportBundle run_bks(const RunConfig& cfg) {
  Outputs out(cfg);
  double alpha = cfg.get_double("alpha", 0.5);
  std::vector<int> dims = cfg.get_ints("dims", {2, 4, 8});
  int trials = cfg.get_int("trials", 2000);
  OperatorSampler sampler;
  ExperimentRecord rec = bks_check(sampler, alpha, trials, dims, cfg.seed);
  out.csv("bks.csv", record_to_csv(rec));
  nlohmann::json summary = record_summary_json(rec);
  ReportBundle b = out.finish(cfg, summary);
  b.exit_code = rec.violations ? 3 : 0;
  return b;
}

ReportBundle run_omega_search(const RunConfig& cfg) {
  Outputs out(cfg);
  FunctionModel f = parse_function(cfg.get("function", "abs_power:0.5"));
  OmegaParams p;
  p.dim = cfg.get_int("dim", 4);
  p.restarts = cfg.get_int("restarts", 20);
  p.iters = cfg.get_int("iters", 200);
  p.cap = cfg.get_double("cap", 1.0);
  std::string tag = cfg.get("tag", "diff");
  p.tag = tag == "comm1"   ? OmegaTag::Comm1
          : tag == "comm2" ? OmegaTag::Comm2
          : tag == "comm3" ? OmegaTag::Comm3
                           : OmegaTag::Diff;
  std::vector<double> deltas = cfg.get_doubles("deltas", {0.05, 0.1, 0.2, 0.4});
  std::sort(deltas.begin(), deltas.end());

  ExperimentRecord rec;
  rec.tag = "omega_search:" + tag;
  rec.seed = cfg.seed;
  rec.function_id = f.id();

  // finite-rank rational registry: a from-below companion to the search
  Registry registry(f, deltas);
  registry.extend(cfg.get_int("budget", 256));

  nlohmann::json witnesses = nlohmann::json::array();
  std::vector<OmegaEstimate> warm;
  std::ostringstream curve;
  curve << "delta,tag,estimate,restarts\n";
  for (double d : deltas) {
    OmegaParams pd = p;
    pd.delta = d;
    OmegaEstimate est = omega_search(f, pd, cfg.seed, &warm);
    warm.push_back(est);
    curve << format_g17(d) << ',' << tag << ',' << format_g17(est.lower_bound) << ','
          << pd.restarts << '\n';
    TrialRow row;
    row.trial = static_cast<long long>(rec.rows.size());
    row.dim = p.dim;
    row.delta = d;
    row.numerator = est.lower_bound;
    row.denominator = d;
    row.ratio = est.lower_bound / d;
    rec.rows.push_back(row);
    nlohmann::json w{{"delta", d},
                     {"tag", tag},
                     {"estimate", est.lower_bound},
                     {"constraint", est.constraint_value},
                     {"a", matrix_to_json(est.a)}};
    if (est.second.size()) w["b"] = matrix_to_json(est.second);
    if (est.r.size()) w["r"] = matrix_to_json(est.r);
    witnesses.push_back(w);
  }
  std::string curve_path = (out.dir / "omega_curve.csv").string();
  write_text_file(curve_path, curve.str());
  out.bundle.csv_paths.push_back(curve_path);
  write_text_file((out.dir / "witnesses.json").string(), witnesses.dump(2) + "\n");
  std::ostringstream regcsv;
  regcsv << "delta,registry_max\n";
  for (size_t i = 0; i < deltas.size(); ++i)
    regcsv << format_g17(deltas[i]) << ',' << format_g17(registry.maxima()[i]) << '\n';
  out.csv("registry.csv", regcsv.str());
  out.svg("omega_curve.svg", emit_svg(rec, PlotKind::RatioVsDelta));
  return out.finish(cfg, {{"estimates", rec.rows.size()},
                          {"max_estimate", rec.rows.empty() ? 0.0 : rec.rows.back().numerator},
                          {"registry_entries", registry.entries()},
                          {"registry_maxima", registry.maxima()}});
}

ReportBundle run_commutator_scan(const RunConfig& cfg) {
  Outputs out(cfg);
  std::string mode = cfg.get("mode", "identities");
  if (mode == "abs") {
    std::vector<int> dims = cfg.get_ints("dims", {2, 4, 8, 12, 16});
    ExperimentRecord rec = abs_explorer(dims, cfg.get_int("budget", 24), cfg.seed);
    out.csv("abs_explorer.csv", record_to_csv(rec));
    return out.finish(cfg, record_summary_json(rec));
  }
  int trials = cfg.get_int("trials", 200);
  std::vector<int> dims = cfg.get_ints("dims", {2, 3, 4});
  double tau = cfg.get_double("tau", 0.5);
  OperatorSampler sampler;
  std::vector<ResidualRow> rows;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<uint64_t>(t));
    int dim = dims[static_cast<size_t>(t) % dims.size()];
    CMat a = sampler.hermitian(rng, dim);
    CMat b = sampler.hermitian(rng, dim);
    CMat r = sampler.ginibre(rng, dim);
    for (double resid : block_identity_checks(a, b, r))
      rows.push_back({"sr_block", dim, 0, resid});
    CMat rc = sampler.hermitian_direction(rng, dim);
    TauRotationBlock rot = tau_rotation_block(a, rc, tau);
    double uni = (rot.block_unitary.adjoint() * rot.block_unitary -
                  CMat::Identity(2 * dim, 2 * dim))
                     .norm();
    rows.push_back({"rotation_unitarity", dim, 0, uni});
  }
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  out.csv("residuals.csv", residuals_csv(rows));
  return out.finish(cfg, {{"max_residual", worst}, {"rows", rows.size()}});
}

ReportBundle run_zygmund(const RunConfig& cfg) {
  Outputs out(cfg);
  FunctionModel f = parse_function(cfg.get("function", "lacunary:12"));
  std::vector<double> deltas = cfg.get_doubles(
      "deltas", {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625});
  OmegaParams budget;
  budget.dim = cfg.get_int("dim", 4);
  budget.restarts = cfg.get_int("restarts", 8);
  budget.iters = cfg.get_int("iters", 80);
  budget.cap = cfg.get_double("cap", 3.0);
  ZygmundFit fit = zygmund_fit(f, deltas, budget, cfg.seed);
  OmegaParams doubled = budget;
  doubled.restarts *= 2;
  ZygmundFit fit2 = zygmund_fit(f, deltas, doubled, cfg.seed);
  bool stable = std::isfinite(fit.c_hat) && std::isfinite(fit2.c_hat) &&
                std::abs(fit2.c_hat - fit.c_hat) <= 0.10 * std::max(fit.c_hat, 1e-30);
  ExperimentRecord rec;
  rec.tag = "zygmund";
  rec.seed = cfg.seed;
  std::ostringstream csv;
  csv << "delta,estimate,bound\n";
  for (auto [d, est] : fit.curve) {
    csv << format_g17(d) << ',' << format_g17(est) << ',' << format_g17(d * std::log(2.0 / d))
        << '\n';
    TrialRow row;
    row.trial = static_cast<long long>(rec.rows.size());
    row.dim = budget.dim;
    row.delta = d;
    row.numerator = est;
    row.denominator = d * std::log(2.0 / d);
    row.ratio = est / row.denominator;
    rec.rows.push_back(row);
  }
  std::string p = (out.dir / "zygmund.csv").string();
  write_text_file(p, csv.str());
  out.bundle.csv_paths.push_back(p);
  out.svg("zygmund.svg", emit_svg(rec, PlotKind::RatioVsDelta));
  return out.finish(cfg, {{"c_hat", fit.c_hat},
                          {"c_hat_doubled_budget", fit2.c_hat},
                          {"stable", stable},
                          {"rows", rec.rows.size()}});
}

ReportBundle run_report(const RunConfig& cfg) {
  Outputs out(cfg);
  if (!cfg.has("in")) throw ConfigError("report: missing key 'in'");
  ExperimentRecord rec = record_from_csv(read_text_file(cfg.values.at("in")));
  out.svg("report_ratio.svg", emit_svg(rec, PlotKind::RatioVsDelta));
  bool multi = false;
  for (const TrialRow& r : rec.rows)
    if (r.numerator > 0.0 && r.delta > 0.0) multi = true;
  if (multi) out.svg("report_loglog.svg", emit_svg(rec, PlotKind::LoglogSlope));
  return out.finish(cfg, record_summary_json(rec));
}

}  // namespace

ReportBundle run(const RunConfig& config) {
  if (!config.has("seed")) throw ConfigError("missing mandatory key 'seed'");
  const std::string& e = config.experiment;
  if (e == "decompose") return run_decompose(config);
  if (e == "seminorm") return run_seminorm(config);
  if (e == "verify-doi") return run_verify_doi(config);
  if (e == "verify-moi") return run_verify_moi(config);
  if (e == "verify-gen") return run_verify_binomial_expansion(config);
  if (e == "kappa") return run_kappa(config);
  if (e == "dilate-check") return run_dilate_check(config);
  if (e == "holder-scan") return run_ratio_scan(config, "saH");
  if (e == "bks") return run_bks(config);
  if (e == "omega-scan") return run_ratio_scan(config, "omsa");
  if (e == "omega-search") return run_omega_search(config);
  if (e == "commutator-scan") return run_commutator_scan(config);
  if (e == "zygmund-fit") return run_zygmund(config);
  if (e == "report") return run_report(config);
  throw ConfigError("unknown experiment '" + e + "'");
}

}  // namespace ohz
