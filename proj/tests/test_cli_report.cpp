#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ohz/runner.hpp"

using namespace ohz;

namespace {

// strict-enough XML well-formedness: prolog, balanced tags, quoted attributes,
// no stray '<' or '&'
bool xml_well_formed(const std::string& doc) {
  size_t i = 0;
  auto fail = [](const char*) { return false; };
  if (doc.rfind("<?xml", 0) != 0) return fail("prolog");
  i = doc.find("?>");
  if (i == std::string::npos) return fail("prolog end");
  i += 2;
  std::vector<std::string> stack;
  while (i < doc.size()) {
    char c = doc[i];
    if (c == '<') {
      size_t close = doc.find('>', i);
      if (close == std::string::npos) return fail("unclosed tag");
      std::string tag = doc.substr(i + 1, close - i - 1);
      if (tag.empty()) return fail("empty tag");
      bool closing = tag[0] == '/';
      bool self_closing = tag.back() == '/';
      std::string body = closing ? tag.substr(1) : (self_closing ? tag.substr(0, tag.size() - 1) : tag);
      std::string name = body.substr(0, body.find_first_of(" \t\n"));
      if (name.empty()) return fail("no name");
      // attribute values must be quoted: count '=' and '"' pairing
      size_t quotes = 0;
      for (char b : body)
        if (b == '"') ++quotes;
      if (quotes % 2) return fail("unbalanced quotes");
      if (closing) {
        if (stack.empty() || stack.back() != name) return fail("mismatch");
        stack.pop_back();
      } else if (!self_closing) {
        stack.push_back(name);
      }
      i = close + 1;
    } else if (c == '&') {
      static const char* entities[] = {"&amp;", "&lt;", "&gt;", "&quot;", "&apos;"};
      bool ok = false;
      for (const char* e : entities)
        if (doc.compare(i, std::strlen(e), e) == 0) ok = true;
      if (!ok) return fail("raw ampersand");
      ++i;
    } else {
      ++i;
    }
  }
  return stack.empty();
}

RunConfig base_config(const std::string& experiment, const std::string& out) {
  RunConfig cfg = RunConfig::parse("seed = 7\n");
  cfg.experiment = experiment;
  cfg.out_dir = out;
  return cfg;
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t count = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig cfg = RunConfig::parse("# comment\nseed = 42\ntrials = 10\n\ndims = 2,4\n");
  CHECK(cfg.seed == 42);
  CHECK(cfg.get_int("trials", 0) == 10);
  CHECK(cfg.get_ints("dims", {}) == std::vector<int>{2, 4});

  CHECK_THROWS_WITH_AS(RunConfig::parse("dimms = 2\n"), "unknown key 'dimms'", ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("no equals sign"), ConfigError);
}

TEST_CASE("seed is mandatory") {
  RunConfig cfg;
  cfg.experiment = "kappa";
  cfg.out_dir = "/tmp/ohz_test_seedless";
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("unknown experiment") {
  RunConfig cfg = base_config("frobnicate", "/tmp/ohz_test_unknown");
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("determinism: identical config and seed give identical bytes") {
  RunConfig cfg = base_config("bks", "/tmp/ohz_det_a");
  cfg.values["trials"] = "60";
  cfg.values["dims"] = "2,3";
  ReportBundle b1 = run(cfg);
  std::string csv1 = read_text_file(b1.csv_paths.at(0));
  cfg.out_dir = "/tmp/ohz_det_b";
  ReportBundle b2 = run(cfg);
  std::string csv2 = read_text_file(b2.csv_paths.at(0));
  CHECK(csv1 == csv2);
  CHECK(!csv1.empty());
  CHECK(b1.exit_code == 0);
}

TEST_CASE("csv round trip") {
  RunConfig cfg = base_config("bks", "/tmp/ohz_csv_rt");
  cfg.values["trials"] = "25";
  ReportBundle b = run(cfg);
  std::string text = read_text_file(b.csv_paths.at(0));
  ExperimentRecord parsed = record_from_csv(text);
  CHECK(parsed.rows.size() == 25);
  CHECK(parsed.tag == "bks");
  CHECK(parsed.seed == 7);
  // 17 significant digits round-trip doubles exactly
  ExperimentRecord reparsed = record_from_csv(record_to_csv(parsed));
  for (size_t i = 0; i < parsed.rows.size(); ++i) {
    CHECK(reparsed.rows[i].ratio == parsed.rows[i].ratio);
    CHECK(reparsed.rows[i].numerator == parsed.rows[i].numerator);
  }
  // summary totals match the CSV aggregates
  CHECK(b.summary.at("rows").get<size_t>() == parsed.rows.size());
  CHECK(b.summary.at("max_ratio").get<double>() == doctest::Approx(parsed.max_ratio()));
}

TEST_CASE("g17 formatting round trips") {
  for (double v : {1.0 / 3.0, 2.5e-17, -123456.789, 0.1}) {
    CHECK(std::stod(format_g17(v)) == v);
  }
}

TEST_CASE("matrix json round trip") {
  CMat m(2, 3);
  m << cplx(1, 2), cplx(0, -1), 3.0, 4.5, cplx(-2, 0.5), 0.0;
  CMat back = matrix_from_json(matrix_to_json(m));
  CHECK((m - back).norm() == 0.0);
}

TEST_CASE("svg: empty and single-point records") {
  ExperimentRecord empty;
  CHECK_THROWS_AS(emit_svg(empty, PlotKind::RatioVsDelta), DomainError);

  ExperimentRecord single;
  single.tag = "single";
  TrialRow row;
  row.delta = 0.1;
  row.numerator = 0.5;
  row.ratio = 0.5;
  single.rows.push_back(row);
  std::string svg = emit_svg(single, PlotKind::LoglogSlope);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "<circle") == 1);
  CHECK(count_occurrences(svg, "<line") == 0);  // no fit line for one point
}

TEST_CASE("svg: fitted slope annotation matches exponent_fit") {
  ExperimentRecord sweep;
  sweep.tag = "sweep";
  for (int i = 0; i < 8; ++i) {
    TrialRow row;
    row.delta = std::pow(10.0, -4.0 + 0.5 * i);
    row.numerator = 3.0 * std::pow(row.delta, 0.7);
    row.ratio = row.numerator / row.delta;
    sweep.rows.push_back(row);
  }
  std::string svg = emit_svg(sweep, PlotKind::LoglogSlope);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "<line") == 1);
  ExponentFit fit = exponent_fit(sweep);
  CHECK(svg.find("slope=" + format_g17(fit.slope)) != std::string::npos);
}

TEST_CASE("runner: verify-gen summary residual") {
  RunConfig cfg = base_config("verify-gen", "/tmp/ohz_rgen");
  cfg.values["N"] = "3";
  cfg.values["trials"] = "4";
  cfg.values["dim"] = "2";
  ReportBundle b = run(cfg);
  CHECK(b.summary.at("max_residual").get<double>() <= 1e-9);
}

TEST_CASE("runner: decompose emits well-formed artifacts") {
  RunConfig cfg = base_config("decompose", "/tmp/ohz_dec");
  ReportBundle b = run(cfg);
  CHECK(b.summary.at("reconstruct_residual").get<double>() <= 1e-12);
  for (const std::string& p : b.svg_paths) CHECK(xml_well_formed(read_text_file(p)));
}

TEST_CASE("runner: every svg artifact is well-formed xml") {
  RunConfig cfg = base_config("holder-scan", "/tmp/ohz_hs");
  cfg.values["trials"] = "12";
  cfg.values["dims"] = "2";
  cfg.values["deltas"] = "0.01,0.1";
  ReportBundle b = run(cfg);
  for (const std::string& p : b.svg_paths) CHECK(xml_well_formed(read_text_file(p)));
  CHECK(b.summary.at("max_ratio").get<double>() > 0.0);
}

TEST_CASE("runner: report subcommand reprocesses a csv") {
  RunConfig cfg = base_config("holder-scan", "/tmp/ohz_rep_in");
  cfg.values["trials"] = "10";
  cfg.values["dims"] = "2";
  ReportBundle b = run(cfg);

  RunConfig rep = base_config("report", "/tmp/ohz_rep_out");
  rep.values["in"] = b.csv_paths.at(0);
  ReportBundle rb = run(rep);
  CHECK(rb.summary.at("rows").get<size_t>() == 10);
  for (const std::string& p : rb.svg_paths) CHECK(xml_well_formed(read_text_file(p)));
}

TEST_CASE("runner: bks violation exit code contract") {
  RunConfig cfg = base_config("bks", "/tmp/ohz_bks_ok");
  cfg.values["trials"] = "40";
  ReportBundle b = run(cfg);
  CHECK(b.exit_code == 0);
  CHECK(b.summary.at("violations").get<long long>() == 0);
}
