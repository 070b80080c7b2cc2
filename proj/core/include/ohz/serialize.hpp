#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ohz/experiments.hpp"
#include "ohz/index_sets.hpp"
#include "ohz/littlewood_paley.hpp"

namespace ohz {

/// 17-significant-digit decimal formatting (round-trips doubles exactly).
std::string format_g17(double v);

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

nlohmann::json seminorm_to_json(const SeminormReport& r);
nlohmann::json record_summary_json(const ExperimentRecord& r);

/// CSV with header tag,dim,seed,delta,numerator,denominator,ratio.
std::string record_to_csv(const ExperimentRecord& r);
/// Parses rows written by record_to_csv (summary fields inferred).
ExperimentRecord record_from_csv(const std::string& csv);

std::string kappa_table_csv(const KappaTable& t);
std::string kernel_table_csv(const std::vector<KernelTableRow>& rows);

struct ResidualRow {
  std::string check;
  int dim = 0;
  int degree = 0;
  double residual = 0.0;
};
std::string residuals_csv(const std::vector<ResidualRow>& rows);

enum class PlotKind { RatioVsDelta, LoglogSlope, KappaTable };
/// Well-formed standalone SVG document; axes annotated with tag, dims, seed.
/// Single-point records get a marker and no fit line; log-log sweeps carry a
/// fitted line whose slope comes from exponent_fit.
std::string emit_svg(const ExperimentRecord& r, PlotKind kind);
std::string emit_svg_kappa(const KappaTable& t);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ohz
