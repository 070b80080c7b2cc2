#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ohz/serialize.hpp"

namespace ohz {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-based `key = value` configuration. Keys must belong to the documented
/// registry (see kConfigKeys in runner.cpp); the seed is mandatory.
struct RunConfig {
  std::string experiment;
  uint64_t seed = 0;
  std::string out_dir = ".";
  std::map<std::string, std::string> values;

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<int> get_ints(const std::string& key, std::vector<int> fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
};

struct ReportBundle {
  std::vector<std::string> csv_paths;
  std::vector<std::string> svg_paths;
  std::string json_path;
  nlohmann::json summary;
  int exit_code = 0;  // 0 ok, 3 invariant violation
};

/// Dispatches the named experiment; identical config + seed yields
/// byte-identical CSV artifacts.
ReportBundle run(const RunConfig& config);

/// The documented experiment names (CLI subcommands).
const std::vector<std::string>& experiment_names();

}  // namespace ohz
