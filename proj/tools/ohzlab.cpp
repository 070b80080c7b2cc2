// ohzlab: experiment runner for the operator Holder-Zygmund laboratory.
//
// Every subcommand reads an optional `key = value` config file, applies
// --seed / --out / --set overrides and writes CSV/JSON/SVG artifacts into the
// output directory. Identical config + seed reproduces artifacts byte for
// byte. Exit codes: 0 success, 2 config error, 3 invariant violation.

#include <CLI11.hpp>
#include <iostream>

#include "ohz/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"operator Holder-Zygmund laboratory"};
  app.require_subcommand(1);

  struct SubState {
    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> sets;
  };
  std::map<std::string, SubState> states;

  for (const std::string& name : ohz::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the '" + name + "' experiment");
    SubState& st = states[name];
    sub->add_option("--config", st.config_path, "key = value config file");
    sub->add_option("--out", st.out_dir, "output directory");
    auto* seed_opt = sub->add_option("--seed", st.seed, "master seed (overrides config)");
    sub->add_option("--set", st.sets, "extra key=value pairs")->take_all();
    sub->callback([&app, name, &states, seed_opt] {
      SubState& s = states[name];
      s.seed_set = seed_opt->count() > 0;
      (void)app;
    });
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  const SubState& st = states[name];
  try {
    ohz::RunConfig cfg;
    if (!st.config_path.empty()) cfg = ohz::RunConfig::parse_file(st.config_path);
    cfg.experiment = name;
    for (const std::string& kv : st.sets) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ohz::ConfigError("--set expects key=value, got " + kv);
      ohz::RunConfig patch = ohz::RunConfig::parse(kv.substr(0, eq) + " = " + kv.substr(eq + 1));
      for (const auto& [k, v] : patch.values) cfg.values[k] = v;
    }
    if (st.seed_set) {
      cfg.seed = st.seed;
      cfg.values["seed"] = std::to_string(st.seed);
    }
    if (!st.out_dir.empty()) {
      cfg.out_dir = st.out_dir;
      cfg.values["out"] = st.out_dir;
    }
    if (cfg.values.count("seed")) cfg.seed = std::stoull(cfg.values.at("seed"));
    if (cfg.values.count("out")) cfg.out_dir = cfg.values.at("out");

    ohz::ReportBundle bundle = ohz::run(cfg);
    std::cout << bundle.summary.dump(2) << "\n";
    return bundle.exit_code;
  } catch (const ohz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ohz::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
