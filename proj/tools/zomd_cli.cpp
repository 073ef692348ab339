// zomd command-line harness: single runs, parameter sweeps and the
// Monte-Carlo verification suite, driven by a declarative JSON config.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zomd/experiment.hpp"

namespace {

using zomd::bench::ExperimentConfig;

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  if (values.empty())
    throw std::invalid_argument("expected a comma-separated list of values");
  return values;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  for (double v : parse_value_list(csv))
    seeds.push_back(static_cast<std::uint64_t>(v));
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zomd: two-point zeroth-order mirror descent benchmark"};
  app.require_subcommand(1);

  std::string config_path, seeds_csv, out_dir, axis, values_csv;
  std::vector<std::string> overrides;
  int workers = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--set", overrides,
                    "override a config key, e.g. --set problem.n=16");
    sub->add_option("--seeds", seeds_csv, "comma-separated seed list");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "max parallel seed runs");
  };

  CLI::App* cmd_run = app.add_subcommand(
      "run", "execute one configuration, one trace CSV per seed");
  add_common(cmd_run);
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "sweep one axis, emit a summary CSV");
  add_common(cmd_sweep);
  cmd_sweep->add_option("--axis", axis, "sweep axis: N | delta | n")
      ->required();
  cmd_sweep->add_option("--values", values_csv, "comma-separated axis values")
      ->required();
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "run the Monte-Carlo verification suite");
  add_common(cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    nlohmann::json raw = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw std::invalid_argument("cannot open config file '" + config_path +
                                    "'");
      in >> raw;
    }
    for (const std::string& kv : overrides)
      zomd::bench::apply_override(raw, kv);

    ExperimentConfig cfg = zomd::bench::config_from_json(raw);
    if (!seeds_csv.empty()) cfg.seeds = parse_seed_list(seeds_csv);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;

    if (cmd_run->parsed()) return zomd::bench::cmd_run(cfg, std::cerr);
    if (cmd_sweep->parsed())
      return zomd::bench::cmd_sweep(cfg, axis, parse_value_list(values_csv),
                                    std::cerr);
    return zomd::bench::cmd_verify(cfg, std::cerr);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
