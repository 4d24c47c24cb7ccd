#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/harness.hpp"

// Command-line front end for the experiment harness. Each subcommand runs
// one experiment (or `all` runs every one), prints the report rows, writes
// JSON/CSV reports under the output directory, and exits nonzero if any
// checked row failed.

namespace {

using beltrami::ExperimentConfig;
using beltrami::Report;

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw beltrami::IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw beltrami::ConfigError("config: " + path + " is not valid json (" +
                                e.what() + ")");
  }
  return ExperimentConfig::from_json(j);
}

void print_report(const Report& rep) {
  std::printf("== %s ==\n", rep.experiment.c_str());
  for (const auto& row : rep.checks) {
    const char* mark = row.bound == 0.0 && row.pass ? "info" :
                       (row.pass ? "pass" : "FAIL");
    std::printf("  [%s] %-72s  value %.6g", mark, row.name.c_str(),
                row.value);
    if (row.bound != 0.0) std::printf("  (bound %.6g)", row.bound);
    if (!row.detail.empty()) std::printf("  -- %s", row.detail.c_str());
    std::printf("\n");
  }
  std::printf("  %zu rows, %s\n", rep.checks.size(),
              rep.all_pass() ? "all pass" : "FAILURES PRESENT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral laboratory for the planar Beltrami equation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int grid_n = 0;
  bool parallel = false;
  bool has_seed = false, has_grid = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory for reports");
  app.add_option("--seed", seed, "random seed override")
      ->each([&](const std::string&) { has_seed = true; });
  app.add_option("--grid", grid_n, "grid size override (power of two)")
      ->each([&](const std::string&) { has_grid = true; });
  app.add_flag("--parallel", parallel,
               "run family members on separate threads");

  const std::map<std::string, std::function<Report(const ExperimentConfig&)>>
      runners = {{"identity", beltrami::run_identity_suite},
                 {"counterexample", beltrami::run_counterexample},
                 {"resolvent", beltrami::run_resolvent_growth},
                 {"caccioppoli", beltrami::run_caccioppoli},
                 {"weights", beltrami::run_weight_scaling},
                 {"domains", beltrami::run_domain_suite}};
  const std::vector<std::string> order = {"identity",    "counterexample",
                                          "resolvent",   "caccioppoli",
                                          "weights",     "domains"};

  for (const auto& name : order)
    app.add_subcommand(name, "run the " + name + " experiment");
  app.add_subcommand("all", "run every experiment in order");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config = load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (has_seed) config.seed = seed;
    if (has_grid) config.grid_n = grid_n;
    config.parallel = parallel || config.parallel;
    config.validate();

    std::vector<std::string> selected;
    for (const auto* sub : app.get_subcommands()) {
      if (sub->get_name() == "all")
        selected = order;
      else
        selected.push_back(sub->get_name());
    }

    bool ok = true;
    for (const auto& name : selected) {
      Report rep = runners.at(name)(config);
      print_report(rep);
      beltrami::emit_report(rep, config.out_dir);
      ok = ok && rep.all_pass();
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
