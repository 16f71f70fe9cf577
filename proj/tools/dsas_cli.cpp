#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "harness/harness.hpp"

namespace {

using dsas::harness::ExperimentConfig;

struct Flags {
  ExperimentConfig config;
  std::string seeds = "42";
  std::string optimizers = "improved-woa,pso,gwo";
  std::string models;
  std::string revisions;
  std::string parity = "vehicle-evals";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-s,--scenario", f.config.scenario, "Scenario file (JSON)")->required();
  cmd->add_option("--models", f.models, "Model registry file; defaults to $DSAS_MODEL_REGISTRY or built-ins");
  cmd->add_option("-o,--out", f.config.output_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seeds", f.seeds, "Seeds, e.g. 42 or 1-20 or 1,5,9")->capture_default_str();
  cmd->add_option("--k-max", f.config.k_max, "Rounds / iterations")->capture_default_str();
  cmd->add_option("--whales", f.config.whales, "Whales per vehicle (M)")->capture_default_str();
  cmd->add_option("--resolution", f.config.resolution, "Oracle grid resolution in c")->capture_default_str();
  cmd->add_option("-j,--jobs", f.config.jobs, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-speed advisory: distributed whale optimisation over per-lane consensus speeds"};
  app.require_subcommand(1);
  Flags f;

  auto* run = app.add_subcommand("run", "Run the distributed protocol and write result, trace and message log");
  auto* sweep = app.add_subcommand("sweep-ratio", "Oracle CO2 saving curve over lane speed ratios");
  auto* compare = app.add_subcommand("compare", "Convergence race: improved WOA vs PSO vs GWO");
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum over the consensus variable");
  auto* supervise = app.add_subcommand("supervise", "Re-optimise on every scenario revision");
  for (auto* cmd : {run, sweep, compare, oracle, supervise}) add_common(cmd, f);

  sweep->add_option("--ratios", f.config.ratios, "start:stop:step or comma list");
  sweep->add_flag("--with-dsas", f.config.with_dsas, "Add a column with protocol results (first seed)");
  compare->add_option("--optimizers", f.optimizers, "Subset of improved-woa,pso,gwo")->capture_default_str();
  compare->add_option("--tolerance", f.config.tolerance, "Relative gap to the oracle optimum")->capture_default_str();
  compare->add_option("--penalty", f.config.penalty, "Death penalty for baselines")->capture_default_str();
  compare->add_option("--parity", f.parity, "Baseline swarm sizing")
      ->check(CLI::IsMember({"vehicle-evals", "fitness-calls"}))
      ->capture_default_str();
  supervise->add_option("--revisions", f.revisions, "Revision file (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dsas::harness::kConfigError;
  }

  try {
    f.config.seeds = dsas::harness::parse_seed_list(f.seeds);
    f.config.optimizers.clear();
    std::stringstream ss(f.optimizers);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) f.config.optimizers.push_back(item);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return dsas::harness::kConfigError;
  }
  if (!f.models.empty()) f.config.models = f.models;
  if (!f.revisions.empty()) f.config.revisions = f.revisions;
  f.config.parity = f.parity == "fitness-calls" ? dsas::harness::Parity::FitnessCalls
                                                : dsas::harness::Parity::VehicleEvaluations;

  if (*run) return dsas::harness::cmd_run(f.config, std::cerr);
  if (*sweep) return dsas::harness::cmd_sweep_ratio(f.config, std::cerr);
  if (*compare) return dsas::harness::cmd_compare(f.config, std::cerr);
  if (*oracle) return dsas::harness::cmd_oracle(f.config, std::cerr);
  return dsas::harness::cmd_supervise(f.config, std::cerr);
}
