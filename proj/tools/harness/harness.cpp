#include "harness/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dsas/baselines.hpp"
#include "dsas/dsas.hpp"
#include "dsas/emission_model.hpp"
#include "dsas/error.hpp"
#include "dsas/oracle.hpp"
#include "dsas/scenario_io.hpp"

namespace dsas::harness {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

// Maps the error hierarchy onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasibleScenario& e) {
    err << "infeasible scenario: " << e.what() << '\n';
    return kInfeasible;
  } catch (const OutOfFeasibleRange& e) {
    err << "infeasible scenario: " << e.what() << '\n';
    return kInfeasible;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kEvaluationError;
  } catch (const SpeedOutOfModelRange& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kEvaluationError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

std::string params_text(const ExperimentConfig& c, std::string_view command) {
  std::ostringstream s;
  s << command << "|k_max=" << c.k_max << "|whales=" << c.whales << "|ratios=" << c.ratios
    << "|resolution=" << num(c.resolution) << "|with_dsas=" << c.with_dsas << "|tolerance=" << num(c.tolerance)
    << "|parity=" << static_cast<int>(c.parity) << "|penalty=" << num(c.penalty) << "|seeds=";
  for (auto seed : c.seeds) s << seed << ',';
  s << "|optimizers=";
  for (const auto& o : c.optimizers) s << o << ',';
  return s.str();
}

std::string config_digest(const Workspace& ws, const ExperimentConfig& c, std::string_view command,
                          std::string_view extra = {}) {
  return digest(ws.source_text + "\n" + params_text(c, command) + "\n" + std::string(extra));
}

std::string trace_csv(const RunRecord& record, std::string_view digest_hex) {
  std::ostringstream out;
  out << "# schema: dsas-run-record v1; algorithm: " << record.algorithm << "; seed: " << record.seed
      << "; digest: " << digest_hex << '\n';
  out << "iteration,best_fitness_gpkm,evaluations,bounds_binding\n";
  for (const auto& row : record.rows) {
    out << row.iteration << ',' << num(row.best_fitness) << ',' << row.evaluations << ','
        << (row.bounds_binding ? 1 : 0) << '\n';
  }
  return out.str();
}

ordered_json result_json(const Scenario& scenario, const DsasResult& result, std::string_view digest_hex) {
  ordered_json j;
  j["schema"] = "dsas-result v1";
  j["config_digest"] = digest_hex;
  j["scenario"] = scenario.name;
  j["seed"] = result.seed;
  j["rounds"] = result.rounds;
  j["aggregate_gpkm"] = result.aggregate_gpkm;
  ordered_json lanes = ordered_json::array();
  for (const auto& [lane, speed] : result.lane_speed) lanes.push_back({{"lane", lane}, {"speed_kmh", speed}});
  j["lane_speeds"] = lanes;
  j["speeds_kmh"] = result.speeds;
  return j;
}

std::vector<DsasResult> run_seeds(const Workspace& ws, const ExperimentConfig& config) {
  std::vector<DsasResult> results(config.seeds.size());
  parallel_for(config.seeds.size(), config.jobs, [&](std::size_t k) {
    DsasConfig dc;
    dc.whales = config.whales;
    dc.max_rounds = config.k_max;
    dc.seed = config.seeds[k];
    results[k] = run(ws.scenario, ws.registry, dc);
  });
  return results;
}

void require_seeds(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw ConfigError("at least one seed is required");
}

}  // namespace

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Workspace load_workspace(const ExperimentConfig& config) {
  Workspace ws;
  std::string registry_text;
  if (config.models) {
    registry_text = read_text_file(*config.models);
    ws.registry = load_model_registry(registry_text);
  } else if (const char* env = std::getenv(kModelRegistryEnv); env != nullptr && *env != '\0') {
    registry_text = read_text_file(env);
    ws.registry = load_model_registry(registry_text);
  } else {
    registry_text = std::string(default_model_registry_json());
    ws.registry = default_model_registry();
  }
  const std::string scenario_text = read_text_file(config.scenario);
  auto file = parse_scenario(scenario_text);
  for (auto& model : file.inline_models) ws.registry.add(std::move(model));
  ws.scenario = std::move(file.scenario);
  ws.registry.resolve(ws.scenario);
  ws.source_text = scenario_text + "\n" + registry_text;
  return ws;
}

std::vector<double> parse_ratio_grid(std::string_view text) {
  std::vector<double> out;
  const std::string s(text);
  auto to_double = [](const std::string& item) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw ConfigError("bad number '" + item + "' in ratio grid");
      return v;
    } catch (const std::logic_error&) {
      throw ConfigError("bad number '" + item + "' in ratio grid");
    }
  };
  if (s.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(to_double(item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw ConfigError("ratio grid must be start:stop:step with step > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) {
      out.push_back(std::round((parts[0] + static_cast<double>(k) * parts[2]) * 1e9) / 1e9);
    }
  } else {
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item));
  }
  if (out.empty()) throw ConfigError("empty ratio grid");
  for (double r : out) {
    if (!(r > 0.0)) throw ConfigError("ratios must be positive");
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss{std::string(text)};
  try {
    for (std::string item; std::getline(ss, item, ',');) {
      if (item.empty()) continue;
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw ConfigError("descending seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      }
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad seed list '" + std::string(text) + "'");
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

std::size_t baseline_swarm_size(const Scenario& scenario, std::size_t whales, Parity parity) {
  return parity == Parity::VehicleEvaluations ? whales : whales * scenario.size();
}

std::vector<RaceTrace> race(const Scenario& scenario, const ModelRegistry& registry, const RaceOptions& options) {
  for (const auto& name : options.optimizers) {
    if (name != "improved-woa" && name != "pso" && name != "gwo") throw ConfigError("unknown optimizer '" + name + "'");
  }
  const std::size_t n_seeds = options.seeds.size();
  std::vector<RaceTrace> traces(options.optimizers.size() * n_seeds);
  const auto box = baselines::speed_box(scenario);
  auto penalty = baselines::PenaltyConfig::for_scenario(scenario);
  penalty.penalty_value = options.penalty;
  const auto objective = baselines::penalized_objective(scenario, registry, penalty);
  const auto swarm = baseline_swarm_size(scenario, options.whales, options.parity);
  const auto n = static_cast<std::uint64_t>(scenario.size());

  parallel_for(traces.size(), options.jobs, [&](std::size_t job) {
    const auto& name = options.optimizers[job / n_seeds];
    const auto seed = options.seeds[job % n_seeds];
    RaceTrace& trace = traces[job];
    trace.algorithm = name;
    trace.seed = seed;
    if (name == "improved-woa") {
      DsasConfig dc;
      dc.whales = options.whales;
      dc.max_rounds = options.k_max;
      dc.seed = seed;
      trace.swarm_size = options.whales;
      trace.record = run(scenario, registry, dc).record;
      return;
    }
    OptimizerResult result;
    if (name == "pso") {
      baselines::PsoConfig pc;
      pc.swarm_size = swarm;
      pc.max_iter = options.k_max;
      pc.seed = seed;
      pc.bounds = box;
      result = baselines::pso_minimize(objective, pc);
    } else {
      baselines::GwoConfig gc;
      gc.pack_size = swarm;
      gc.max_iter = options.k_max;
      gc.seed = seed;
      gc.bounds = box;
      result = baselines::gwo_minimize(objective, gc);
    }
    for (auto& row : result.record.rows) row.evaluations *= n;
    trace.swarm_size = swarm;
    trace.record = std::move(result.record);
  });
  return traces;
}

std::optional<double> median_iteration(std::vector<std::optional<std::size_t>> reach) {
  if (reach.empty()) return std::nullopt;
  std::sort(reach.begin(), reach.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  const std::size_t m = reach.size();
  if (m % 2 == 1) {
    if (!reach[m / 2]) return std::nullopt;
    return static_cast<double>(*reach[m / 2]);
  }
  const auto& lo = reach[m / 2 - 1];
  const auto& hi = reach[m / 2];
  if (!lo || !hi) return std::nullopt;
  return 0.5 * static_cast<double>(*lo + *hi);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

int cmd_run(const ExperimentConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    require_seeds(config);
    const auto ws = load_workspace(config);
    feasible_interval(ws.scenario);
    const auto results = run_seeds(ws, config);
    const auto hex = config_digest(ws, config, "run");

    fs::create_directories(config.output_dir);
    for (const auto& result : results) {
      const std::string stem = "run_seed" + std::to_string(result.seed);
      write_file(config.output_dir / (stem + "_result.json"), result_json(ws.scenario, result, hex).dump(2) + "\n");
      write_file(config.output_dir / (stem + "_trace.csv"), trace_csv(result.record, hex));
      std::ostringstream log;
      write_message_log(log, result.log);
      write_file(config.output_dir / (stem + "_messages.ndjson"), log.str());
    }
    return int{kOk};
  });
}

int cmd_oracle(const ExperimentConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    const auto ws = load_workspace(config);
    const auto best = oracle::grid_search(ws.scenario, ws.registry, config.resolution);
    const auto hex = config_digest(ws, config, "oracle");
    ordered_json j;
    j["schema"] = "dsas-oracle v1";
    j["config_digest"] = hex;
    j["scenario"] = ws.scenario.name;
    j["c_star"] = best.c_star;
    j["total_emission_gpkm"] = best.total_emission;
    j["grid_resolution"] = best.grid_resolution;
    ordered_json lanes = ordered_json::array();
    for (const int lane : lane_labels(ws.scenario)) {
      for (std::size_t i = 0; i < ws.scenario.size(); ++i) {
        if (ws.scenario.vehicles[i].lane == lane) {
          lanes.push_back({{"lane", lane}, {"speed_kmh", best.speeds[i]}});
          break;
        }
      }
    }
    j["lane_speeds"] = lanes;
    j["speeds_kmh"] = best.speeds;
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "oracle.json", j.dump(2) + "\n");
    return int{kOk};
  });
}

int cmd_sweep_ratio(const ExperimentConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    const auto ws = load_workspace(config);
    const auto lanes = lane_labels(ws.scenario);
    std::string grid_text = config.ratios;
    if (grid_text.empty()) grid_text = lanes.size() == 3 ? "1:1.41:0.01" : "1:2:0.05";
    const auto ratios = parse_ratio_grid(grid_text);
    const auto rows = oracle::saving_curve(ws.scenario, ws.registry, ratios, config.resolution);

    std::vector<std::optional<double>> dsas_column(rows.size());
    if (config.with_dsas) {
      require_seeds(config);
      parallel_for(rows.size(), config.jobs, [&](std::size_t k) {
        if (!rows[k].feasible) return;
        DsasConfig dc;
        dc.whales = config.whales;
        dc.max_rounds = config.k_max;
        dc.seed = config.seeds.front();
        dsas_column[k] = run(with_lane_ratio(ws.scenario, rows[k].ratio), ws.registry, dc).aggregate_gpkm;
      });
    }

    const auto hex = config_digest(ws, config, "sweep-ratio", grid_text);
    std::ostringstream out;
    out << "# schema: dsas-saving-curve v1; digest: " << hex << "; lanes: " << lanes.size() << '\n';
    out << "ratio,with_isa_gpkm,baseline_gpkm,saving_gpkm,c_star";
    for (const int lane : lanes) out << ",lane" << lane << "_kmh";
    out << ",status";
    if (config.with_dsas) out << ",dsas_gpkm";
    out << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& row = rows[k];
      out << num(row.ratio);
      if (row.feasible) {
        out << ',' << num(row.with_isa) << ',' << num(row.baseline) << ',' << num(row.saving) << ','
            << num(row.c_star);
        for (double s : row.lane_speeds) out << ',' << num(s);
        out << ",ok";
      } else {
        out << ",,,,";
        for (std::size_t l = 0; l < lanes.size(); ++l) out << ',';
        out << ",infeasible";
      }
      if (config.with_dsas) out << ',' << (dsas_column[k] ? num(*dsas_column[k]) : std::string{});
      out << '\n';
    }
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "saving_curve.csv", out.str());
    return int{kOk};
  });
}

int cmd_compare(const ExperimentConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    require_seeds(config);
    const auto ws = load_workspace(config);
    const auto best = oracle::grid_search(ws.scenario, ws.registry, config.resolution);
    const double threshold = best.total_emission * (1.0 + config.tolerance);

    RaceOptions options;
    options.optimizers = config.optimizers;
    options.seeds = config.seeds;
    options.k_max = config.k_max;
    options.whales = config.whales;
    options.parity = config.parity;
    options.penalty = config.penalty;
    options.jobs = config.jobs;
    const auto traces = race(ws.scenario, ws.registry, options);
    const auto hex = config_digest(ws, config, "compare");

    fs::create_directories(config.output_dir);
    for (const auto& t : traces) {
      write_file(config.output_dir / ("compare_" + t.algorithm + "_seed" + std::to_string(t.seed) + ".csv"),
                 trace_csv(t.record, hex));
    }

    std::ostringstream out;
    out << "# schema: dsas-compare-summary v1; digest: " << hex << "; optimum_gpkm: " << num(best.total_emission)
        << "; tolerance: " << num(config.tolerance) << '\n';
    out << "algorithm,swarm_size,vehicle_evals_per_iter,runs,reached_runs,median_iteration_to_tolerance,"
           "median_best_at_10,median_final\n";
    for (const auto& name : config.optimizers) {
      std::vector<std::optional<std::size_t>> reach;
      std::vector<double> at10, final;
      std::size_t swarm = 0;
      for (const auto& t : traces) {
        if (t.algorithm != name) continue;
        reach.push_back(t.record.first_reaching(threshold));
        at10.push_back(t.record.best_at(10));
        final.push_back(t.record.rows.back().best_fitness);
        swarm = t.swarm_size;
      }
      const auto reached = std::count_if(reach.begin(), reach.end(), [](const auto& r) { return r.has_value(); });
      const auto med = median_iteration(reach);
      out << name << ',' << swarm << ',' << swarm * ws.scenario.size() << ',' << reach.size() << ',' << reached
          << ',' << (med ? num(*med) : std::string("not reached")) << ',' << num(median(at10)) << ','
          << num(median(final)) << '\n';
    }
    write_file(config.output_dir / "compare_summary.csv", out.str());
    return int{kOk};
  });
}

int cmd_supervise(const ExperimentConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    require_seeds(config);
    const auto ws = load_workspace(config);
    std::vector<Revision> revisions;
    std::string revision_text;
    if (config.revisions) {
      revision_text = read_text_file(*config.revisions);
      revisions = parse_revisions(revision_text);
    }
    const auto stream = expand_revisions(ws.scenario, revisions);
    DsasConfig dc;
    dc.whales = config.whales;
    dc.max_rounds = config.k_max;
    dc.seed = config.seeds.front();
    const auto events = supervise(stream, ws.registry, dc);
    const auto hex = config_digest(ws, config, "supervise", revision_text);

    std::ostringstream out;
    for (const auto& e : events) {
      ordered_json j;
      j["revision"] = e.revision;
      j["time"] = e.time;
      j["config_digest"] = hex;
      switch (e.kind) {
        case SupervisorEvent::Kind::Result:
          j["event"] = "result";
          j["result"] = result_json(stream[e.revision].scenario, *e.result, hex);
          break;
        case SupervisorEvent::Kind::Infeasible:
          j["event"] = "infeasible";
          j["message"] = e.message;
          break;
        case SupervisorEvent::Kind::Invalid:
          j["event"] = "invalid";
          j["message"] = e.message;
          break;
      }
      out << j.dump() << '\n';
    }
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "supervise_events.ndjson", out.str());
    return int{kOk};
  });
}

}  // namespace dsas::harness
