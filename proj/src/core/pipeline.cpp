#include "core/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "core/baselines.hpp"
#include "core/channel_plan.hpp"
#include "core/error.hpp"
#include "core/json_io.hpp"
#include "core/queueing.hpp"

namespace slicer {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    raise(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) {
    raise(ErrorKind::io, "failed writing '" + path.string() + "'");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorKind::io, "cannot read '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

Scenario load_scenario(const PipelineConfig& config) {
  if (!config.scenario_file.empty()) {
    return scenario_from_json(parse_json(read_file(config.scenario_file)));
  }
  if (!config.scenario_json.empty()) {
    return scenario_from_json(parse_json(config.scenario_json));
  }
  if (!config.generate_json.empty()) {
    return generate_random_scenario(
        generate_params_from_json(parse_json(config.generate_json)));
  }
  raise_invalid("pipeline: no scenario source configured");
}

}  // namespace

std::map<double, CapacityModel> build_capacity_models(const Scenario& scenario,
                                                      const McsTable* table) {
  std::set<double> bers;
  for (const auto& slice : scenario.slices) bers.insert(slice.target_ber);
  if (bers.empty()) {
    raise_invalid("build_capacity_models: scenario has no slices");
  }
  McsTable effective;
  if (table != nullptr) {
    effective = *table;
  } else {
    effective = default_mcs_table({bers.begin(), bers.end()});
  }
  const auto problems = validate_mcs_table(effective);
  if (!problems.empty()) {
    raise_invalid("MCS table invalid: " + problems.front());
  }
  std::map<double, CapacityModel> models;
  for (double ber : bers) {
    models[ber] = fit_capacity_model(effective, ber);
  }
  return models;
}

SlicerRun run_slicer(const Scenario& scenario,
                     const std::map<double, CapacityModel>& models) {
  SlicerRun run;
  run.problem = build_problem(scenario, models);
  run.solution = solve_exact(run.problem);
  run.deployment.method = "slicer";
  run.deployment.scenario_seed = scenario.rng_seed;
  run.deployment.base_bandwidth_hz = scenario.radio.channel_bandwidth_hz;
  if (run.solution.status != PlacementSolution::Status::optimal) {
    run.deployment.status = "infeasible";
    run.deployment.infeasible_witness = run.solution.infeasible_witness;
    return run;
  }
  run.deployment.status = "ok";
  run.deployment.objective = run.solution.objective;
  run.deployment.has_objective = true;

  for (size_t u = 0; u < run.problem.sites.size(); ++u) {
    if (!run.solution.active[u]) continue;
    DeployedFap fap;
    fap.id = run.problem.sites[u].id;
    fap.position = run.problem.sites[u].position;
    fap.channel_budget = static_cast<int>(run.problem.sites[u].channel_budget);
    std::vector<std::pair<std::string, double>> equivalents;
    for (size_t a = 0; a < run.problem.demands.size(); ++a) {
      const double r = run.solution.channel_equiv[u][a];
      if (r > 0.0) {
        equivalents.emplace_back(run.problem.demands[a].subarea_id, r);
      }
    }
    fap.channels = pack_channels(chunk_demands(equivalents), fap.channel_budget,
                                 scenario.radio.channel_bandwidth_hz);
    run.deployment.faps.push_back(std::move(fap));
  }
  return run;
}

std::map<std::string, double> channel_shares(const SlicerRun& run) {
  std::map<std::string, double> shares;
  for (size_t u = 0; u < run.problem.sites.size(); ++u) {
    for (size_t a = 0; a < run.problem.demands.size(); ++a) {
      const double r = run.solution.channel_equiv[u][a];
      if (r > 0.0) shares[run.problem.demands[a].subarea_id] += r;
    }
  }
  return shares;
}

Deployment solve_with_method(const Scenario& scenario,
                             const std::string& method,
                             const std::map<double, CapacityModel>& models,
                             const SlicerRun* slicer_run) {
  if (method == "slicer") {
    return run_slicer(scenario, models).deployment;
  }
  if (method == "geometric_center") {
    return geometric_center_placement(scenario, models);
  }
  if (method == "kmeans") {
    SlicerRun local;
    if (slicer_run == nullptr) {
      local = run_slicer(scenario, models);
      slicer_run = &local;
    }
    if (slicer_run->deployment.status != "ok") {
      raise(ErrorKind::infeasible,
            "kmeans baseline needs a feasible slicer run for its channel "
            "shares; witness subarea '" +
                slicer_run->deployment.infeasible_witness + "'");
    }
    return kmeans_placement(scenario, channel_shares(*slicer_run));
  }
  raise_invalid("unknown method '" + method +
                "' (expected slicer | geometric_center | kmeans)");
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
  const Json j = parse_json(text);
  PipelineConfig config;
  try {
    config.scenario_file = j.value("scenario_file", config.scenario_file);
    if (j.contains("scenario")) config.scenario_json = j.at("scenario").dump();
    if (j.contains("generate")) config.generate_json = j.at("generate").dump();
    if (j.contains("methods")) {
      config.methods = j.at("methods").get<std::vector<std::string>>();
    }
    config.simulate = j.value("simulate", config.simulate);
    config.sim_duration_s = j.value("sim_duration", config.sim_duration_s);
    config.sim_runs = j.value("sim_runs", config.sim_runs);
    config.sim_seed = j.value("sim_seed", config.sim_seed);
    config.out_dir = j.value("out_dir", config.out_dir);
    config.export_lp = j.value("export_lp", config.export_lp);
    config.mcs_table_file = j.value("mcs_table_file", config.mcs_table_file);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorKind::parse, std::string("pipeline config: ") + e.what());
  }
  if (config.methods.empty()) {
    raise_invalid("pipeline: need at least one method");
  }
  return config;
}

PipelineOutcome run_pipeline(const PipelineConfig& config) {
  PipelineOutcome outcome;
  outcome.out_dir = config.out_dir;
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);

  const Scenario scenario = load_scenario(config);
  const auto validation = validate(scenario);
  for (const auto& warning : validation.warnings) {
    outcome.log.push_back("warning: " + warning);
  }
  if (!validation.ok()) {
    std::string detail = "scenario invalid:";
    for (const auto& v : validation.violations) detail += " [" + v + "]";
    raise(ErrorKind::validation, detail);
  }
  write_file(out_dir / "scenario.json", dump_pretty(scenario_to_json(scenario)));

  McsTable table;
  const McsTable* table_ptr = nullptr;
  if (!config.mcs_table_file.empty()) {
    table = mcs_table_from_json(parse_json(read_file(config.mcs_table_file)));
    table_ptr = &table;
  }
  const auto models = build_capacity_models(scenario, table_ptr);
  if (table_ptr == nullptr) {
    std::set<double> bers;
    for (const auto& slice : scenario.slices) bers.insert(slice.target_ber);
    table = default_mcs_table({bers.begin(), bers.end()});
  }
  write_file(out_dir / "mcs_table.json", dump_pretty(mcs_table_to_json(table)));

  // The slicer run is shared: its channel shares parameterize k-means.
  SlicerRun slicer_run;
  bool have_slicer = false;
  auto ensure_slicer = [&]() -> const SlicerRun& {
    if (!have_slicer) {
      const auto start = std::chrono::steady_clock::now();
      slicer_run = run_slicer(scenario, models);
      const double elapsed = seconds_since(start);
      outcome.log.push_back("slicer solve wall time: " +
                            std::to_string(elapsed) + " s");
      for (auto& m : outcome.methods) {
        if (m.method == "slicer") m.solve_wall_s = elapsed;
      }
      have_slicer = true;
    }
    return slicer_run;
  };

  if (config.export_lp) {
    ensure_slicer();
    write_file(out_dir / "problem.lp", export_lp(slicer_run.problem));
    outcome.log.push_back("wrote problem.lp");
  }

  std::vector<EvaluationReport> reports;
  for (const auto& method : config.methods) {
    MethodOutcome method_outcome;
    method_outcome.method = method;
    outcome.methods.push_back(method_outcome);
    auto& slot = outcome.methods.back();
    try {
      const auto start = std::chrono::steady_clock::now();
      Deployment deployment;
      if (method == "slicer") {
        deployment = ensure_slicer().deployment;
      } else if (method == "kmeans") {
        deployment = solve_with_method(scenario, method, models,
                                       &ensure_slicer());
      } else {
        deployment = solve_with_method(scenario, method, models);
      }
      if (method != "slicer") slot.solve_wall_s = seconds_since(start);

      write_file(out_dir / ("solution." + method + ".json"),
                 dump_pretty(solution_to_json(deployment)));
      if (deployment.status != "ok") {
        slot.status = "infeasible";
        slot.detail = "witness subarea '" + deployment.infeasible_witness + "'";
        outcome.log.push_back(method + ": infeasible, " + slot.detail);
        continue;
      }
      write_file(out_dir / ("plan." + method + ".json"),
                 dump_pretty(plan_to_json(deployment)));

      auto report = analytic_evaluate(scenario, deployment, models);
      if (config.simulate) {
        const auto seed =
            config.sim_seed != 0 ? config.sim_seed : scenario.rng_seed;
        simulate_packets(scenario, deployment, models, config.sim_duration_s,
                         config.sim_runs, seed, report);
        for (const auto& [name, series] : report.distributions) {
          write_file(out_dir / ("report." + method + "." + name + ".csv"),
                     metric_series_csv(series));
        }
      }
      write_file(out_dir / ("report." + method + ".json"),
                 dump_pretty(report_to_json(report)));
      reports.push_back(std::move(report));
      slot.status = "ok";
      slot.report_written = true;
    } catch (const Error& e) {
      slot.status = e.kind() == ErrorKind::infeasible ? "infeasible" : "error";
      slot.detail = e.what();
      outcome.log.push_back(method + ": " + e.what());
    }
  }

  if (reports.size() >= 2) {
    write_file(out_dir / "comparison.csv", comparison_csv(compare(reports)));
  }
  outcome.ok = true;
  for (const auto& m : outcome.methods) {
    outcome.ok = outcome.ok && m.report_written;
  }
  return outcome;
}

PipelineOutcome run_snapshot_sequence(const PipelineConfig& config, int k_max,
                                      double reconfig_period_s) {
  if (k_max < 1) {
    raise_invalid("sequence: k_max must be at least 1");
  }
  PipelineOutcome outcome;
  outcome.out_dir = config.out_dir;
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);

  if (config.generate_json.empty()) {
    raise_invalid("sequence: snapshots need generation parameters");
  }
  const Json base_params = parse_json(config.generate_json);
  const std::uint64_t base_seed = base_params.value("rng_seed", 0ULL);

  std::ostringstream timings;
  timings.precision(6);
  timings << "snapshot,method,solve_wall_s,reconfig_period_s,within_period\n";
  outcome.ok = true;
  for (int k = 0; k < k_max; ++k) {
    PipelineConfig snapshot_config = config;
    Json params = base_params;
    params["rng_seed"] = base_seed ^ static_cast<std::uint64_t>(k);
    params["snapshot_index"] = k;
    if (!params.contains("reconfig_period")) {
      params["reconfig_period"] = reconfig_period_s;
    }
    snapshot_config.generate_json = params.dump();
    snapshot_config.out_dir =
        (out_dir / ("snapshot_" + std::to_string(k))).string();
    auto snapshot = run_pipeline(snapshot_config);
    outcome.ok = outcome.ok && snapshot.ok;
    for (const auto& m : snapshot.methods) {
      timings << k << ',' << m.method << ',' << m.solve_wall_s << ','
              << reconfig_period_s << ','
              << (m.solve_wall_s < reconfig_period_s ? "yes" : "no") << '\n';
      outcome.methods.push_back(m);
    }
    for (auto& line : snapshot.log) {
      outcome.log.push_back("snapshot " + std::to_string(k) + ": " + line);
    }
  }
  write_file(out_dir / "timings.csv", timings.str());
  return outcome;
}

std::string outcome_to_json(const PipelineOutcome& outcome) {
  Json j;
  j["ok"] = outcome.ok;
  j["out_dir"] = outcome.out_dir;
  j["methods"] = Json::array();
  for (const auto& m : outcome.methods) {
    j["methods"].push_back(Json{{"method", m.method},
                                {"status", m.status},
                                {"report_written", m.report_written},
                                {"solve_wall_s", m.solve_wall_s},
                                {"detail", m.detail}});
  }
  j["log"] = outcome.log;
  return dump_pretty(j);
}

}  // namespace slicer
