// Command-line front end. Links the C API only; all file plumbing and flag
// parsing happens here, the library does the work.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicer/slicer.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct StringGuard {
  char* text = nullptr;
  ~StringGuard() { slicer_string_free(text); }
  std::string str() const { return text != nullptr ? text : ""; }
};

[[noreturn]] void fail(const std::string& context) {
  std::cerr << "error: " << context;
  const std::string detail = slicer_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(1);
}

void check(slicer_status status, const std::string& context) {
  if (status != SLICER_OK) fail(context);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path.string() + "'");
  out << content;
}

std::string default_out_dir() {
  const char* env = std::getenv("SLICER_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : "out";
}

struct GenerateFlags {
  int users = 0;
  double occupancy = 0.0;
  std::string slices_file;
  std::uint64_t seed = 1;
  std::vector<double> dims;
  double cell_side = 10.0;
  double pitch = 25.0;
  std::vector<double> altitudes;
  double activation_cost = 1000.0;
  int channel_budget = 8;
};

void add_generate_flags(CLI::App* cmd, GenerateFlags& flags) {
  cmd->add_option("--users", flags.users, "number of occupied subareas");
  cmd->add_option("--occupancy", flags.occupancy,
                  "occupied fraction of base cells (alternative to --users)");
  cmd->add_option("--slices", flags.slices_file,
                  "slice definitions JSON (default: eMBB + URLLC pair)");
  cmd->add_option("--seed", flags.seed, "scenario RNG seed");
  cmd->add_option("--dims", flags.dims, "cuboid X Y Z in meters")
      ->expected(3);
  cmd->add_option("--cell-side", flags.cell_side, "subarea side, m");
  cmd->add_option("--pitch", flags.pitch, "candidate site pitch, m");
  cmd->add_option("--altitudes", flags.altitudes, "candidate altitudes, m");
  cmd->add_option("--activation-cost", flags.activation_cost,
                  "per-site activation cost");
  cmd->add_option("--channel-budget", flags.channel_budget,
                  "channels per site");
}

Json generate_params(const GenerateFlags& flags) {
  Json params;
  if (flags.dims.size() == 3) {
    params["dims"] =
        Json{{"x", flags.dims[0]}, {"y", flags.dims[1]}, {"z", flags.dims[2]}};
  }
  params["cell_side"] = flags.cell_side;
  if (flags.users > 0) params["users"] = flags.users;
  if (flags.occupancy > 0.0) params["occupancy_fraction"] = flags.occupancy;
  if (!flags.slices_file.empty()) {
    params["slices"] = Json::parse(read_file(flags.slices_file));
  }
  params["rng_seed"] = flags.seed;
  params["site_pitch"] = flags.pitch;
  if (!flags.altitudes.empty()) params["site_altitudes"] = flags.altitudes;
  params["activation_cost"] = flags.activation_cost;
  params["channel_budget"] = flags.channel_budget;
  return params;
}

int cmd_generate(const GenerateFlags& flags, const std::string& out_path) {
  slicer_scenario* scenario = nullptr;
  check(slicer_scenario_generate(generate_params(flags).dump().c_str(),
                                 &scenario),
        "generate");
  StringGuard json;
  check(slicer_scenario_serialize(scenario, &json.text), "serialize");
  slicer_scenario_free(scenario);
  if (out_path == "-") {
    std::cout << json.str();
  } else {
    write_file(out_path, json.str());
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& scenario_path) {
  slicer_scenario* scenario = nullptr;
  check(slicer_scenario_parse(read_file(scenario_path).c_str(), &scenario),
        "parse scenario");
  StringGuard report;
  check(slicer_scenario_validate(scenario, &report.text), "validate");
  slicer_scenario_free(scenario);
  std::cout << report.str();
  const auto parsed = Json::parse(report.str());
  return parsed.at("violations").empty() ? 0 : 1;
}

int cmd_solve(const std::string& scenario_path, const std::string& method,
              const std::string& out_dir, const std::string& lp_path) {
  slicer_scenario* scenario = nullptr;
  check(slicer_scenario_parse(read_file(scenario_path).c_str(), &scenario),
        "parse scenario");
  if (!lp_path.empty()) {
    StringGuard lp;
    check(slicer_export_lp(scenario, &lp.text), "export LP");
    write_file(lp_path, lp.str());
    std::cout << "wrote " << lp_path << "\n";
  }
  const auto start = std::chrono::steady_clock::now();
  slicer_solution* solution = nullptr;
  check(slicer_solve(scenario, method.c_str(), &solution), "solve " + method);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::cout << method << " solve wall time: " << elapsed << " s\n";

  StringGuard solution_json, plan_json;
  check(slicer_solution_serialize(solution, &solution_json.text),
        "serialize solution");
  const fs::path dir(out_dir);
  write_file(dir / ("solution." + method + ".json"), solution_json.str());
  const auto status =
      Json::parse(solution_json.str()).value("status", std::string{});
  int exit_code = 0;
  if (status == "ok") {
    check(slicer_solution_plan_serialize(solution, &plan_json.text),
          "serialize plan");
    write_file(dir / ("plan." + method + ".json"), plan_json.str());
  } else {
    std::cerr << "infeasible; witness in solution file\n";
    exit_code = 1;
  }
  slicer_solution_free(solution);
  slicer_scenario_free(scenario);
  std::cout << "wrote " << (dir / ("solution." + method + ".json")).string()
            << "\n";
  return exit_code;
}

int cmd_evaluate(const std::string& scenario_path,
                 const std::string& solution_path, const std::string& plan_path,
                 bool simulate, double duration, int runs, std::uint64_t seed,
                 const std::string& out_path) {
  slicer_scenario* scenario = nullptr;
  check(slicer_scenario_parse(read_file(scenario_path).c_str(), &scenario),
        "parse scenario");
  slicer_solution* solution = nullptr;
  check(slicer_solution_parse(read_file(solution_path).c_str(),
                              read_file(plan_path).c_str(), &solution),
        "parse solution");
  Json options;
  options["simulate"] = simulate;
  options["duration"] = duration;
  options["runs"] = runs;
  if (seed != 0) options["seed"] = seed;
  StringGuard report;
  check(slicer_evaluate(scenario, solution, options.dump().c_str(),
                        &report.text),
        "evaluate");
  write_file(out_path, report.str());
  std::cout << "wrote " << out_path << "\n";
  if (simulate) {
    for (const std::string metric : {"throughput", "pdr", "delay"}) {
      StringGuard csv;
      if (slicer_report_distribution_csv(report.text, metric.c_str(),
                                         &csv.text) == SLICER_OK) {
        const fs::path csv_path =
            fs::path(out_path).replace_extension("." + metric + ".csv");
        write_file(csv_path, csv.str());
        std::cout << "wrote " << csv_path.string() << "\n";
      }
    }
  }
  slicer_solution_free(solution);
  slicer_scenario_free(scenario);
  return 0;
}

int cmd_compare(const std::vector<std::string>& report_paths,
                const std::string& out_path) {
  std::vector<std::string> contents;
  std::vector<const char*> pointers;
  for (const auto& path : report_paths) {
    contents.push_back(read_file(path));
  }
  for (const auto& text : contents) pointers.push_back(text.c_str());
  StringGuard csv;
  check(slicer_compare(pointers.data(), pointers.size(), &csv.text),
        "compare");
  if (out_path == "-") {
    std::cout << csv.str();
  } else {
    write_file(out_path, csv.str());
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

Json pipeline_config(const std::string& scenario_path,
                     const GenerateFlags& flags, bool have_generate,
                     const std::vector<std::string>& methods, bool no_sim,
                     double duration, int runs, const std::string& out_dir,
                     bool export_lp, const std::string& mcs_table) {
  Json config;
  if (!scenario_path.empty()) {
    config["scenario_file"] = scenario_path;
  } else if (have_generate) {
    config["generate"] = generate_params(flags);
  }
  config["methods"] = methods;
  config["simulate"] = !no_sim;
  config["sim_duration"] = duration;
  config["sim_runs"] = runs;
  config["out_dir"] = out_dir;
  config["export_lp"] = export_lp;
  if (!mcs_table.empty()) config["mcs_table_file"] = mcs_table;
  return config;
}

int report_summary(slicer_status status, const StringGuard& summary) {
  if (!summary.str().empty()) {
    const auto parsed = Json::parse(summary.str());
    for (const auto& line : parsed.value("log", Json::array())) {
      std::cout << line.get<std::string>() << "\n";
    }
    for (const auto& m : parsed.value("methods", Json::array())) {
      std::cout << m.value("method", std::string{}) << ": "
                << m.value("status", std::string{}) << "\n";
    }
  }
  if (status != SLICER_OK) {
    std::cerr << "error: " << slicer_last_error() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slicing-aware flying network planner"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "emit a random scenario snapshot as JSON");
  GenerateFlags generate_flags;
  add_generate_flags(generate, generate_flags);
  std::string generate_out = "-";
  generate->add_option("--out", generate_out, "output file, - for stdout");

  // validate
  auto* validate = app.add_subcommand("validate", "check scenario invariants");
  std::string validate_scenario;
  validate->add_option("--scenario", validate_scenario)->required();

  // solve
  auto* solve =
      app.add_subcommand("solve", "place FAPs and allocate channels");
  std::string solve_scenario, solve_method = "slicer", solve_lp;
  std::string solve_out = default_out_dir();
  solve->add_option("--scenario", solve_scenario)->required();
  solve->add_option("--method", solve_method,
                    "slicer | geometric_center | kmeans");
  solve->add_option("--out-dir", solve_out);
  solve->add_option("--lp-export", solve_lp, "also write the MILP as LP text");

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "verify SLAs analytically and optionally by simulation");
  std::string eval_scenario, eval_solution, eval_plan;
  std::string eval_out = "report.json";
  bool eval_sim = false;
  double eval_duration = 60.0;
  int eval_runs = 5;
  std::uint64_t eval_seed = 0;
  evaluate->add_option("--scenario", eval_scenario)->required();
  evaluate->add_option("--solution", eval_solution)->required();
  evaluate->add_option("--plan", eval_plan)->required();
  evaluate->add_flag("--sim", eval_sim, "run the packet-level simulator");
  evaluate->add_option("--duration", eval_duration, "seconds per run");
  evaluate->add_option("--runs", eval_runs);
  evaluate->add_option("--seed", eval_seed, "simulation seed");
  evaluate->add_option("--out", eval_out);

  // compare
  auto* compare = app.add_subcommand(
      "compare", "mean / 95% CI table across method reports");
  std::vector<std::string> compare_reports;
  std::string compare_out = "-";
  compare->add_option("reports", compare_reports, "report JSON files")
      ->required()
      ->expected(-1);
  compare->add_option("--out", compare_out, "output CSV, - for stdout");

  // run (full pipeline)
  auto* run = app.add_subcommand(
      "run", "generate (or load), solve every method, evaluate, compare");
  GenerateFlags run_generate_flags;
  add_generate_flags(run, run_generate_flags);
  std::string run_scenario;
  std::vector<std::string> run_methods = {"slicer", "geometric_center",
                                          "kmeans"};
  bool run_no_sim = false, run_export_lp = false;
  double run_duration = 60.0;
  int run_runs = 5;
  std::string run_out = default_out_dir(), run_mcs_table;
  run->add_option("--scenario", run_scenario,
                  "existing scenario file (instead of generating)");
  run->add_option("--methods", run_methods)->delimiter(',');
  run->add_flag("--no-sim", run_no_sim, "analytic evaluation only");
  run->add_option("--duration", run_duration);
  run->add_option("--runs", run_runs);
  run->add_option("--out-dir", run_out);
  run->add_flag("--export-lp", run_export_lp);
  run->add_option("--mcs-table", run_mcs_table, "MCS table JSON override");

  // sequence
  auto* sequence = app.add_subcommand(
      "sequence", "independent snapshots at the reconfiguration period");
  GenerateFlags seq_generate_flags;
  add_generate_flags(sequence, seq_generate_flags);
  int seq_k_max = 1;
  double seq_dt = 30.0;
  std::vector<std::string> seq_methods = {"slicer", "geometric_center",
                                          "kmeans"};
  bool seq_no_sim = false;
  double seq_duration = 60.0;
  int seq_runs = 5;
  std::string seq_out = default_out_dir();
  sequence->add_option("--k-max", seq_k_max, "number of snapshots")
      ->required();
  sequence->add_option("--dt", seq_dt, "reconfiguration period, s");
  sequence->add_option("--methods", seq_methods)->delimiter(',');
  sequence->add_flag("--no-sim", seq_no_sim);
  sequence->add_option("--duration", seq_duration);
  sequence->add_option("--runs", seq_runs);
  sequence->add_option("--out-dir", seq_out);

  // mcs-table
  auto* mcs = app.add_subcommand(
      "mcs-table", "emit the default MCS/SNR-threshold table as JSON");
  std::vector<double> mcs_bers;
  std::string mcs_out = "-";
  mcs->add_option("--bers", mcs_bers, "BER targets");
  mcs->add_option("--out", mcs_out, "output file, - for stdout");

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) {
    if (generate_flags.users <= 0 && generate_flags.occupancy <= 0.0) {
      std::cerr << "error: need --users or --occupancy\n";
      return 1;
    }
    return cmd_generate(generate_flags, generate_out);
  }
  if (validate->parsed()) {
    return cmd_validate(validate_scenario);
  }
  if (solve->parsed()) {
    return cmd_solve(solve_scenario, solve_method, solve_out, solve_lp);
  }
  if (evaluate->parsed()) {
    return cmd_evaluate(eval_scenario, eval_solution, eval_plan, eval_sim,
                        eval_duration, eval_runs, eval_seed, eval_out);
  }
  if (compare->parsed()) {
    return cmd_compare(compare_reports, compare_out);
  }
  if (run->parsed()) {
    const bool have_generate =
        run_generate_flags.users > 0 || run_generate_flags.occupancy > 0.0;
    if (run_scenario.empty() && !have_generate) {
      std::cerr << "error: need --scenario or --users/--occupancy\n";
      return 1;
    }
    const auto config =
        pipeline_config(run_scenario, run_generate_flags, have_generate,
                        run_methods, run_no_sim, run_duration, run_runs,
                        run_out, run_export_lp, run_mcs_table);
    StringGuard summary;
    const auto status =
        slicer_run_pipeline(config.dump().c_str(), &summary.text);
    return report_summary(status, summary);
  }
  if (sequence->parsed()) {
    if (seq_generate_flags.users <= 0 && seq_generate_flags.occupancy <= 0.0) {
      std::cerr << "error: need --users or --occupancy\n";
      return 1;
    }
    const auto config = pipeline_config(
        "", seq_generate_flags, true, seq_methods, seq_no_sim, seq_duration,
        seq_runs, seq_out, false, "");
    StringGuard summary;
    const auto status = slicer_run_sequence(config.dump().c_str(), seq_k_max,
                                            seq_dt, &summary.text);
    return report_summary(status, summary);
  }
  if (mcs->parsed()) {
    Json bers = Json::array();
    for (double b : mcs_bers) bers.push_back(b);
    StringGuard table;
    check(slicer_default_mcs_table(
              mcs_bers.empty() ? nullptr : bers.dump().c_str(), &table.text),
          "mcs-table");
    if (mcs_out == "-") {
      std::cout << table.str();
    } else {
      write_file(mcs_out, table.str());
      std::cout << "wrote " << mcs_out << "\n";
    }
    return 0;
  }
  return 0;
}
