#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/deployment.hpp"
#include "core/evaluate.hpp"
#include "core/placement.hpp"
#include "core/scenario.hpp"

namespace slicer {

// Per-BER capacity models covering every slice in the scenario, fitted on
// the given MCS table (built-in default table when none supplied).
std::map<double, CapacityModel> build_capacity_models(
    const Scenario& scenario, const McsTable* table = nullptr);

// Exact placement, then per-FAP first-fit-decreasing packing of the
// channel-equivalents into base-width channels.
struct SlicerRun {
  PlacementProblem problem;
  PlacementSolution solution;
  Deployment deployment;  // status "infeasible" carries the witness
};
SlicerRun run_slicer(const Scenario& scenario,
                     const std::map<double, CapacityModel>& models);

// Per-subarea channel share (channel-equivalents) of a feasible run; the
// quantity the k-means baseline is fed.
std::map<std::string, double> channel_shares(const SlicerRun& run);

// Dispatch on method name: slicer | geometric_center | kmeans. k-means
// needs a slicer run; one is computed on demand when not passed in.
Deployment solve_with_method(const Scenario& scenario,
                             const std::string& method,
                             const std::map<double, CapacityModel>& models,
                             const SlicerRun* slicer_run = nullptr);

struct PipelineConfig {
  std::string scenario_file;   // read this scenario ...
  std::string scenario_json;   // ... or take it inline ...
  std::string generate_json;   // ... or generate from these parameters
  std::vector<std::string> methods = {"slicer", "geometric_center", "kmeans"};
  bool simulate = true;
  double sim_duration_s = 60.0;
  int sim_runs = 5;
  std::uint64_t sim_seed = 0;  // 0: reuse the scenario seed
  std::string out_dir = "out";
  bool export_lp = false;
  std::string mcs_table_file;  // override the built-in table
};

PipelineConfig pipeline_config_from_json(const std::string& text);

struct MethodOutcome {
  std::string method;
  std::string status;  // ok | infeasible | error
  bool report_written = false;
  double solve_wall_s = 0.0;
  std::string detail;
};

struct PipelineOutcome {
  bool ok = false;  // every requested method produced a report
  std::string out_dir;
  std::vector<MethodOutcome> methods;
  std::vector<std::string> log;  // wall times and file names, for the caller
};

// One snapshot: scenario.json, then per method solution/plan/report files,
// distribution CSVs when simulating, and comparison.csv across methods.
PipelineOutcome run_pipeline(const PipelineConfig& config);

// Snapshots k = 0..k_max-1 under out_dir/snapshot_<k>/, each generated
// with seed XOR k, plus a timings.csv relating solve time to the
// reconfiguration period.
PipelineOutcome run_snapshot_sequence(const PipelineConfig& config, int k_max,
                                      double reconfig_period_s);

std::string outcome_to_json(const PipelineOutcome& outcome);

}  // namespace slicer
