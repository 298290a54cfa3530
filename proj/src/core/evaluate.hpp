#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/deployment.hpp"
#include "core/scenario.hpp"

namespace slicer {

struct SubareaOutcome {
  std::string subarea_id;
  std::string slice_id;
  double achieved_capacity_bps = 0.0;
  double analytic_delay_s = 0.0;  // +inf when the queue is unstable
  bool sla_ok = false;
  std::string reason;  // empty | uncovered | capacity | delay | unstable
};

struct MetricSeries {
  std::string name;
  std::string kind;  // cdf | ccdf
  std::vector<double> samples;
  std::vector<std::pair<double, double>> points;  // (x, F(x)) steps
};

struct EvaluationReport {
  std::string method;
  std::uint64_t scenario_seed = 0;
  int n_subareas = 0;
  std::vector<SubareaOutcome> per_subarea;
  int n_uavs = 0;
  double total_bandwidth_hz = 0.0;
  int sla_violation_count = 0;
  double objective = 0.0;
  bool has_objective = false;
  std::vector<CapacityModel> capacity_models;
  std::map<std::string, MetricSeries> distributions;  // throughput, pdr, delay
  bool simulated = false;
  double sim_duration_s = 0.0;
  int sim_runs = 0;
};

// Per-subarea SLA verdicts from the effective capacities: achieved >= T^s
// and the M/D/1 mean delay at the achieved rate <= H^s (1e-9 relative
// slack on both, so demands met with equality pass).
EvaluationReport analytic_evaluate(const Scenario& scenario,
                                   const Deployment& deployment,
                                   const std::map<double, CapacityModel>& models);

// Single FIFO queue with Poisson arrivals, deterministic service and a
// finite buffer. Runs either for `duration_s` or until `max_packets`
// arrivals were generated, whichever is configured (set the other to 0).
struct QueueSimResult {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t left_in_queue = 0;
  double mean_delay_s = 0.0;  // over delivered packets
  // per whole second: generated, delivered counts and summed delay
  std::vector<std::uint64_t> generated_per_s;
  std::vector<std::uint64_t> delivered_per_s;
  std::vector<double> delay_sum_per_s;
};

QueueSimResult simulate_queue(double arrival_rate_pps, double service_rate_pps,
                              double duration_s, std::uint64_t max_packets,
                              std::size_t buffer_packets, std::uint64_t seed);

// Packet-level pass over every subarea queue: per-second throughput, PDR
// and delay samples averaged across runs, pooled over subareas, attached
// to the report as CCDF/CCDF/CDF series.
void simulate_packets(const Scenario& scenario, const Deployment& deployment,
                      const std::map<double, CapacityModel>& models,
                      double duration_s, int runs, std::uint64_t seed,
                      EvaluationReport& report);

// Empirical distribution: cdf(x) = fraction <= x, ccdf(x) = fraction > x.
MetricSeries build_distribution(std::vector<double> samples,
                                const std::string& kind,
                                const std::string& name = "");

struct ComparisonRow {
  std::string method;
  int n_scenarios = 0;
  double n_uavs_mean = 0.0, n_uavs_ci95 = 0.0;
  double total_bandwidth_mean = 0.0, total_bandwidth_ci95 = 0.0;
  double sla_violations_mean = 0.0, sla_violations_ci95 = 0.0;
};

// Mean and 95% Student-t confidence half-width per method over a common
// scenario set; throws when methods saw different scenario seeds.
std::vector<ComparisonRow> compare(
    const std::vector<EvaluationReport>& reports);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

// Two-sided 95% Student-t critical value for `dof` degrees of freedom.
double t_critical_95(int dof);

constexpr std::size_t kDefaultBufferPackets = 1000;

}  // namespace slicer
