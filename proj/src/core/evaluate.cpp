#include "core/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/queueing.hpp"
#include "core/rng.hpp"

namespace slicer {

namespace {

constexpr double kRelSlack = 1e-9;

// Two-sided 95% critical values of Student's t.
struct TEntry {
  int dof;
  double value;
};
constexpr TEntry kT95[] = {
    {1, 12.706}, {2, 4.303}, {3, 3.182},  {4, 2.776},  {5, 2.571},
    {6, 2.447},  {7, 2.365}, {8, 2.306},  {9, 2.262},  {10, 2.228},
    {12, 2.179}, {15, 2.131}, {20, 2.086}, {25, 2.060}, {30, 2.042},
    {40, 2.021}, {60, 2.000}, {120, 1.980},
};

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double ci95_half_width(const std::vector<double>& v) {
  const auto n = v.size();
  if (n < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double stddev = std::sqrt(ss / static_cast<double>(n - 1));
  return t_critical_95(static_cast<int>(n - 1)) * stddev /
         std::sqrt(static_cast<double>(n));
}

}  // namespace

double t_critical_95(int dof) {
  if (dof < 1) {
    raise_invalid("t_critical_95: degrees of freedom must be >= 1");
  }
  const auto n = std::size(kT95);
  if (dof >= kT95[n - 1].dof) {
    return dof > 1000 ? 1.960 : kT95[n - 1].value;
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    if (dof == kT95[i].dof) return kT95[i].value;
    if (dof > kT95[i].dof && dof < kT95[i + 1].dof) {
      const double t = static_cast<double>(dof - kT95[i].dof) /
                       static_cast<double>(kT95[i + 1].dof - kT95[i].dof);
      return kT95[i].value + t * (kT95[i + 1].value - kT95[i].value);
    }
  }
  return kT95[n - 1].value;
}

EvaluationReport analytic_evaluate(
    const Scenario& scenario, const Deployment& deployment,
    const std::map<double, CapacityModel>& models) {
  EvaluationReport report;
  report.method = deployment.method;
  report.scenario_seed = scenario.rng_seed;
  report.n_subareas = static_cast<int>(scenario.subareas.size());
  report.n_uavs = deployment.n_faps();
  report.total_bandwidth_hz = deployment.total_bandwidth_hz();
  report.objective = deployment.objective;
  report.has_objective = deployment.has_objective;
  for (const auto& [ber, model] : models) report.capacity_models.push_back(model);

  const auto capacity = effective_capacity_bps(scenario, deployment, models);
  const double packet_bits = scenario.traffic.packet_size_bits;
  for (const auto& subarea : scenario.subareas) {
    const SliceSpec* slice = scenario.find_slice(subarea.slice_id);
    SubareaOutcome outcome;
    outcome.subarea_id = subarea.id;
    outcome.slice_id = subarea.slice_id;

    const auto it = capacity.find(subarea.id);
    if (it == capacity.end() || !(it->second > 0.0)) {
      outcome.achieved_capacity_bps = 0.0;
      outcome.analytic_delay_s = std::numeric_limits<double>::infinity();
      outcome.sla_ok = false;
      outcome.reason = "uncovered";
      report.per_subarea.push_back(std::move(outcome));
      continue;
    }
    outcome.achieved_capacity_bps = it->second;
    const double lambda = slice->throughput_demand_bps / packet_bits;
    const double mu = it->second / packet_bits;
    if (mu <= lambda) {
      outcome.analytic_delay_s = std::numeric_limits<double>::infinity();
      outcome.sla_ok = false;
      outcome.reason = "unstable";
    } else {
      outcome.analytic_delay_s =
          md1_mean_delay(lambda, mu, scenario.traffic.delay_model);
      const bool capacity_ok =
          it->second >= slice->throughput_demand_bps * (1.0 - kRelSlack);
      const bool delay_ok =
          outcome.analytic_delay_s <= slice->max_mean_delay_s * (1.0 + kRelSlack);
      outcome.sla_ok = capacity_ok && delay_ok;
      if (!capacity_ok) {
        outcome.reason = "capacity";
      } else if (!delay_ok) {
        outcome.reason = "delay";
      }
    }
    report.per_subarea.push_back(std::move(outcome));
  }
  for (const auto& outcome : report.per_subarea) {
    if (!outcome.sla_ok) ++report.sla_violation_count;
  }
  return report;
}

QueueSimResult simulate_queue(double arrival_rate_pps, double service_rate_pps,
                              double duration_s, std::uint64_t max_packets,
                              std::size_t buffer_packets, std::uint64_t seed) {
  if (!(arrival_rate_pps > 0.0)) {
    raise_invalid("simulate_queue: arrival rate must be positive");
  }
  if ((duration_s <= 0.0) == (max_packets == 0)) {
    raise_invalid("simulate_queue: set exactly one of duration or max_packets");
  }
  QueueSimResult result;
  const bool by_count = max_packets > 0;
  const double service_time = service_rate_pps > 0.0
                                  ? 1.0 / service_rate_pps
                                  : std::numeric_limits<double>::infinity();
  const size_t n_bins =
      by_count ? 0 : static_cast<size_t>(std::ceil(duration_s));
  result.generated_per_s.assign(n_bins, 0);
  result.delivered_per_s.assign(n_bins, 0);
  result.delay_sum_per_s.assign(n_bins, 0.0);

  auto rng = std::mt19937_64(seed);
  std::deque<std::pair<double, double>> in_flight;  // (arrival, departure)
  double now = 0.0;
  double last_departure = 0.0;
  double delay_total = 0.0;

  auto record_departure = [&](double arrival, double departure) {
    ++result.delivered;
    delay_total += departure - arrival;
    if (!by_count) {
      auto bin = static_cast<size_t>(departure);
      if (bin >= n_bins) bin = n_bins - 1;
      result.delivered_per_s[bin] += 1;
      result.delay_sum_per_s[bin] += departure - arrival;
    }
  };

  while (true) {
    now += -std::log(1.0 - uniform01(rng)) / arrival_rate_pps;
    if (by_count) {
      if (result.generated == max_packets) break;
    } else if (now >= duration_s) {
      break;
    }
    ++result.generated;
    if (!by_count) {
      result.generated_per_s[static_cast<size_t>(now)] += 1;
    }
    // Complete everything that left the server before this arrival.
    while (!in_flight.empty() && in_flight.front().second <= now) {
      record_departure(in_flight.front().first, in_flight.front().second);
      in_flight.pop_front();
    }
    if (in_flight.size() >= buffer_packets) {
      ++result.dropped;
      continue;
    }
    const double departure = std::max(now, last_departure) + service_time;
    in_flight.emplace_back(now, departure);
    last_departure = departure;
  }

  // Count-driven runs drain fully so every admitted packet contributes its
  // delay; time-driven runs stop at the horizon and report the backlog.
  while (!in_flight.empty()) {
    const auto [arrival, departure] = in_flight.front();
    if (!by_count && departure > duration_s) break;
    if (std::isinf(departure)) break;
    record_departure(arrival, departure);
    in_flight.pop_front();
  }
  result.left_in_queue = in_flight.size();
  result.mean_delay_s =
      result.delivered > 0 ? delay_total / static_cast<double>(result.delivered)
                           : 0.0;
  return result;
}

void simulate_packets(const Scenario& scenario, const Deployment& deployment,
                      const std::map<double, CapacityModel>& models,
                      double duration_s, int runs, std::uint64_t seed,
                      EvaluationReport& report) {
  if (!(duration_s > 0.0) || runs < 1) {
    raise_invalid("simulate_packets: need a positive duration and >= 1 run");
  }
  const auto capacity = effective_capacity_bps(scenario, deployment, models);
  const double packet_bits = scenario.traffic.packet_size_bits;
  const auto n_bins = static_cast<size_t>(std::ceil(duration_s));

  std::vector<double> throughput_samples;
  std::vector<double> pdr_samples;
  std::vector<double> delay_samples;

  for (size_t si = 0; si < scenario.subareas.size(); ++si) {
    const auto& subarea = scenario.subareas[si];
    const SliceSpec* slice = scenario.find_slice(subarea.slice_id);
    const double lambda = slice->throughput_demand_bps / packet_bits;
    const auto cap_it = capacity.find(subarea.id);
    const double mu =
        cap_it == capacity.end() ? 0.0 : cap_it->second / packet_bits;

    std::vector<std::vector<double>> tput(n_bins);
    std::vector<std::vector<double>> pdr(n_bins);
    std::vector<std::vector<double>> delay(n_bins);
    for (int run = 0; run < runs; ++run) {
      const auto run_seed = mix_seed(mix_seed(seed, run), si);
      const auto stats = simulate_queue(lambda, mu, duration_s, 0,
                                        kDefaultBufferPackets, run_seed);
      for (size_t t = 0; t < n_bins; ++t) {
        tput[t].push_back(static_cast<double>(stats.delivered_per_s[t]) *
                          packet_bits);
        const auto gen = stats.generated_per_s[t];
        pdr[t].push_back(gen == 0 ? 1.0
                                  : static_cast<double>(stats.delivered_per_s[t]) /
                                        static_cast<double>(gen));
        if (stats.delivered_per_s[t] > 0) {
          delay[t].push_back(stats.delay_sum_per_s[t] /
                             static_cast<double>(stats.delivered_per_s[t]));
        }
      }
    }
    for (size_t t = 0; t < n_bins; ++t) {
      throughput_samples.push_back(mean_of(tput[t]));
      pdr_samples.push_back(mean_of(pdr[t]));
      if (!delay[t].empty()) delay_samples.push_back(mean_of(delay[t]));
    }
  }

  report.distributions["throughput"] =
      build_distribution(std::move(throughput_samples), "ccdf", "throughput");
  report.distributions["pdr"] =
      build_distribution(std::move(pdr_samples), "ccdf", "pdr");
  if (!delay_samples.empty()) {
    report.distributions["delay"] =
        build_distribution(std::move(delay_samples), "cdf", "delay");
  }
  report.simulated = true;
  report.sim_duration_s = duration_s;
  report.sim_runs = runs;
}

MetricSeries build_distribution(std::vector<double> samples,
                                const std::string& kind,
                                const std::string& name) {
  if (samples.empty()) {
    raise_invalid("build_distribution: need at least one sample");
  }
  if (kind != "cdf" && kind != "ccdf") {
    raise_invalid("build_distribution: kind must be cdf or ccdf");
  }
  MetricSeries series;
  series.name = name;
  series.kind = kind;
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  size_t i = 0;
  while (i < samples.size()) {
    size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double at_or_below = static_cast<double>(j) / n;
    series.points.emplace_back(samples[i], kind == "cdf" ? at_or_below
                                                         : 1.0 - at_or_below);
    i = j;
  }
  series.samples = std::move(samples);
  return series;
}

std::vector<ComparisonRow> compare(const std::vector<EvaluationReport>& reports) {
  if (reports.size() < 2) {
    raise_invalid("compare: need at least two reports");
  }
  std::vector<std::string> order;
  std::map<std::string, std::vector<const EvaluationReport*>> by_method;
  for (const auto& r : reports) {
    if (!by_method.count(r.method)) order.push_back(r.method);
    by_method[r.method].push_back(&r);
  }
  // Every method must have seen the same scenarios.
  std::set<std::pair<std::uint64_t, int>> reference;
  bool first = true;
  for (const auto& method : order) {
    std::set<std::pair<std::uint64_t, int>> seen;
    for (const auto* r : by_method[method]) {
      seen.insert({r->scenario_seed, r->n_subareas});
    }
    if (first) {
      reference = std::move(seen);
      first = false;
    } else if (seen != reference) {
      raise_invalid("compare: methods were evaluated on different scenarios");
    }
  }

  std::vector<ComparisonRow> rows;
  for (const auto& method : order) {
    std::vector<double> uavs, bandwidth, violations;
    for (const auto* r : by_method[method]) {
      uavs.push_back(r->n_uavs);
      bandwidth.push_back(r->total_bandwidth_hz);
      violations.push_back(r->sla_violation_count);
    }
    ComparisonRow row;
    row.method = method;
    row.n_scenarios = static_cast<int>(uavs.size());
    row.n_uavs_mean = mean_of(uavs);
    row.n_uavs_ci95 = ci95_half_width(uavs);
    row.total_bandwidth_mean = mean_of(bandwidth);
    row.total_bandwidth_ci95 = ci95_half_width(bandwidth);
    row.sla_violations_mean = mean_of(violations);
    row.sla_violations_ci95 = ci95_half_width(violations);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream csv;
  csv.precision(12);
  csv << "method,scenarios,n_uavs_mean,n_uavs_ci95,total_bandwidth_hz_mean,"
         "total_bandwidth_hz_ci95,sla_violations_mean,sla_violations_ci95\n";
  for (const auto& row : rows) {
    csv << row.method << ',' << row.n_scenarios << ',' << row.n_uavs_mean << ','
        << row.n_uavs_ci95 << ',' << row.total_bandwidth_mean << ','
        << row.total_bandwidth_ci95 << ',' << row.sla_violations_mean << ','
        << row.sla_violations_ci95 << '\n';
  }
  return csv.str();
}

}  // namespace slicer
