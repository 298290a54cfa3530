#pragma once

#include <string>

namespace slicer {

struct SliceSpec;  // scenario.hpp

enum class DelayModel {
  standard,   // M/D/1 sojourn time: 1/mu + rho / (2 mu (1 - rho))
  paper_eq6,  // compatibility: the product form (1/mu) * rho / (2 mu (1 - rho))
};

struct TrafficModel {
  double packet_size_bits = 12'000.0;  // 1500-byte packets
  std::string arrival_process = "poisson";
  DelayModel delay_model = DelayModel::standard;
};

// Mean time a packet spends in an M/D/1 queue (waiting + service).
// Requires 0 <= arrival_rate < service_rate; throws on instability.
double md1_mean_delay(double arrival_rate_pps, double service_rate_pps,
                      DelayModel model = DelayModel::standard);

// Smallest service rate keeping the mean delay at or below `max_delay_s`.
// Closed form: larger root of  2 H mu^2 - 2 (H lambda + 1) mu + lambda = 0.
double min_service_rate(double arrival_rate_pps, double max_delay_s,
                        DelayModel model = DelayModel::standard);

// Capacity floor that satisfies both the throughput demand and, through the
// M/D/1 inverse, the delay bound: max(T, L * mu*(T/L, H)).
double required_capacity_bps(const SliceSpec& slice, const TrafficModel& traffic);

DelayModel delay_model_from_string(const std::string& name);
std::string to_string(DelayModel model);

}  // namespace slicer
