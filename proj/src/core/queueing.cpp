#include "core/queueing.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/scenario.hpp"

namespace slicer {

double md1_mean_delay(double arrival_rate_pps, double service_rate_pps,
                      DelayModel model) {
  if (!(service_rate_pps > 0.0)) {
    raise_invalid("md1_mean_delay: service rate must be positive");
  }
  if (arrival_rate_pps < 0.0) {
    raise_invalid("md1_mean_delay: arrival rate must be non-negative");
  }
  const double rho = arrival_rate_pps / service_rate_pps;
  if (rho >= 1.0) {
    raise(ErrorKind::invalid_argument,
          "md1_mean_delay: unstable queue (utilization >= 1)");
  }
  const double wait = rho / (2.0 * service_rate_pps * (1.0 - rho));
  if (model == DelayModel::paper_eq6) {
    return wait / service_rate_pps;
  }
  return 1.0 / service_rate_pps + wait;
}

double min_service_rate(double arrival_rate_pps, double max_delay_s,
                        DelayModel model) {
  if (!(max_delay_s > 0.0)) {
    raise_invalid("min_service_rate: delay bound must be positive");
  }
  if (arrival_rate_pps < 0.0) {
    raise_invalid("min_service_rate: arrival rate must be non-negative");
  }
  const double h = max_delay_s;
  const double lambda = arrival_rate_pps;
  if (model == DelayModel::paper_eq6) {
    // lambda / (2 mu (mu - lambda)) = H, larger root.
    if (lambda == 0.0) {
      return 0.0;  // the product form puts no constraint on an empty queue
    }
    return (h * lambda + std::sqrt(h * h * lambda * lambda +
                                   2.0 * h * lambda)) /
           (2.0 * h);
  }
  // Standard sojourn time. The discriminant simplifies to (H lambda)^2 + 1,
  // so the root always exists and exceeds lambda.
  const double hl = h * lambda;
  return (hl + 1.0 + std::sqrt(hl * hl + 1.0)) / (2.0 * h);
}

double required_capacity_bps(const SliceSpec& slice,
                             const TrafficModel& traffic) {
  if (!(traffic.packet_size_bits > 0.0)) {
    raise_invalid("required_capacity: packet size must be positive");
  }
  const double lambda = slice.throughput_demand_bps / traffic.packet_size_bits;
  const double mu = min_service_rate(lambda, slice.max_mean_delay_s,
                                     traffic.delay_model);
  return std::max(slice.throughput_demand_bps,
                  traffic.packet_size_bits * mu);
}

DelayModel delay_model_from_string(const std::string& name) {
  if (name == "standard") return DelayModel::standard;
  if (name == "paper_eq6") return DelayModel::paper_eq6;
  raise_invalid("unknown delay model '" + name +
                "' (expected standard | paper_eq6)");
}

std::string to_string(DelayModel model) {
  return model == DelayModel::standard ? "standard" : "paper_eq6";
}

}  // namespace slicer
