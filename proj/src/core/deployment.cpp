#include "core/deployment.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/queueing.hpp"

namespace slicer {

namespace {

const CapacityModel& model_for(const std::map<double, CapacityModel>& models,
                               double ber) {
  auto it = models.find(ber);
  if (it != models.end()) return it->second;
  for (const auto& [key, model] : models) {
    if (std::abs(key - ber) <= 1e-12 * std::max(key, ber)) return model;
  }
  std::ostringstream msg;
  msg << "no capacity model for BER " << ber;
  raise(ErrorKind::invalid_argument, msg.str());
}

}  // namespace

double Deployment::total_bandwidth_hz() const {
  double sum = 0.0;
  for (const auto& fap : faps) {
    for (const auto& c : fap.channels) sum += c.bandwidth_hz;
  }
  return sum;
}

int width_multiple(const Channel& channel, const RadioConfig& radio) {
  const double ratio = channel.bandwidth_hz / radio.channel_bandwidth_hz;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-6) {
    raise_invalid("channel bandwidth must be a positive multiple of the base width");
  }
  return static_cast<int>(rounded);
}

std::map<std::string, double> effective_capacity_bps(
    const Scenario& scenario, const Deployment& deployment,
    const std::map<double, CapacityModel>& models) {
  std::map<std::string, double> capacity;
  for (const auto& fap : deployment.faps) {
    for (const auto& channel : fap.channels) {
      const int width = width_multiple(channel, scenario.radio);
      for (const auto& member : channel.members) {
        const Subarea* subarea = nullptr;
        for (const auto& s : scenario.subareas) {
          if (s.id == member.subarea_id) {
            subarea = &s;
            break;
          }
        }
        if (subarea == nullptr) {
          raise_invalid("deployment serves unknown subarea '" +
                        member.subarea_id + "'");
        }
        const SliceSpec* slice = scenario.find_slice(subarea->slice_id);
        const auto& model = model_for(models, slice->target_ber);
        const double snr =
            snr_db(scenario.radio, distance(fap.position, subarea->center));
        capacity[member.subarea_id] +=
            member.fraction * capacity_for_width_bps(model, snr, width);
      }
    }
  }
  return capacity;
}

std::vector<std::string> verify_plan(
    const Scenario& scenario, const Deployment& deployment,
    const std::map<double, CapacityModel>& models) {
  std::vector<std::string> violations;
  const double base = scenario.radio.channel_bandwidth_hz;

  for (const auto& fap : deployment.faps) {
    double fap_bandwidth = 0.0;
    for (size_t ci = 0; ci < fap.channels.size(); ++ci) {
      const auto& channel = fap.channels[ci];
      try {
        width_multiple(channel, scenario.radio);
      } catch (const Error& e) {
        violations.push_back("fap '" + fap.id + "' channel " +
                             std::to_string(ci) + ": " + e.what());
        continue;
      }
      fap_bandwidth += channel.bandwidth_hz;
      double load = 0.0;
      for (const auto& member : channel.members) {
        if (!(member.fraction > 0.0) || member.fraction > 1.0 + 1e-9) {
          violations.push_back("fap '" + fap.id + "' channel " +
                               std::to_string(ci) + ": fraction of '" +
                               member.subarea_id + "' outside (0, 1]");
        }
        load += member.fraction;
      }
      if (load > 1.0 + 1e-9) {
        violations.push_back("fap '" + fap.id + "' channel " +
                             std::to_string(ci) + ": members sum to " +
                             std::to_string(load) + " > 1");
      }
    }
    if (fap_bandwidth > fap.channel_budget * base * (1.0 + 1e-9)) {
      violations.push_back("fap '" + fap.id + "': bandwidth exceeds budget of " +
                           std::to_string(fap.channel_budget) + " channels");
    }
  }

  const auto capacity = effective_capacity_bps(scenario, deployment, models);
  for (const auto& subarea : scenario.subareas) {
    const auto it = capacity.find(subarea.id);
    if (it == capacity.end()) {
      violations.push_back("subarea '" + subarea.id + "': uncovered");
      continue;
    }
    const SliceSpec* slice = scenario.find_slice(subarea.slice_id);
    const double required = required_capacity_bps(*slice, scenario.traffic);
    if (it->second < required * (1.0 - 1e-9)) {
      violations.push_back("subarea '" + subarea.id +
                           "': effective capacity below demand");
    }
  }
  return violations;
}

}  // namespace slicer
