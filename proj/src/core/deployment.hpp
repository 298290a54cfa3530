#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/channel_plan.hpp"
#include "core/geom.hpp"
#include "core/scenario.hpp"

namespace slicer {

// A concrete flying network: FAP positions plus the physical channels each
// FAP runs and how their airtime is split across subareas. Produced by the
// exact solver (after packing) and by both baseline strategies.
struct DeployedFap {
  std::string id;
  Vec3 position;
  int channel_budget = 8;  // in base-width channels
  std::vector<Channel> channels;
};

struct Deployment {
  std::string method;  // slicer | geometric_center | kmeans
  std::string status = "ok";  // ok | infeasible
  std::vector<DeployedFap> faps;
  double objective = 0.0;          // activation cost (slicer only)
  bool has_objective = false;
  std::map<std::string, int> per_slice_k;  // kmeans cluster counts
  std::string infeasible_witness;
  std::uint64_t scenario_seed = 0;
  double base_bandwidth_hz = 20e6;  // width of one channel-equivalent

  int n_faps() const { return static_cast<int>(faps.size()); }
  double total_bandwidth_hz() const;
};

// Per-subarea effective capacity: sum over channel memberships of
// fraction * capacity of that channel at the subarea's slice BER,
// accounting for channel width. Unserved subareas are absent.
std::map<std::string, double> effective_capacity_bps(
    const Scenario& scenario, const Deployment& deployment,
    const std::map<double, CapacityModel>& models);

// Channel width in base channels; throws when the bandwidth is not a
// positive integer multiple of the configured base width.
int width_multiple(const Channel& channel, const RadioConfig& radio);

// Re-derives effective capacities and checks budgets, per-channel loads and
// demand satisfaction. Violations are data, not errors: baseline
// deployments are allowed to fail and be measured anyway.
std::vector<std::string> verify_plan(
    const Scenario& scenario, const Deployment& deployment,
    const std::map<double, CapacityModel>& models);

}  // namespace slicer
