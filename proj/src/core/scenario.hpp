#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/geom.hpp"
#include "core/queueing.hpp"
#include "core/radio.hpp"

namespace slicer {

struct SliceSpec {
  std::string id;
  std::string kind;  // free text, e.g. "eMBB", "URLLC"
  double throughput_demand_bps = 0.0;  // T^s
  double max_mean_delay_s = 0.0;       // H^s
  double target_ber = 0.0;
};

struct Subarea {
  std::string id;
  Vec3 center;  // on the cuboid base, z = 0
  double side_m = 10.0;
  std::string slice_id;
};

struct CandidateSite {
  std::string id;
  Vec3 position;
  double activation_cost = 1000.0;
  int channel_budget = 8;
};

struct Scenario {
  CuboidDims cuboid_dims;
  double cell_side_m = 10.0;
  std::vector<double> lattice_levels_m;  // candidate altitudes
  std::vector<SliceSpec> slices;
  std::vector<Subarea> subareas;
  std::vector<CandidateSite> sites;
  RadioConfig radio;
  TrafficModel traffic;
  double reconfig_period_s = 30.0;
  std::uint64_t rng_seed = 0;
  int snapshot_index = 0;

  const SliceSpec* find_slice(const std::string& id) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

// Regular site lattice over the cuboid footprint: one candidate per
// (horizontal cell, altitude), cell centers, row-major with the altitude
// varying fastest. Throws when the pitch exceeds the footprint.
std::vector<CandidateSite> discretize_sites(const CuboidDims& dims,
                                            double horizontal_pitch_m,
                                            const std::vector<double>& altitudes_m,
                                            double activation_cost,
                                            int channel_budget);

struct GenerateParams {
  CuboidDims dims{100.0, 100.0, 20.0};
  double cell_side_m = 10.0;
  double occupancy_fraction = 0.0;  // fraction of base cells holding a user
  std::vector<SliceSpec> slices;
  std::uint64_t rng_seed = 0;
  int snapshot_index = 0;
  double site_pitch_m = 25.0;
  std::vector<double> site_altitudes_m = {10.0, 20.0};
  double activation_cost = 1000.0;
  int channel_budget = 8;
  RadioConfig radio;
  TrafficModel traffic;
  double reconfig_period_s = 30.0;
};

// Seeded scenario: ceil(occupancy * cells) distinct occupied cells, slice
// membership uniform per subarea. Same seed, same scenario, byte for byte.
Scenario generate_random_scenario(const GenerateParams& params);

// eMBB 20 Mbit/s / 5 ms / BER 1e-5 and URLLC 4 Mbit/s / 1 ms / BER 1e-10.
std::vector<SliceSpec> default_slices();

ValidationReport validate(const Scenario& scenario);

}  // namespace slicer
