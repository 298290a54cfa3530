#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace slicer {

namespace {

constexpr std::uint64_t kCellStream = 0x63656c6c;   // occupied-cell draw
constexpr std::uint64_t kSliceStream = 0x736c6963;  // slice membership draw

std::string subarea_name(size_t i) { return "a" + std::to_string(i); }

}  // namespace

const SliceSpec* Scenario::find_slice(const std::string& id) const {
  for (const auto& s : slices) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<CandidateSite> discretize_sites(const CuboidDims& dims,
                                            double horizontal_pitch_m,
                                            const std::vector<double>& altitudes_m,
                                            double activation_cost,
                                            int channel_budget) {
  if (!(horizontal_pitch_m > 0.0)) {
    raise_invalid("discretize_sites: pitch must be positive");
  }
  if (altitudes_m.empty()) {
    raise_invalid("discretize_sites: need at least one altitude");
  }
  for (double alt : altitudes_m) {
    if (!(alt > 0.0) || alt > dims.z) {
      raise_invalid("discretize_sites: altitudes must lie in (0, Z]");
    }
  }
  const auto nx = static_cast<size_t>(dims.x / horizontal_pitch_m);
  const auto ny = static_cast<size_t>(dims.y / horizontal_pitch_m);
  if (nx == 0 || ny == 0) {
    raise(ErrorKind::invalid_argument,
          "discretize_sites: pitch exceeds the footprint, empty lattice");
  }
  std::vector<CandidateSite> sites;
  sites.reserve(nx * ny * altitudes_m.size());
  for (size_t iy = 0; iy < ny; ++iy) {
    for (size_t ix = 0; ix < nx; ++ix) {
      for (double alt : altitudes_m) {
        CandidateSite site;
        site.id = "u" + std::to_string(sites.size());
        site.position = {(ix + 0.5) * horizontal_pitch_m,
                         (iy + 0.5) * horizontal_pitch_m, alt};
        site.activation_cost = activation_cost;
        site.channel_budget = channel_budget;
        sites.push_back(std::move(site));
      }
    }
  }
  return sites;
}

std::vector<SliceSpec> default_slices() {
  return {
      {"embb", "eMBB", 20e6, 5e-3, 1e-5},
      {"urllc", "URLLC", 4e6, 1e-3, 1e-10},
  };
}

Scenario generate_random_scenario(const GenerateParams& params) {
  if (!(params.occupancy_fraction > 0.0) || params.occupancy_fraction > 1.0) {
    raise_invalid("generate: occupancy fraction must lie in (0, 1]");
  }
  if (params.slices.empty()) {
    raise_invalid("generate: need at least one slice");
  }
  if (!(params.cell_side_m > 0.0)) {
    raise_invalid("generate: cell side must be positive");
  }
  const auto cols = static_cast<size_t>(params.dims.x / params.cell_side_m);
  const auto rows = static_cast<size_t>(params.dims.y / params.cell_side_m);
  const size_t cells = cols * rows;
  const double wanted = params.occupancy_fraction * static_cast<double>(cells);
  if (wanted < 1.0 - 1e-9) {
    raise_invalid("generate: occupancy places less than one subarea");
  }
  // ceil with a guard against 0.45 * 100 = 45.000000000000007-style noise
  const auto n_subareas = static_cast<size_t>(std::ceil(wanted - 1e-9));

  Scenario scenario;
  scenario.cuboid_dims = params.dims;
  scenario.cell_side_m = params.cell_side_m;
  scenario.lattice_levels_m = params.site_altitudes_m;
  scenario.slices = params.slices;
  scenario.radio = params.radio;
  scenario.traffic = params.traffic;
  scenario.reconfig_period_s = params.reconfig_period_s;
  scenario.rng_seed = params.rng_seed;
  scenario.snapshot_index = params.snapshot_index;
  scenario.sites = discretize_sites(params.dims, params.site_pitch_m,
                                    params.site_altitudes_m,
                                    params.activation_cost,
                                    params.channel_budget);

  // Partial Fisher-Yates over cell indexes, then keep subarea ids stable by
  // sorting the chosen cells.
  std::vector<std::uint32_t> cell_ids(cells);
  for (size_t i = 0; i < cells; ++i) cell_ids[i] = static_cast<std::uint32_t>(i);
  auto cell_rng = make_rng(params.rng_seed, kCellStream);
  for (size_t i = 0; i < n_subareas; ++i) {
    const size_t j = i + static_cast<size_t>(bounded(cell_rng, cells - i));
    std::swap(cell_ids[i], cell_ids[j]);
  }
  std::vector<std::uint32_t> chosen(cell_ids.begin(),
                                    cell_ids.begin() + n_subareas);
  std::sort(chosen.begin(), chosen.end());

  auto slice_rng = make_rng(params.rng_seed, kSliceStream);
  scenario.subareas.reserve(n_subareas);
  for (size_t i = 0; i < n_subareas; ++i) {
    const size_t cell = chosen[i];
    Subarea sub;
    sub.id = subarea_name(i);
    sub.center = {(cell % cols + 0.5) * params.cell_side_m,
                  (cell / cols + 0.5) * params.cell_side_m, 0.0};
    sub.side_m = params.cell_side_m;
    sub.slice_id =
        params.slices[bounded(slice_rng, params.slices.size())].id;
    scenario.subareas.push_back(std::move(sub));
  }
  return scenario;
}

ValidationReport validate(const Scenario& s) {
  ValidationReport report;
  auto bad = [&report](const std::string& msg) {
    report.violations.push_back(msg);
  };

  if (!(s.cuboid_dims.x > 0.0 && s.cuboid_dims.y > 0.0 && s.cuboid_dims.z > 0.0)) {
    bad("cuboid_dims: all dimensions must be positive");
  }
  if (!(s.cell_side_m > 0.0)) {
    bad("cell_side: must be positive");
  }

  std::set<std::string> slice_ids;
  for (const auto& slice : s.slices) {
    if (!slice_ids.insert(slice.id).second) {
      bad("slice '" + slice.id + "': duplicate id");
    }
    if (!(slice.throughput_demand_bps > 0.0)) {
      bad("slice '" + slice.id + "': throughput_demand must be positive");
    }
    if (!(slice.max_mean_delay_s > 0.0)) {
      bad("slice '" + slice.id + "': max_mean_delay must be positive");
    }
    if (!(slice.target_ber > 0.0 && slice.target_ber < 1.0)) {
      bad("slice '" + slice.id + "': target_ber must lie in (0, 1)");
    }
  }

  std::set<std::pair<long, long>> occupied_cells;
  for (const auto& sub : s.subareas) {
    if (sub.center.z != 0.0) {
      bad("subarea '" + sub.id + "': center must sit on the base (z = 0)");
    }
    if (sub.center.x < 0.0 || sub.center.x > s.cuboid_dims.x ||
        sub.center.y < 0.0 || sub.center.y > s.cuboid_dims.y) {
      bad("subarea '" + sub.id + "': subarea outside footprint");
    }
    if (s.find_slice(sub.slice_id) == nullptr) {
      bad("subarea '" + sub.id + "': unresolved slice reference '" +
          sub.slice_id + "'");
    }
    if (s.cell_side_m > 0.0) {
      const auto cx = static_cast<long>(std::floor(sub.center.x / s.cell_side_m));
      const auto cy = static_cast<long>(std::floor(sub.center.y / s.cell_side_m));
      if (!occupied_cells.insert({cx, cy}).second) {
        bad("subarea '" + sub.id + "': lattice cell already occupied");
      }
    }
  }

  for (const auto& site : s.sites) {
    if (site.position.x < 0.0 || site.position.x > s.cuboid_dims.x ||
        site.position.y < 0.0 || site.position.y > s.cuboid_dims.y ||
        site.position.z < 0.0 || site.position.z > s.cuboid_dims.z) {
      bad("site '" + site.id + "': position outside the cuboid");
    }
    if (!(site.activation_cost > 0.0)) {
      bad("site '" + site.id + "': activation_cost must be positive");
    }
    if (site.channel_budget < 1) {
      bad("site '" + site.id + "': channel_budget must be at least 1");
    }
  }

  if (s.reconfig_period_s < 1.0) {
    bad("reconfig_period: must be at least 1 s");
  } else if (s.reconfig_period_s < 10.0) {
    report.warnings.push_back(
        "reconfig_period under 10 s leaves little headroom over the solve time");
  }

  if (!(s.radio.carrier_freq_hz > 0.0)) {
    bad("radio: carrier_freq must be positive");
  }
  if (!(s.radio.channel_bandwidth_hz > 0.0)) {
    bad("radio: channel_bandwidth must be positive");
  }
  if (!(s.radio.noise_power_dbm < s.radio.tx_power_dbm)) {
    bad("radio: noise_power must be below tx_power");
  }
  if (s.radio.max_channels_total < 1) {
    bad("radio: max_channels_total must be at least 1");
  }
  if (!(s.traffic.packet_size_bits > 0.0)) {
    bad("traffic: packet_size_bits must be positive");
  }
  if (s.traffic.arrival_process != "poisson") {
    bad("traffic: arrival_process must be 'poisson'");
  }
  return report;
}

}  // namespace slicer
