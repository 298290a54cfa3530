#include "core/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace slicer {

namespace {

Json vec3_to_json(const Vec3& v) {
  return Json{{"x", v.x}, {"y", v.y}, {"z", v.z}};
}

Vec3 vec3_from_json(const Json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(),
          j.at("z").get<double>()};
}

std::string format_ber_key(double ber) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", ber);
  return buf;
}

[[noreturn]] void rethrow_as_parse(const std::exception& e) {
  raise(ErrorKind::parse, std::string("malformed document: ") + e.what());
}

}  // namespace

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["cuboid_dims"] =
      Json{{"x", s.cuboid_dims.x}, {"y", s.cuboid_dims.y}, {"z", s.cuboid_dims.z}};
  j["cell_side"] = s.cell_side_m;
  j["lattice_levels"] = s.lattice_levels_m;
  j["slices"] = Json::array();
  for (const auto& slice : s.slices) {
    j["slices"].push_back(Json{{"id", slice.id},
                               {"kind", slice.kind},
                               {"throughput_demand", slice.throughput_demand_bps},
                               {"max_mean_delay", slice.max_mean_delay_s},
                               {"target_ber", slice.target_ber}});
  }
  j["subareas"] = Json::array();
  for (const auto& sub : s.subareas) {
    j["subareas"].push_back(Json{{"id", sub.id},
                                 {"center", vec3_to_json(sub.center)},
                                 {"side", sub.side_m},
                                 {"slice_id", sub.slice_id}});
  }
  j["sites"] = Json::array();
  for (const auto& site : s.sites) {
    j["sites"].push_back(Json{{"id", site.id},
                              {"position", vec3_to_json(site.position)},
                              {"activation_cost", site.activation_cost},
                              {"channel_budget", site.channel_budget}});
  }
  j["radio"] = Json{{"tx_power", s.radio.tx_power_dbm},
                    {"tx_gain", s.radio.tx_gain_dbi},
                    {"rx_gain", s.radio.rx_gain_dbi},
                    {"carrier_freq", s.radio.carrier_freq_hz},
                    {"noise_power", s.radio.noise_power_dbm},
                    {"channel_bandwidth", s.radio.channel_bandwidth_hz},
                    {"max_channels_total", s.radio.max_channels_total}};
  j["traffic"] = Json{{"packet_size_bits", s.traffic.packet_size_bits},
                      {"arrival_process", s.traffic.arrival_process},
                      {"delay_model", to_string(s.traffic.delay_model)}};
  j["reconfig_period"] = s.reconfig_period_s;
  j["rng_seed"] = s.rng_seed;
  j["snapshot_index"] = s.snapshot_index;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  try {
    Scenario s;
    const auto& dims = j.at("cuboid_dims");
    s.cuboid_dims = {dims.at("x").get<double>(), dims.at("y").get<double>(),
                     dims.at("z").get<double>()};
    s.cell_side_m = j.at("cell_side").get<double>();
    s.lattice_levels_m = j.at("lattice_levels").get<std::vector<double>>();
    for (const auto& slice : j.at("slices")) {
      s.slices.push_back({slice.at("id").get<std::string>(),
                          slice.at("kind").get<std::string>(),
                          slice.at("throughput_demand").get<double>(),
                          slice.at("max_mean_delay").get<double>(),
                          slice.at("target_ber").get<double>()});
    }
    for (const auto& sub : j.at("subareas")) {
      s.subareas.push_back({sub.at("id").get<std::string>(),
                            vec3_from_json(sub.at("center")),
                            sub.at("side").get<double>(),
                            sub.at("slice_id").get<std::string>()});
    }
    for (const auto& site : j.at("sites")) {
      s.sites.push_back({site.at("id").get<std::string>(),
                         vec3_from_json(site.at("position")),
                         site.at("activation_cost").get<double>(),
                         site.at("channel_budget").get<int>()});
    }
    const auto& radio = j.at("radio");
    s.radio.tx_power_dbm = radio.at("tx_power").get<double>();
    s.radio.tx_gain_dbi = radio.at("tx_gain").get<double>();
    s.radio.rx_gain_dbi = radio.at("rx_gain").get<double>();
    s.radio.carrier_freq_hz = radio.at("carrier_freq").get<double>();
    s.radio.noise_power_dbm = radio.at("noise_power").get<double>();
    s.radio.channel_bandwidth_hz = radio.at("channel_bandwidth").get<double>();
    s.radio.max_channels_total = radio.at("max_channels_total").get<int>();
    const auto& traffic = j.at("traffic");
    s.traffic.packet_size_bits = traffic.at("packet_size_bits").get<double>();
    s.traffic.arrival_process = traffic.at("arrival_process").get<std::string>();
    s.traffic.delay_model =
        delay_model_from_string(traffic.at("delay_model").get<std::string>());
    s.reconfig_period_s = j.at("reconfig_period").get<double>();
    s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    s.snapshot_index = j.at("snapshot_index").get<int>();
    return s;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

Json mcs_table_to_json(const McsTable& table) {
  Json j = Json::array();
  for (const auto& entry : table) {
    Json thresholds;
    for (const auto& [ber, thr] : entry.min_snr_by_ber) {
      thresholds[format_ber_key(ber)] = thr;
    }
    j.push_back(Json{{"index", entry.index},
                     {"phy_rate", entry.phy_rate_bps},
                     {"min_snr_by_ber", thresholds}});
  }
  return j;
}

McsTable mcs_table_from_json(const Json& j) {
  try {
    McsTable table;
    for (const auto& item : j) {
      McsEntry entry;
      entry.index = item.at("index").get<int>();
      entry.phy_rate_bps = item.at("phy_rate").get<double>();
      for (const auto& [key, value] : item.at("min_snr_by_ber").items()) {
        entry.min_snr_by_ber[std::stod(key)] = value.get<double>();
      }
      table.push_back(std::move(entry));
    }
    return table;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

Json solution_to_json(const Deployment& d) {
  Json j;
  j["method"] = d.method;
  j["status"] = d.status;
  if (d.has_objective) j["objective"] = d.objective;
  j["rng_seed"] = d.scenario_seed;
  j["base_bandwidth"] = d.base_bandwidth_hz;
  if (!d.per_slice_k.empty()) {
    Json k;
    for (const auto& [slice, count] : d.per_slice_k) k[slice] = count;
    j["per_slice_k"] = k;
  }
  if (!d.infeasible_witness.empty()) j["witness"] = d.infeasible_witness;
  j["faps"] = Json::array();
  for (const auto& fap : d.faps) {
    Json channel_equiv;
    std::map<std::string, double> equiv;
    for (const auto& channel : fap.channels) {
      const int width = static_cast<int>(
          std::lround(channel.bandwidth_hz / d.base_bandwidth_hz));
      for (const auto& member : channel.members) {
        equiv[member.subarea_id] += member.fraction * width;
      }
    }
    Json served = Json::array();
    for (const auto& [subarea, r] : equiv) {
      served.push_back(subarea);
      channel_equiv[subarea] = r;
    }
    j["faps"].push_back(Json{{"id", fap.id},
                             {"position", vec3_to_json(fap.position)},
                             {"channel_budget", fap.channel_budget},
                             {"served", served},
                             {"channel_equiv", channel_equiv}});
  }
  return j;
}

Json plan_to_json(const Deployment& d) {
  Json j;
  j["method"] = d.method;
  j["faps"] = Json::array();
  Json per_fap_channels;
  for (const auto& fap : d.faps) {
    Json channels = Json::array();
    for (const auto& channel : fap.channels) {
      Json members = Json::array();
      for (const auto& member : channel.members) {
        members.push_back(Json{{"subarea_id", member.subarea_id},
                               {"fraction", member.fraction}});
      }
      channels.push_back(
          Json{{"bandwidth", channel.bandwidth_hz}, {"members", members}});
    }
    j["faps"].push_back(Json{{"fap_id", fap.id},
                             {"position", vec3_to_json(fap.position)},
                             {"channel_budget", fap.channel_budget},
                             {"channels", channels}});
    per_fap_channels[fap.id] = fap.channels.size();
  }
  j["totals"] = Json{{"total_bandwidth", d.total_bandwidth_hz()},
                     {"base_bandwidth", d.base_bandwidth_hz},
                     {"channels_per_fap", per_fap_channels}};
  return j;
}

Deployment deployment_from_json(const Json& solution, const Json& plan) {
  try {
    Deployment d;
    d.method = solution.at("method").get<std::string>();
    d.status = solution.at("status").get<std::string>();
    if (solution.contains("objective")) {
      d.objective = solution.at("objective").get<double>();
      d.has_objective = true;
    }
    d.scenario_seed = solution.at("rng_seed").get<std::uint64_t>();
    d.base_bandwidth_hz = solution.value("base_bandwidth", d.base_bandwidth_hz);
    if (solution.contains("per_slice_k")) {
      for (const auto& [slice, count] : solution.at("per_slice_k").items()) {
        d.per_slice_k[slice] = count.get<int>();
      }
    }
    if (solution.contains("witness")) {
      d.infeasible_witness = solution.at("witness").get<std::string>();
    }
    for (const auto& fap_json : plan.at("faps")) {
      DeployedFap fap;
      fap.id = fap_json.at("fap_id").get<std::string>();
      fap.position = vec3_from_json(fap_json.at("position"));
      fap.channel_budget = fap_json.at("channel_budget").get<int>();
      for (const auto& channel_json : fap_json.at("channels")) {
        Channel channel;
        channel.bandwidth_hz = channel_json.at("bandwidth").get<double>();
        for (const auto& member : channel_json.at("members")) {
          channel.members.push_back(
              {member.at("subarea_id").get<std::string>(),
               member.at("fraction").get<double>()});
        }
        fap.channels.push_back(std::move(channel));
      }
      d.faps.push_back(std::move(fap));
    }
    return d;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

Json report_to_json(const EvaluationReport& r) {
  Json j;
  j["method"] = r.method;
  j["scenario_rng_seed"] = r.scenario_seed;
  j["n_subareas"] = r.n_subareas;
  j["per_subarea"] = Json::array();
  for (const auto& outcome : r.per_subarea) {
    Json o;
    o["subarea_id"] = outcome.subarea_id;
    o["slice_id"] = outcome.slice_id;
    o["achieved_capacity"] = outcome.achieved_capacity_bps;
    if (std::isfinite(outcome.analytic_delay_s)) {
      o["analytic_delay"] = outcome.analytic_delay_s;
    } else {
      o["analytic_delay"] = nullptr;
    }
    o["sla_ok"] = outcome.sla_ok;
    o["reason"] = outcome.reason;
    j["per_subarea"].push_back(std::move(o));
  }
  Json aggregates;
  aggregates["n_uavs"] = r.n_uavs;
  aggregates["total_bandwidth"] = r.total_bandwidth_hz;
  aggregates["sla_violation_count"] = r.sla_violation_count;
  if (r.has_objective) aggregates["objective"] = r.objective;
  j["aggregates"] = std::move(aggregates);
  j["capacity_models"] = Json::array();
  for (const auto& model : r.capacity_models) {
    j["capacity_models"].push_back(
        Json{{"target_ber", model.target_ber},
             {"slope", model.slope_bps_per_db},
             {"intercept", model.intercept_bps},
             {"snr_cutoff", model.snr_cutoff_db},
             {"rate_ceiling", model.rate_ceiling_bps},
             {"max_residual", model.max_residual_bps}});
  }
  if (r.simulated) {
    Json distributions;
    for (const auto& [name, series] : r.distributions) {
      Json points = Json::array();
      for (const auto& [x, f] : series.points) {
        points.push_back(Json::array({x, f}));
      }
      distributions[name] = Json{{"kind", series.kind}, {"points", points}};
    }
    j["distributions"] = std::move(distributions);
    j["simulation"] = Json{{"duration", r.sim_duration_s}, {"runs", r.sim_runs}};
  }
  return j;
}

EvaluationReport report_from_json(const Json& j) {
  try {
    EvaluationReport r;
    r.method = j.at("method").get<std::string>();
    r.scenario_seed = j.at("scenario_rng_seed").get<std::uint64_t>();
    r.n_subareas = j.at("n_subareas").get<int>();
    for (const auto& o : j.at("per_subarea")) {
      SubareaOutcome outcome;
      outcome.subarea_id = o.at("subarea_id").get<std::string>();
      outcome.slice_id = o.at("slice_id").get<std::string>();
      outcome.achieved_capacity_bps = o.at("achieved_capacity").get<double>();
      outcome.analytic_delay_s =
          o.at("analytic_delay").is_null()
              ? std::numeric_limits<double>::infinity()
              : o.at("analytic_delay").get<double>();
      outcome.sla_ok = o.at("sla_ok").get<bool>();
      outcome.reason = o.at("reason").get<std::string>();
      r.per_subarea.push_back(std::move(outcome));
    }
    const auto& aggregates = j.at("aggregates");
    r.n_uavs = aggregates.at("n_uavs").get<int>();
    r.total_bandwidth_hz = aggregates.at("total_bandwidth").get<double>();
    r.sla_violation_count = aggregates.at("sla_violation_count").get<int>();
    if (aggregates.contains("objective")) {
      r.objective = aggregates.at("objective").get<double>();
      r.has_objective = true;
    }
    for (const auto& m : j.value("capacity_models", Json::array())) {
      CapacityModel model;
      model.target_ber = m.at("target_ber").get<double>();
      model.slope_bps_per_db = m.at("slope").get<double>();
      model.intercept_bps = m.at("intercept").get<double>();
      model.snr_cutoff_db = m.at("snr_cutoff").get<double>();
      model.rate_ceiling_bps = m.at("rate_ceiling").get<double>();
      model.max_residual_bps = m.at("max_residual").get<double>();
      r.capacity_models.push_back(model);
    }
    if (j.contains("distributions")) {
      r.simulated = true;
      for (const auto& [name, series_json] : j.at("distributions").items()) {
        MetricSeries series;
        series.name = name;
        series.kind = series_json.at("kind").get<std::string>();
        for (const auto& point : series_json.at("points")) {
          series.points.emplace_back(point.at(0).get<double>(),
                                     point.at(1).get<double>());
        }
        r.distributions[name] = std::move(series);
      }
      r.sim_duration_s = j.at("simulation").at("duration").get<double>();
      r.sim_runs = j.at("simulation").at("runs").get<int>();
    }
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

GenerateParams generate_params_from_json(const Json& j) {
  try {
    GenerateParams params;
    if (j.contains("dims")) {
      const auto& dims = j.at("dims");
      params.dims = {dims.at("x").get<double>(), dims.at("y").get<double>(),
                     dims.at("z").get<double>()};
    }
    params.cell_side_m = j.value("cell_side", params.cell_side_m);
    if (j.contains("slices")) {
      for (const auto& slice : j.at("slices")) {
        params.slices.push_back(
            {slice.at("id").get<std::string>(),
             slice.at("kind").get<std::string>(),
             slice.at("throughput_demand").get<double>(),
             slice.at("max_mean_delay").get<double>(),
             slice.at("target_ber").get<double>()});
      }
    } else {
      params.slices = default_slices();
    }
    const auto cols =
        static_cast<double>(static_cast<size_t>(params.dims.x / params.cell_side_m));
    const auto rows =
        static_cast<double>(static_cast<size_t>(params.dims.y / params.cell_side_m));
    if (j.contains("users")) {
      const double cells = cols * rows;
      if (cells <= 0.0) {
        raise_invalid("generate: footprint holds no cells");
      }
      params.occupancy_fraction = j.at("users").get<double>() / cells;
    }
    params.occupancy_fraction =
        j.value("occupancy_fraction", params.occupancy_fraction);
    params.rng_seed = j.value("rng_seed", params.rng_seed);
    params.snapshot_index = j.value("snapshot_index", params.snapshot_index);
    params.site_pitch_m = j.value("site_pitch", params.site_pitch_m);
    if (j.contains("site_altitudes")) {
      params.site_altitudes_m =
          j.at("site_altitudes").get<std::vector<double>>();
    }
    params.activation_cost = j.value("activation_cost", params.activation_cost);
    params.channel_budget = j.value("channel_budget", params.channel_budget);
    if (j.contains("radio")) {
      const auto& radio = j.at("radio");
      params.radio.tx_power_dbm = radio.value("tx_power", params.radio.tx_power_dbm);
      params.radio.tx_gain_dbi = radio.value("tx_gain", params.radio.tx_gain_dbi);
      params.radio.rx_gain_dbi = radio.value("rx_gain", params.radio.rx_gain_dbi);
      params.radio.carrier_freq_hz =
          radio.value("carrier_freq", params.radio.carrier_freq_hz);
      params.radio.noise_power_dbm =
          radio.value("noise_power", params.radio.noise_power_dbm);
      params.radio.channel_bandwidth_hz =
          radio.value("channel_bandwidth", params.radio.channel_bandwidth_hz);
      params.radio.max_channels_total =
          radio.value("max_channels_total", params.radio.max_channels_total);
    }
    if (j.contains("traffic")) {
      const auto& traffic = j.at("traffic");
      params.traffic.packet_size_bits =
          traffic.value("packet_size_bits", params.traffic.packet_size_bits);
      params.traffic.arrival_process =
          traffic.value("arrival_process", params.traffic.arrival_process);
      if (traffic.contains("delay_model")) {
        params.traffic.delay_model = delay_model_from_string(
            traffic.at("delay_model").get<std::string>());
      }
    }
    params.reconfig_period_s =
        j.value("reconfig_period", params.reconfig_period_s);
    return params;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    rethrow_as_parse(e);
  }
}

std::string metric_series_csv(const MetricSeries& series) {
  std::ostringstream csv;
  csv.precision(12);
  csv << "x,F\n";
  for (const auto& [x, f] : series.points) {
    csv << x << ',' << f << '\n';
  }
  return csv.str();
}

}  // namespace slicer
