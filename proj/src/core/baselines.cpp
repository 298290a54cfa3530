#include "core/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/queueing.hpp"
#include "core/rng.hpp"

namespace slicer {

namespace {

constexpr std::uint64_t kGeoAltStream = 0x67656f61;
constexpr std::uint64_t kKmeansStream = 0x6b6d6e73;

double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<int> assign_to_nearest(const std::vector<Point2>& points,
                                   const std::vector<Point2>& centroids) {
  std::vector<int> assignment(points.size(), 0);
  for (size_t p = 0; p < points.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < centroids.size(); ++c) {
      const double d = sq_dist(points[p], centroids[c]);
      if (d < best) {
        best = d;
        assignment[p] = static_cast<int>(c);
      }
    }
  }
  return assignment;
}

const CapacityModel& model_for(const std::map<double, CapacityModel>& models,
                               double ber) {
  auto it = models.find(ber);
  if (it != models.end()) return it->second;
  for (const auto& [key, model] : models) {
    if (std::abs(key - ber) <= 1e-12 * std::max(key, ber)) return model;
  }
  raise_invalid("no capacity model for requested BER");
}

double draw_altitude(const Scenario& scenario, std::mt19937_64& rng) {
  const auto& levels = scenario.lattice_levels_m;
  if (levels.empty()) {
    raise_invalid("baselines: scenario has no candidate altitudes");
  }
  return levels[bounded(rng, levels.size())];
}

// Smallest single-channel width (in base channels) of 20/40/80/160 MHz
// style doubling that covers `share` base channels.
int single_channel_width(double share, int max_channels) {
  int width = 1;
  while (width < share - 1e-9 && width < max_channels) {
    width *= 2;
  }
  if (width < share - 1e-9) {
    raise(ErrorKind::infeasible,
          "single channel cannot carry the requested share");
  }
  return std::min(width, max_channels);
}

}  // namespace

std::vector<Point2> lloyd_iteration(const std::vector<Point2>& points,
                                    std::vector<Point2> centroids) {
  if (points.empty()) {
    raise_invalid("lloyd_iteration: need at least one point");
  }
  if (centroids.empty()) {
    raise_invalid("lloyd_iteration: need at least one centroid");
  }
  const auto assignment = assign_to_nearest(points, centroids);
  std::vector<double> sx(centroids.size(), 0.0), sy(centroids.size(), 0.0);
  std::vector<int> count(centroids.size(), 0);
  for (size_t p = 0; p < points.size(); ++p) {
    sx[assignment[p]] += points[p].x;
    sy[assignment[p]] += points[p].y;
    ++count[assignment[p]];
  }
  std::vector<bool> reseeded(points.size(), false);
  for (size_t c = 0; c < centroids.size(); ++c) {
    if (count[c] > 0) {
      centroids[c] = {sx[c] / count[c], sy[c] / count[c]};
      continue;
    }
    // Empty cluster: jump to the point currently farthest from its centroid.
    double worst = -1.0;
    size_t pick = 0;
    for (size_t p = 0; p < points.size(); ++p) {
      if (reseeded[p]) continue;
      const double d = sq_dist(points[p], centroids[assignment[p]]);
      if (d > worst) {
        worst = d;
        pick = p;
      }
    }
    centroids[c] = points[pick];
    reseeded[pick] = true;
  }
  return centroids;
}

Deployment geometric_center_placement(
    const Scenario& scenario, const std::map<double, CapacityModel>& models) {
  Deployment deployment;
  deployment.method = "geometric_center";
  deployment.scenario_seed = scenario.rng_seed;
  deployment.base_bandwidth_hz = scenario.radio.channel_bandwidth_hz;
  auto rng = make_rng(scenario.rng_seed, kGeoAltStream);

  for (const auto& slice : scenario.slices) {
    std::vector<const Subarea*> members;
    for (const auto& sub : scenario.subareas) {
      if (sub.slice_id == slice.id) members.push_back(&sub);
    }
    if (members.empty()) continue;

    Point2 centroid{0.0, 0.0};
    for (const auto* sub : members) {
      centroid.x += sub->center.x;
      centroid.y += sub->center.y;
    }
    centroid.x /= static_cast<double>(members.size());
    centroid.y /= static_cast<double>(members.size());

    DeployedFap fap;
    fap.id = "g_" + slice.id;
    fap.position = {centroid.x, centroid.y, draw_altitude(scenario, rng)};
    fap.channel_budget = scenario.radio.max_channels_total;

    // One full-budget channel; airtime split proportionally to each
    // subarea's share of it, so slack headroom scales every user up alike.
    const int width = scenario.radio.max_channels_total;
    const auto& model = model_for(models, slice.target_ber);
    std::vector<std::pair<const Subarea*, double>> shares;
    double share_sum = 0.0;
    for (const auto* sub : members) {
      const double snr =
          snr_db(scenario.radio, distance(fap.position, sub->center));
      const double cap = capacity_for_width_bps(model, snr, width);
      if (!(cap > 0.0)) continue;  // beyond cutoff: airtime would be wasted
      const double share =
          required_capacity_bps(slice, scenario.traffic) / cap;
      shares.emplace_back(sub, share);
      share_sum += share;
    }
    Channel channel;
    channel.bandwidth_hz = width * scenario.radio.channel_bandwidth_hz;
    for (const auto& [sub, share] : shares) {
      channel.members.push_back({sub->id, share / share_sum});
    }
    if (!channel.members.empty()) {
      fap.channels.push_back(std::move(channel));
    }
    deployment.faps.push_back(std::move(fap));
  }
  return deployment;
}

Deployment kmeans_placement(
    const Scenario& scenario,
    const std::map<std::string, double>& min_channel_share) {
  Deployment deployment;
  deployment.method = "kmeans";
  deployment.scenario_seed = scenario.rng_seed;
  deployment.base_bandwidth_hz = scenario.radio.channel_bandwidth_hz;

  std::uint64_t slice_ordinal = 0;
  for (const auto& slice : scenario.slices) {
    std::vector<const Subarea*> members;
    for (const auto& sub : scenario.subareas) {
      if (sub.slice_id == slice.id) members.push_back(&sub);
    }
    ++slice_ordinal;
    if (members.empty()) continue;

    std::vector<Point2> points;
    points.reserve(members.size());
    std::vector<double> shares;
    for (const auto* sub : members) {
      points.push_back({sub->center.x, sub->center.y});
      const auto it = min_channel_share.find(sub->id);
      if (it == min_channel_share.end()) {
        raise_invalid("kmeans_placement: missing channel share for '" +
                      sub->id + "'");
      }
      shares.push_back(it->second);
    }

    auto rng = make_rng(scenario.rng_seed, kKmeansStream + slice_ordinal);
    const int max_channels = scenario.radio.max_channels_total;

    for (int k = 1;; ++k) {
      if (k > static_cast<int>(members.size())) {
        raise(ErrorKind::infeasible,
              "kmeans_placement: slice '" + slice.id +
                  "' unsatisfiable even with one FAP per subarea");
      }
      // Seed centroids on k distinct subarea positions.
      std::vector<size_t> pick(members.size());
      for (size_t i = 0; i < pick.size(); ++i) pick[i] = i;
      for (int i = 0; i < k; ++i) {
        const size_t j = i + static_cast<size_t>(
                                 bounded(rng, pick.size() - i));
        std::swap(pick[i], pick[j]);
      }
      std::vector<Point2> centroids;
      for (int i = 0; i < k; ++i) centroids.push_back(points[pick[i]]);

      auto assignment = assign_to_nearest(points, centroids);
      for (int iter = 0; iter < 100; ++iter) {
        centroids = lloyd_iteration(points, centroids);
        auto next = assign_to_nearest(points, centroids);
        if (next == assignment) break;
        assignment = std::move(next);
      }

      std::vector<double> cluster_share(k, 0.0);
      for (size_t p = 0; p < points.size(); ++p) {
        cluster_share[assignment[p]] += shares[p];
      }
      const bool fits_budget =
          std::all_of(cluster_share.begin(), cluster_share.end(),
                      [&](double s) { return s <= max_channels + 1e-9; });
      if (!fits_budget) continue;

      for (int c = 0; c < k; ++c) {
        std::vector<size_t> cluster_points;
        for (size_t p = 0; p < points.size(); ++p) {
          if (assignment[p] == c) cluster_points.push_back(p);
        }
        DeployedFap fap;
        fap.id = "k_" + slice.id + "_" + std::to_string(c);
        fap.position = {centroids[c].x, centroids[c].y,
                        draw_altitude(scenario, rng)};
        fap.channel_budget = max_channels;
        if (!cluster_points.empty()) {
          Channel channel;
          const int width =
              single_channel_width(cluster_share[c], max_channels);
          channel.bandwidth_hz = width * scenario.radio.channel_bandwidth_hz;
          for (size_t p : cluster_points) {
            channel.members.push_back(
                {members[p]->id, shares[p] / cluster_share[c]});
          }
          fap.channels.push_back(std::move(channel));
        }
        deployment.faps.push_back(std::move(fap));
      }
      deployment.per_slice_k[slice.id] = k;
      break;
    }
  }
  return deployment;
}

}  // namespace slicer
