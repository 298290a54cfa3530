#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/deployment.hpp"
#include "core/scenario.hpp"

namespace slicer {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// One Lloyd's step: assign points to the nearest centroid, then move every
// centroid to the mean of its members. Centroids that end up empty are
// re-seeded at the point farthest from its assigned centroid.
std::vector<Point2> lloyd_iteration(const std::vector<Point2>& points,
                                    std::vector<Point2> centroids);

// One FAP per slice at the geometric center of its subareas, random
// altitude from the scenario lattice levels, one full-budget channel whose
// airtime is split across the slice's subareas proportionally to demand.
Deployment geometric_center_placement(const Scenario& scenario,
                                      const std::map<double, CapacityModel>& models);

// Per-slice k-means (Lloyd's, seeded init from subarea centers): each
// cluster becomes a FAP carrying one channel sized to the summed
// per-subarea channel share the exact solver computed; K grows until every
// FAP fits its budget. `min_channel_share` maps subarea id to that share.
Deployment kmeans_placement(
    const Scenario& scenario,
    const std::map<std::string, double>& min_channel_share);

}  // namespace slicer
