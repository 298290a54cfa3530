#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/geom.hpp"
#include "core/scenario.hpp"

namespace slicer {

// One candidate-UAV activation instance: demands in bit/s per subarea,
// per-(site, subarea) link capacity in bit/s, per-site channel budget and
// activation cost.
struct PlacementProblem {
  struct Site {
    std::string id;
    Vec3 position;
    double activation_cost = 0.0;
    double channel_budget = 0.0;
  };
  struct Demand {
    std::string subarea_id;
    std::string slice_id;
    double required_bps = 0.0;  // throughput demand already delay-augmented
  };

  std::vector<Site> sites;
  std::vector<Demand> demands;
  // link_capacity_bps[site][subarea]; zero means no usable link
  std::vector<std::vector<double>> link_capacity_bps;

  // Channel-equivalents a subarea needs from a given site; +inf when the
  // site cannot serve it at all (zero capacity or over budget alone).
  double channel_load(size_t site, size_t subarea) const;

  // Subareas with no usable link to any site.
  std::vector<std::string> uncoverable_subareas() const;
};

struct PlacementSolution {
  enum class Status { optimal, infeasible };
  Status status = Status::infeasible;
  std::vector<bool> active;                        // per site
  std::vector<int> assignment;                     // per subarea, -1 unassigned
  std::vector<std::vector<double>> channel_equiv;  // r[site][subarea]
  double objective = 0.0;
  std::string infeasible_witness;  // subarea id when infeasible
};

struct SolutionMetrics {
  int n_uavs = 0;
  double total_channel_equiv = 0.0;
  double objective = 0.0;
};

// Capacity matrix + demand vector for one scenario, using each slice's
// fitted capacity model. Individually uncoverable subareas stay in the
// problem and are reported by uncoverable_subareas().
PlacementProblem build_problem(const Scenario& scenario,
                               const std::map<double, CapacityModel>& models);

// Cost-optimal activation via best-first search over activation sets in
// nondecreasing cost order; each candidate set is accepted iff an exact
// backtracking assignment fits every subarea within the channel budgets.
// Ties broken by the lexicographically smallest active-site index set.
PlacementSolution solve_exact(const PlacementProblem& problem);

// Brute-force oracle: enumerates all 2^|sites| activation patterns
// (refuses above 12 sites) with an independent assignment search.
PlacementSolution solve_exhaustive(const PlacementProblem& problem);

SolutionMetrics solution_metrics(const PlacementSolution& solution,
                                 const PlacementProblem& problem);

// CPLEX LP text of the exact MILP, for cross-checks with external solvers.
std::string export_lp(const PlacementProblem& problem);

}  // namespace slicer
