#include "core/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>

#include "core/channel_plan.hpp"
#include "core/error.hpp"
#include "core/queueing.hpp"

namespace slicer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack for channel-budget comparisons; loads are quotients of
// arbitrary doubles and sums must not flip feasibility on roundoff.
constexpr double kBudgetSlack = 1e-9;

bool fits(double load, double residual, double budget) {
  return load <= residual + budget * kBudgetSlack;
}

int allowed_channels(double budget) {
  return static_cast<int>(std::floor(budget + 1e-9));
}

const CapacityModel& model_for_ber(const std::map<double, CapacityModel>& models,
                                   double ber) {
  auto it = models.find(ber);
  if (it != models.end()) return it->second;
  for (const auto& [key, model] : models) {
    if (std::abs(key - ber) <= 1e-12 * std::max(key, ber)) return model;
  }
  std::ostringstream msg;
  msg << "no capacity model fitted for BER " << ber;
  raise(ErrorKind::invalid_argument, msg.str());
}

// The per-activation-set assignment rule, shared semantics of both solvers:
// subareas in decreasing order of their cheapest load (index breaking
// ties), each to the active site with the largest residual budget after
// placement, accepted only if the site's items still pack into its
// physical channel count by first-fit-decreasing. Deterministic and
// polynomial; a set is "servable" exactly when this construction succeeds.
std::optional<std::vector<int>> spread_assignment(
    const PlacementProblem& p, const std::vector<int>& active) {
  const size_t n = p.demands.size();
  std::vector<size_t> order(n);
  for (size_t a = 0; a < n; ++a) order[a] = a;
  std::vector<double> cheapest(n, kInf);
  for (size_t a = 0; a < n; ++a) {
    for (int u : active) {
      cheapest[a] = std::min(cheapest[a], p.channel_load(u, a));
    }
    if (cheapest[a] == kInf) return std::nullopt;  // uncovered by this set
  }
  std::sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
    return cheapest[lhs] != cheapest[rhs] ? cheapest[lhs] > cheapest[rhs]
                                          : lhs < rhs;
  });

  std::vector<double> residual(p.sites.size(), 0.0);
  std::vector<std::vector<double>> site_items(p.sites.size());
  for (int u : active) residual[u] = p.sites[u].channel_budget;
  std::vector<int> assignment(n, -1);
  for (size_t a : order) {
    int pick = -1;
    double best_score = -kInf;
    for (int u : active) {
      const double load = p.channel_load(u, a);
      if (load == kInf || !fits(load, residual[u], p.sites[u].channel_budget)) {
        continue;
      }
      const double score = residual[u] - load;
      if (score <= best_score) continue;
      site_items[u].push_back(load);
      const bool packs = ffd_channel_count(site_items[u]) <=
                         allowed_channels(p.sites[u].channel_budget);
      site_items[u].pop_back();
      if (packs) {
        best_score = score;
        pick = u;
      }
    }
    if (pick < 0) return std::nullopt;
    const double load = p.channel_load(pick, a);
    residual[pick] -= load;
    site_items[pick].push_back(load);
    assignment[a] = pick;
  }
  return assignment;
}

// Reporting rule shared by both solvers when the budgets (not coverage)
// make the instance infeasible: name the most demanding subarea.
std::string hardest_subarea(const PlacementProblem& p) {
  size_t worst = 0;
  double worst_load = -1.0;
  for (size_t a = 0; a < p.demands.size(); ++a) {
    double best = kInf;
    for (size_t u = 0; u < p.sites.size(); ++u) {
      best = std::min(best, p.channel_load(u, a));
    }
    if (best > worst_load) {
      worst_load = best;
      worst = a;
    }
  }
  return p.demands.empty() ? std::string{} : p.demands[worst].subarea_id;
}

PlacementSolution make_solution(const PlacementProblem& p,
                                const std::vector<int>& assignment,
                                const std::vector<bool>& active) {
  PlacementSolution sol;
  sol.status = PlacementSolution::Status::optimal;
  sol.active = active;
  sol.assignment = assignment;
  sol.channel_equiv.assign(p.sites.size(),
                           std::vector<double>(p.demands.size(), 0.0));
  for (size_t a = 0; a < assignment.size(); ++a) {
    const int u = assignment[a];
    sol.channel_equiv[u][a] = p.channel_load(u, a);
  }
  for (size_t u = 0; u < p.sites.size(); ++u) {
    if (active[u]) sol.objective += p.sites[u].activation_cost;
  }
  return sol;
}

PlacementSolution infeasible_solution(const std::string& witness) {
  PlacementSolution sol;
  sol.status = PlacementSolution::Status::infeasible;
  sol.infeasible_witness = witness;
  return sol;
}

using SiteMask = std::vector<std::uint64_t>;

SiteMask empty_mask(size_t n_sites) { return SiteMask((n_sites + 63) / 64, 0); }

void mask_set(SiteMask& mask, size_t bit) {
  mask[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

bool masks_intersect(const SiteMask& a, const SiteMask& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

}  // namespace

double PlacementProblem::channel_load(size_t site, size_t subarea) const {
  const double c = link_capacity_bps[site][subarea];
  if (!(c > 0.0)) return kInf;
  const double load = demands[subarea].required_bps / c;
  const double budget = sites[site].channel_budget;
  return fits(load, budget, budget) ? load : kInf;
}

std::vector<std::string> PlacementProblem::uncoverable_subareas() const {
  std::vector<std::string> out;
  for (size_t a = 0; a < demands.size(); ++a) {
    bool covered = false;
    for (size_t u = 0; u < sites.size() && !covered; ++u) {
      covered = channel_load(u, a) < kInf;
    }
    if (!covered) out.push_back(demands[a].subarea_id);
  }
  return out;
}

PlacementProblem build_problem(const Scenario& scenario,
                               const std::map<double, CapacityModel>& models) {
  PlacementProblem problem;
  problem.sites.reserve(scenario.sites.size());
  for (const auto& site : scenario.sites) {
    if (!(site.activation_cost > 0.0)) {
      raise_invalid("build_problem: activation costs must be positive");
    }
    problem.sites.push_back({site.id, site.position, site.activation_cost,
                             static_cast<double>(site.channel_budget)});
  }
  problem.demands.reserve(scenario.subareas.size());
  for (const auto& sub : scenario.subareas) {
    const SliceSpec* slice = scenario.find_slice(sub.slice_id);
    if (slice == nullptr) {
      raise_invalid("build_problem: subarea '" + sub.id +
                    "' references unknown slice '" + sub.slice_id + "'");
    }
    problem.demands.push_back(
        {sub.id, slice->id, required_capacity_bps(*slice, scenario.traffic)});
  }
  problem.link_capacity_bps.assign(
      scenario.sites.size(), std::vector<double>(scenario.subareas.size(), 0.0));
  for (size_t u = 0; u < scenario.sites.size(); ++u) {
    for (size_t a = 0; a < scenario.subareas.size(); ++a) {
      const SliceSpec* slice =
          scenario.find_slice(scenario.subareas[a].slice_id);
      const auto& model = model_for_ber(models, slice->target_ber);
      const double d = distance(scenario.sites[u].position,
                                scenario.subareas[a].center);
      problem.link_capacity_bps[u][a] =
          capacity_bps(model, snr_db(scenario.radio, d));
    }
  }
  return problem;
}

PlacementSolution solve_exact(const PlacementProblem& problem) {
  const size_t n_sites = problem.sites.size();
  const size_t n_demands = problem.demands.size();
  for (const auto& site : problem.sites) {
    if (!(site.activation_cost > 0.0)) {
      raise_invalid("solve_exact: activation costs must be positive");
    }
  }
  if (n_demands == 0) {
    PlacementSolution sol;
    sol.status = PlacementSolution::Status::optimal;
    sol.active.assign(n_sites, false);
    return sol;
  }
  const auto uncovered = problem.uncoverable_subareas();
  if (!uncovered.empty()) {
    return infeasible_solution(uncovered.front());
  }

  // Feasible-site bitmask per subarea, plus an aggregate-capacity exit.
  std::vector<SiteMask> feasible(n_demands, empty_mask(n_sites));
  double total_budget = 0.0;
  double total_min_load = 0.0;
  for (const auto& site : problem.sites) total_budget += site.channel_budget;
  for (size_t a = 0; a < n_demands; ++a) {
    double best = kInf;
    for (size_t u = 0; u < n_sites; ++u) {
      const double load = problem.channel_load(u, a);
      if (load < kInf) {
        mask_set(feasible[a], u);
        best = std::min(best, load);
      }
    }
    total_min_load += best;
  }
  if (total_min_load > total_budget * (1.0 + kBudgetSlack)) {
    return infeasible_solution(hardest_subarea(problem));
  }

  // Enumeration order: cheapest first, site index breaking ties, so that
  // successor keys grow monotonically and the first servable pop is both
  // cost-optimal and the lexicographically smallest such site set.
  std::vector<int> perm(n_sites);
  for (size_t u = 0; u < n_sites; ++u) perm[u] = static_cast<int>(u);
  std::sort(perm.begin(), perm.end(), [&](int lhs, int rhs) {
    const double cl = problem.sites[lhs].activation_cost;
    const double cr = problem.sites[rhs].activation_cost;
    return cl != cr ? cl < cr : lhs < rhs;
  });
  // Sites at enumeration rank >= r, for subtree-coverage pruning.
  std::vector<SiteMask> tail_mask(n_sites + 1, empty_mask(n_sites));
  for (size_t r = n_sites; r-- > 0;) {
    tail_mask[r] = tail_mask[r + 1];
    mask_set(tail_mask[r], static_cast<size_t>(perm[r]));
  }

  struct Node {
    double cost;
    std::vector<int> sorted_sites;  // original indexes, ascending
    std::vector<int> ranks;         // enumeration ranks, ascending
  };
  auto node_after = [](const Node& lhs, const Node& rhs) {
    if (lhs.cost != rhs.cost) return lhs.cost > rhs.cost;
    return lhs.sorted_sites > rhs.sorted_sites;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(node_after)> frontier(
      node_after);

  auto make_node = [&](std::vector<int> ranks) {
    Node node;
    node.ranks = std::move(ranks);
    node.cost = 0.0;
    for (int r : node.ranks) {
      node.sorted_sites.push_back(perm[r]);
      node.cost += problem.sites[perm[r]].activation_cost;
    }
    std::sort(node.sorted_sites.begin(), node.sorted_sites.end());
    return node;
  };
  frontier.push(make_node({0}));

  while (!frontier.empty()) {
    const Node node = frontier.top();
    frontier.pop();

    // Subtree prune: descendants keep every site but the last rank and can
    // only add later-ranked ones; bail out if that pool misses a subarea.
    const int last_rank = node.ranks.back();
    SiteMask pool = tail_mask[last_rank];
    for (size_t i = 0; i + 1 < node.ranks.size(); ++i) {
      mask_set(pool, static_cast<size_t>(perm[node.ranks[i]]));
    }
    bool subtree_viable = true;
    for (size_t a = 0; a < n_demands && subtree_viable; ++a) {
      subtree_viable = masks_intersect(feasible[a], pool);
    }
    if (!subtree_viable) continue;

    // Coverage and aggregate capacity screens, then the assignment rule.
    SiteMask own = empty_mask(n_sites);
    double budget_sum = 0.0;
    for (int u : node.sorted_sites) {
      mask_set(own, static_cast<size_t>(u));
      budget_sum += problem.sites[u].channel_budget;
    }
    bool covers = true;
    double min_load_sum = 0.0;
    for (size_t a = 0; a < n_demands && covers; ++a) {
      covers = masks_intersect(feasible[a], own);
      if (!covers) break;
      double best = kInf;
      for (int u : node.sorted_sites) {
        best = std::min(best, problem.channel_load(u, a));
      }
      min_load_sum += best;
    }
    if (covers && min_load_sum <= budget_sum * (1.0 + kBudgetSlack)) {
      if (auto assignment = spread_assignment(problem, node.sorted_sites)) {
        std::vector<bool> active(n_sites, false);
        for (int u : node.sorted_sites) active[u] = true;
        return make_solution(problem, *assignment, active);
      }
    }

    if (static_cast<size_t>(last_rank) + 1 < n_sites) {
      auto grown = node.ranks;
      grown.push_back(last_rank + 1);
      frontier.push(make_node(std::move(grown)));
      auto slid = node.ranks;
      slid.back() = last_rank + 1;
      frontier.push(make_node(std::move(slid)));
    }
  }
  return infeasible_solution(hardest_subarea(problem));
}

PlacementSolution solve_exhaustive(const PlacementProblem& problem) {
  const size_t n_sites = problem.sites.size();
  const size_t n_demands = problem.demands.size();
  if (n_sites > 12) {
    raise_invalid("solve_exhaustive: refuses instances above 12 sites");
  }
  if (n_demands == 0) {
    PlacementSolution sol;
    sol.status = PlacementSolution::Status::optimal;
    sol.active.assign(n_sites, false);
    return sol;
  }
  const auto uncovered = problem.uncoverable_subareas();
  if (!uncovered.empty()) {
    return infeasible_solution(uncovered.front());
  }

  // Independent re-statement of the assignment rule: walk subareas from
  // the heaviest cheapest-load down, keep per-site channel-equivalent
  // tallies, give each subarea to the active site left with the most
  // budget, re-packing that site's tally by FFD to respect the physical
  // channel count.
  auto try_mask = [&](std::uint32_t mask,
                      std::vector<int>& assignment_out) -> bool {
    struct Item {
      size_t subarea;
      double cheapest;
    };
    std::vector<Item> items;
    for (size_t a = 0; a < n_demands; ++a) {
      double cheapest = kInf;
      for (size_t u = 0; u < n_sites; ++u) {
        if (mask >> u & 1u) {
          cheapest = std::min(cheapest, problem.channel_load(u, a));
        }
      }
      if (cheapest == kInf) return false;
      items.push_back({a, cheapest});
    }
    std::sort(items.begin(), items.end(), [](const Item& lhs, const Item& rhs) {
      return lhs.cheapest != rhs.cheapest ? lhs.cheapest > rhs.cheapest
                                          : lhs.subarea < rhs.subarea;
    });
    std::vector<double> used(n_sites, 0.0);
    std::vector<std::vector<double>> tally(n_sites);
    for (const auto& item : items) {
      int chosen = -1;
      double chosen_room = -kInf;
      for (size_t u = 0; u < n_sites; ++u) {
        if (!(mask >> u & 1u)) continue;
        const double budget = problem.sites[u].channel_budget;
        const double load = problem.channel_load(u, item.subarea);
        if (load == kInf) continue;
        if (used[u] + load > budget * (1.0 + kBudgetSlack)) continue;
        const double room = (budget - used[u]) - load;
        if (room <= chosen_room) continue;
        tally[u].push_back(load);
        const int bins = ffd_channel_count(tally[u]);
        tally[u].pop_back();
        if (bins > static_cast<int>(std::floor(budget + 1e-9))) continue;
        chosen = static_cast<int>(u);
        chosen_room = room;
      }
      if (chosen < 0) return false;
      const double load = problem.channel_load(chosen, item.subarea);
      used[chosen] += load;
      tally[chosen].push_back(load);
      assignment_out[item.subarea] = chosen;
    }
    return true;
  };

  bool found = false;
  double best_cost = kInf;
  std::vector<int> best_sites;
  std::vector<int> best_assignment;
  std::vector<int> assignment(n_demands, -1);
  for (std::uint32_t mask = 1; mask < (1u << n_sites); ++mask) {
    double cost = 0.0;
    std::vector<int> members;
    for (size_t u = 0; u < n_sites; ++u) {
      if (mask >> u & 1u) {
        cost += problem.sites[u].activation_cost;
        members.push_back(static_cast<int>(u));
      }
    }
    if (found && (cost > best_cost ||
                  (cost == best_cost && members >= best_sites))) {
      continue;
    }
    std::fill(assignment.begin(), assignment.end(), -1);
    if (try_mask(mask, assignment)) {
      found = true;
      best_cost = cost;
      best_sites = members;
      best_assignment = assignment;
    }
  }
  if (!found) {
    return infeasible_solution(hardest_subarea(problem));
  }
  std::vector<bool> active(n_sites, false);
  for (int u : best_sites) active[u] = true;
  return make_solution(problem, best_assignment, active);
}

SolutionMetrics solution_metrics(const PlacementSolution& solution,
                                 const PlacementProblem& problem) {
  if (solution.status != PlacementSolution::Status::optimal) {
    raise_invalid("solution_metrics: solution is not feasible");
  }
  SolutionMetrics metrics;
  metrics.objective = solution.objective;
  for (size_t u = 0; u < problem.sites.size(); ++u) {
    if (solution.active[u]) ++metrics.n_uavs;
    for (double r : solution.channel_equiv[u]) {
      metrics.total_channel_equiv += r;
    }
  }
  return metrics;
}

std::string export_lp(const PlacementProblem& problem) {
  std::ostringstream lp;
  lp.precision(17);
  const size_t n_sites = problem.sites.size();
  const size_t n_demands = problem.demands.size();

  lp << "\\ UAV activation / channel allocation MILP\n";
  lp << "\\ x_u: site active, y_u_a: subarea a served by site u,"
        " r_u_a: channels\n";
  lp << "Minimize\n obj:";
  for (size_t u = 0; u < n_sites; ++u) {
    lp << (u == 0 ? " " : " + ") << problem.sites[u].activation_cost << " x_"
       << u;
  }
  lp << "\nSubject To\n";
  for (size_t u = 0; u < n_sites; ++u) {
    lp << " budget_" << u << ":";
    for (size_t a = 0; a < n_demands; ++a) {
      lp << (a == 0 ? " " : " + ") << "r_" << u << "_" << a;
    }
    lp << " - " << problem.sites[u].channel_budget << " x_" << u << " <= 0\n";
  }
  for (size_t a = 0; a < n_demands; ++a) {
    lp << " demand_" << a << ":";
    bool first = true;
    for (size_t u = 0; u < n_sites; ++u) {
      if (problem.link_capacity_bps[u][a] > 0.0) {
        lp << (first ? " " : " + ") << problem.link_capacity_bps[u][a] << " r_"
           << u << "_" << a;
        first = false;
      }
    }
    if (first) lp << " 0 r_0_" << a;
    lp << " >= " << problem.demands[a].required_bps << "\n";
  }
  for (size_t a = 0; a < n_demands; ++a) {
    lp << " assign_" << a << ":";
    for (size_t u = 0; u < n_sites; ++u) {
      lp << (u == 0 ? " " : " + ") << "y_" << u << "_" << a;
    }
    lp << " = 1\n";
  }
  for (size_t u = 0; u < n_sites; ++u) {
    for (size_t a = 0; a < n_demands; ++a) {
      lp << " link_" << u << "_" << a << ": r_" << u << "_" << a << " - "
         << problem.sites[u].channel_budget << " y_" << u << "_" << a
         << " <= 0\n";
      lp << " act_" << u << "_" << a << ": y_" << u << "_" << a << " - x_" << u
         << " <= 0\n";
    }
  }
  lp << "Bounds\n";
  for (size_t u = 0; u < n_sites; ++u) {
    for (size_t a = 0; a < n_demands; ++a) {
      lp << " 0 <= r_" << u << "_" << a << "\n";
    }
  }
  lp << "Binary\n";
  for (size_t u = 0; u < n_sites; ++u) {
    lp << " x_" << u;
    for (size_t a = 0; a < n_demands; ++a) {
      lp << " y_" << u << "_" << a;
    }
    lp << "\n";
  }
  lp << "End\n";
  return lp.str();
}

}  // namespace slicer
