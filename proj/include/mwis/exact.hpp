#ifndef MWIS_EXACT_HPP
#define MWIS_EXACT_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mwis {

// Enumeration limits keep the exact solvers at desk scale; callers that
// need larger instances must use the iterative algorithms instead.
inline constexpr int brute_force_node_limit = 24;
inline constexpr int lp_enum_node_limit = 15;

// Objective values within this absolute distance of the maximum are
// grouped as co-optimal when collecting argmax sets.
inline constexpr double optimum_grouping_tolerance = 1e-9;

struct mwis_result {
  double value = 0.0;
  std::vector<node_subset> optima;  // lexicographic by indicator tuple
};

/// Exhaustive maximum-weight independent set over all 2^n subsets.
/// Throws std::length_error beyond brute_force_node_limit nodes.
inline mwis_result brute_force_mwis(const weighted_graph& g) {
  const int n = g.node_count();
  if (n > brute_force_node_limit)
    throw std::length_error("brute_force_mwis: refusing instance with " +
                            std::to_string(n) + " nodes (limit " +
                            std::to_string(brute_force_node_limit) + ")");

  std::vector<std::uint32_t> adj_mask(n, 0);
  for (auto [u, v] : g.edges) {
    adj_mask[u] |= std::uint32_t{1} << v;
    adj_mask[v] |= std::uint32_t{1} << u;
  }

  const std::uint32_t end = std::uint32_t{1} << n;
  double best = 0.0;
  std::vector<std::pair<double, std::uint32_t>> candidates;
  for (std::uint32_t mask = 0; mask < end; ++mask) {
    bool independent = true;
    double value = 0.0;
    for (std::uint32_t rest = mask; rest;) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      if (adj_mask[i] & mask) { independent = false; break; }
      value += g.weights[i];
    }
    if (independent) {
      if (value > best) best = value;
      if (value >= best - optimum_grouping_tolerance)
        candidates.emplace_back(value, mask);
    }
  }

  mwis_result res;
  res.value = best;
  for (auto [value, mask] : candidates) {
    if (value < best - optimum_grouping_tolerance) continue;
    node_subset s(n, 0);
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) s[i] = 1;
    res.optima.push_back(std::move(s));
  }
  std::sort(res.optima.begin(), res.optima.end());
  return res;
}

struct lp_report {
  double value = 0.0;
  std::vector<std::vector<double>> optima;  // entries in {0, 0.5, 1}
  bool unique = false;    // exactly one optimal extreme point
  bool integral = false;  // some optimal point is fully 0/1
};

/// Edge-relaxation optimum by enumerating the half-integral grid
/// {0, 1/2, 1}^n, which contains every extreme point of the relaxation.
/// Feasibility and ties are decided in doubled integer arithmetic.
/// Throws std::length_error beyond lp_enum_node_limit nodes.
inline lp_report lp_optimum(const weighted_graph& g) {
  const int n = g.node_count();
  if (n > lp_enum_node_limit)
    throw std::length_error("lp_optimum: refusing instance with " +
                            std::to_string(n) + " nodes (limit " +
                            std::to_string(lp_enum_node_limit) + ")");

  // hx[i] = 2 * x[i] in {0,1,2}; an edge (u,v) is feasible iff hx_u + hx_v <= 2.
  std::vector<int> hx(n, 0);
  double best = 0.0;
  std::vector<std::pair<double, std::vector<int>>> candidates;

  auto recurse = [&](auto&& self, int i, double value) -> void {
    if (i == n) {
      if (value > best) best = value;
      if (value >= best - optimum_grouping_tolerance)
        candidates.emplace_back(value, hx);
      return;
    }
    for (int h = 0; h <= 2; ++h) {
      bool feasible = true;
      for (const half_edge& he : g.neighbors(i)) {
        if (he.to < i && hx[he.to] + h > 2) { feasible = false; break; }
      }
      if (!feasible) continue;
      hx[i] = h;
      self(self, i + 1, value + 0.5 * h * g.weights[i]);
    }
    hx[i] = 0;
  };
  recurse(recurse, 0, 0.0);

  lp_report res;
  res.value = best;
  for (auto& [value, point] : candidates) {
    if (value < best - optimum_grouping_tolerance) continue;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 0.5 * point[i];
    res.optima.push_back(std::move(x));
  }
  std::sort(res.optima.begin(), res.optima.end());
  res.unique = res.optima.size() == 1;
  for (const auto& x : res.optima) {
    bool all01 = true;
    for (double xi : x)
      if (xi != 0.0 && xi != 1.0) { all01 = false; break; }
    if (all01) { res.integral = true; break; }
  }
  return res;
}

struct dual_report {
  bool feasible = false;
  double objective = 0.0;      // sum of the edge duals
  std::vector<double> slack;   // per node: sum of incident duals minus weight
};

/// Evaluates a candidate dual point: per-node slack and feasibility
/// (every slack >= -slack_tolerance). Entries must be nonnegative.
inline dual_report dual_feasible(const weighted_graph& g, const dual_vector& lambda,
                                 double slack_tolerance = 0.0) {
  if (lambda.size() != g.edge_count())
    throw std::invalid_argument("dual_feasible: dual length does not match edge count");
  for (int e = 0; e < lambda.size(); ++e)
    if (!(lambda[e] >= 0.0))
      throw std::invalid_argument("dual_feasible: negative dual at edge " +
                                  std::to_string(e));

  dual_report res;
  res.objective = 0.0;
  for (int e = 0; e < lambda.size(); ++e) res.objective += lambda[e];
  res.slack.assign(g.node_count(), 0.0);
  res.feasible = true;
  for (int i = 0; i < g.node_count(); ++i) {
    double covered = 0.0;
    for (const half_edge& h : g.neighbors(i)) covered += lambda[h.edge];
    res.slack[i] = covered - g.weights[i];
    if (res.slack[i] < -slack_tolerance) res.feasible = false;
  }
  return res;
}

struct slackness_report {
  bool holds = false;
  std::vector<std::string> violations;
};

/// Joint optimality certificate for a 0/1 point x and a dual point.
/// Checks primal and dual feasibility, node slackness
/// (x_i > 0 forces zero dual slack at i) and edge slackness
/// (a positive dual forces the edge constraint tight). When it holds,
/// x is a maximum-weight independent set and the dual point is optimal.
inline slackness_report check_complementary_slackness(const weighted_graph& g,
                                                      const node_subset& x,
                                                      const dual_vector& lambda,
                                                      double tolerance) {
  require_subset_size(g, x, "check_complementary_slackness");
  slackness_report res;
  for (int i = 0; i < g.node_count(); ++i)
    if (x[i] != 0 && x[i] != 1)
      res.violations.push_back("entry at node " + std::to_string(i) +
                               " is not 0/1");
  for (auto [u, v] : g.edges)
    if (x[u] && x[v])
      res.violations.push_back("selected edge (" + std::to_string(u) + "," +
                               std::to_string(v) + ") breaks independence");

  dual_report dual = dual_feasible(g, lambda, tolerance);
  for (int i = 0; i < g.node_count(); ++i) {
    if (dual.slack[i] < -tolerance)
      res.violations.push_back("dual constraint short at node " +
                               std::to_string(i));
    if (x[i] && std::abs(dual.slack[i]) > tolerance)
      res.violations.push_back("selected node " + std::to_string(i) +
                               " has positive dual slack");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    double gap = (double(x[u]) + double(x[v]) - 1.0) * lambda[e];
    if (std::abs(gap) > tolerance)
      res.violations.push_back("positive dual on slack edge (" +
                               std::to_string(u) + "," + std::to_string(v) + ")");
  }
  res.holds = res.violations.empty();
  return res;
}

}  // namespace mwis

#endif
