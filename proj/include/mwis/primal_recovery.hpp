#ifndef MWIS_PRIMAL_RECOVERY_HPP
#define MWIS_PRIMAL_RECOVERY_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dual_descent.hpp"
#include "graph.hpp"

namespace mwis {

enum class node_color : std::uint8_t { green, gray, orange, red };

inline const char* to_string(node_color c) {
  switch (c) {
    case node_color::green: return "green";
    case node_color::gray: return "gray";
    case node_color::orange: return "orange";
    default: return "red";
  }
}

/// Slack threshold that separates clearly-covered nodes from nodes the
/// dual point leaves nearly tight, scaled to dominate the barrier error.
inline double default_delta1(const weighted_graph& g, double eps) {
  return std::max(10.0 * g.node_count() * eps, 1e-4);
}

struct recovery_result {
  node_subset x;
  std::vector<node_color> colors;
  int rounds = 0;
};

/// Rounds a dual point to a 0/1 assignment. Nodes whose dual slack
/// exceeds delta1 start gray (out); the rest start green. Round-robin
/// until stable: a green node with a gray neighbor whose shared dual
/// exceeds delta1 turns orange (in); otherwise a green node with an
/// orange neighbor turns gray. Remaining greens finally turn red (in)
/// as one batch. Needs at most one pass per node; more indicates a bug
/// and aborts with std::logic_error.
inline recovery_result est_recover(const weighted_graph& g, const dual_vector& lambda,
                                   double delta1) {
  if (lambda.size() != g.edge_count())
    throw std::invalid_argument("est_recover: dual length does not match edge count");
  if (delta1 < 0.0)
    throw std::invalid_argument("est_recover: delta1 must be nonnegative");

  const int n = g.node_count();
  recovery_result res;
  res.x.assign(n, 0);
  res.colors.assign(n, node_color::green);
  if (n == 0) return res;

  for (int i = 0; i < n; ++i) {
    double covered = 0.0;
    for (const half_edge& h : g.neighbors(i)) covered += lambda[h.edge];
    if (covered > g.weights[i] + delta1) res.colors[i] = node_color::gray;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    ++res.rounds;
    if (res.rounds > n)
      throw std::logic_error("est_recover: exceeded the pass budget of one per node");
    for (int i = 0; i < n; ++i) {
      if (res.colors[i] != node_color::green) continue;
      bool strong_gray = false, orange_neighbor = false;
      for (const half_edge& h : g.neighbors(i)) {
        if (res.colors[h.to] == node_color::gray && lambda[h.edge] > delta1)
          strong_gray = true;
        if (res.colors[h.to] == node_color::orange) orange_neighbor = true;
      }
      if (strong_gray) {
        res.colors[i] = node_color::orange;
        changed = true;
      } else if (orange_neighbor) {
        res.colors[i] = node_color::gray;
        changed = true;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    switch (res.colors[i]) {
      case node_color::green: res.colors[i] = node_color::red; res.x[i] = 1; break;
      case node_color::orange: res.x[i] = 1; break;
      case node_color::gray: res.x[i] = 0; break;
      case node_color::red: break;  // unreachable
    }
  }
  return res;
}

struct algo_params {
  double eps = 1e-3;
  double delta = 1e-8;
  double delta1 = -1.0;  // negative -> default_delta1(g, eps)
  int max_sweeps = 100000;
};

struct algo_result {
  node_subset x;
  std::vector<node_color> colors;
  int rounds = 0;
  double delta1 = 0.0;
  descent_result descent;
  std::vector<std::string> warnings;
};

/// Full pipeline: barrier descent on the dual, then rounding. The output
/// is always a 0/1 vector; optimality is expected when the relaxation is
/// tight and the slack separation exceeds delta1, and degrades gracefully
/// otherwise (warnings flag non-convergence).
inline algo_result algo_mwis(const weighted_graph& g, const algo_params& params = {}) {
  algo_result res;
  res.delta1 = params.delta1 < 0.0 ? default_delta1(g, params.eps) : params.delta1;

  barrier_params bp;
  bp.eps = params.eps;
  bp.delta = params.delta;
  bp.max_sweeps = params.max_sweeps;
  res.descent = run_descent(g, bp);
  if (!res.descent.converged)
    res.warnings.push_back("descent stopped at the sweep limit before reaching delta");

  recovery_result rec = est_recover(g, res.descent.lambda, res.delta1);
  res.x = std::move(rec.x);
  res.colors = std::move(rec.colors);
  res.rounds = rec.rounds;
  return res;
}

}  // namespace mwis

#endif
