#ifndef MWIS_DUAL_DESCENT_HPP
#define MWIS_DUAL_DESCENT_HPP

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mwis {

struct barrier_params {
  double eps = 1e-3;       // barrier strength, > 0
  double delta = 1e-8;     // per-sweep sup-change stopping threshold
  int max_sweeps = 100000;
};

/// Per-node dual slack: sum of incident duals minus the node weight.
inline double dual_slack(const weighted_graph& g, const dual_vector& lambda, int i) {
  double covered = 0.0;
  for (const half_edge& h : g.neighbors(i)) covered += lambda[h.edge];
  return covered - g.weights[i];
}

/// Log-barrier smoothing of the dual objective: sum of the duals minus
/// eps times the log of every positive-degree node's slack. +infinity
/// when any such slack is nonpositive. Zero-degree nodes have no
/// incident duals and contribute no barrier term.
inline double barrier_objective(const weighted_graph& g, double eps,
                                const dual_vector& lambda) {
  if (eps <= 0.0)
    throw std::invalid_argument("barrier_objective: eps must be positive");
  if (lambda.size() != g.edge_count())
    throw std::invalid_argument("barrier_objective: dual length mismatch");
  double value = 0.0;
  for (int e = 0; e < lambda.size(); ++e) value += lambda[e];
  for (int i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) continue;
    double slack = dual_slack(g, lambda, i);
    if (slack <= 0.0) return std::numeric_limits<double>::infinity();
    value -= eps * std::log(slack);
  }
  return value;
}

/// Feasible warm start: each edge dual covers the heavier endpoint. A
/// degree-one node whose weight is the edge maximum starts with zero
/// slack; the first sweep moves it strictly inside.
inline dual_vector initial_dual(const weighted_graph& g) {
  dual_vector lambda = dual_vector::zeros(g);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    lambda[e] = std::max(g.weights[u], g.weights[v]);
  }
  return lambda;
}

/// Residual demands on an edge's dual from its two endpoints: what each
/// endpoint's constraint still needs after all its other incident duals.
/// Negative when the endpoint is already over-covered without this edge.
struct edge_demands {
  double a = 0.0;  // from the lo endpoint
  double b = 0.0;  // from the hi endpoint
};

inline edge_demands edge_demand_values(const weighted_graph& g,
                                       const dual_vector& lambda, int edge) {
  auto [u, v] = g.edges[edge];
  double sum_u = 0.0, sum_v = 0.0;
  for (const half_edge& h : g.neighbors(u))
    if (h.edge != edge) sum_u += lambda[h.edge];
  for (const half_edge& h : g.neighbors(v))
    if (h.edge != edge) sum_v += lambda[h.edge];
  return {g.weights[u] - sum_u, g.weights[v] - sum_v};
}

/// Minimizer of the barrier objective in a single edge dual subject to
/// nonnegativity, given the signed endpoint demands. The raw value is the
/// unconstrained interior minimizer, always in (max(a,b)+eps,
/// max(a,b)+2*eps]; the positive-part clamp is the projection onto the
/// constraint and binds exactly when both demands sit below -eps-ish,
/// where the constrained minimum is at zero.
inline double edge_step_value(double a, double b, double eps) {
  double raw = 0.5 * (a + b + 2.0 * eps +
                      std::sqrt((a - b) * (a - b) + 4.0 * eps * eps));
  return std::max(0.0, raw);
}

/// True iff the pre-projection single-edge update lands strictly above
/// max(a,b) + eps and at most max(a,b) + 2*eps. The upper bound is
/// attained exactly at a == b, so the comparison leaves a few ulps of
/// room for rounding at that boundary.
inline bool perturbation_bounds_check(double a, double b, double eps) {
  if (eps <= 0.0)
    throw std::invalid_argument("perturbation_bounds_check: eps must be positive");
  double raw = 0.5 * (a + b + 2.0 * eps +
                      std::sqrt((a - b) * (a - b) + 4.0 * eps * eps));
  double hi = std::max(a, b);
  double ub = hi + 2.0 * eps;
  double slop = 4.0 * std::numeric_limits<double>::epsilon() *
                std::max(1.0, std::abs(ub));
  return raw > hi + eps && raw <= ub + slop;
}

/// Applies the single-edge update to a copy of lambda.
inline dual_vector edge_step(const weighted_graph& g, const dual_vector& lambda,
                             int edge, double eps) {
  if (edge < 0 || edge >= g.edge_count())
    throw std::invalid_argument("edge_step: edge index out of range");
  if (eps <= 0.0)
    throw std::invalid_argument("edge_step: eps must be positive");
  edge_demands d = edge_demand_values(g, lambda, edge);
  dual_vector out = lambda;
  out[edge] = edge_step_value(d.a, d.b, eps);
  return out;
}

struct descent_result {
  dual_vector lambda;
  int sweeps = 0;
  bool converged = false;
  double max_change_last_sweep = 0.0;
  std::vector<double> objective_trace;  // entry s = barrier value after s sweeps
  // True while no sweep raises the objective beyond the evaluation
  // resolution of the sum (a 64-ulp relative band; near the settle point
  // the true per-sweep decrease drops below one ulp of the total).
  bool objective_monotone = true;
  double worst_objective_increase = 0.0;  // raw, including sub-ulp noise
  long long bounds_violations = 0;  // updates outside the perturbation bounds
};

/// Largest objective rise between consecutive sweeps that is still
/// indistinguishable from flat when the objective is evaluated in doubles.
inline double objective_noise_band(double prev) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         std::max(1.0, std::abs(prev));
}

/// Round-robin coordinate descent on the barrier objective: every sweep
/// updates each edge dual in lexicographic edge order via the closed
/// form, until the largest per-edge change in a sweep drops below delta.
/// Positive-degree nodes must be strictly inside the dual region after
/// each sweep; losing the interior aborts with std::logic_error.
inline descent_result run_descent(const weighted_graph& g,
                                  const barrier_params& params = {}) {
  if (params.eps <= 0.0)
    throw std::invalid_argument("run_descent: eps must be positive");
  if (params.delta <= 0.0)
    throw std::invalid_argument("run_descent: delta must be positive");
  if (params.max_sweeps < 1)
    throw std::invalid_argument("run_descent: need at least one sweep");

  descent_result res;
  res.lambda = initial_dual(g);
  res.objective_trace.push_back(barrier_objective(g, params.eps, res.lambda));

  for (int sweep = 1; sweep <= params.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
      edge_demands d = edge_demand_values(g, res.lambda, e);
      double updated = edge_step_value(d.a, d.b, params.eps);
      if (!perturbation_bounds_check(d.a, d.b, params.eps)) {
        ++res.bounds_violations;
        assert(false && "edge update escaped the perturbation bounds");
      }
      max_change = std::max(max_change, std::abs(updated - res.lambda[e]));
      res.lambda[e] = updated;
    }
    res.sweeps = sweep;
    res.max_change_last_sweep = max_change;

    for (int i = 0; i < g.node_count(); ++i) {
      if (g.degree(i) == 0) continue;
      double slack = dual_slack(g, res.lambda, i);
      if (!(slack > 0.0))
        throw std::logic_error(
            "run_descent: interior lost at node " + std::to_string(i) +
            " after sweep " + std::to_string(sweep) +
            " (slack " + std::to_string(slack) + ")");
    }

    double obj = barrier_objective(g, params.eps, res.lambda);
    double prev = res.objective_trace.back();
    if (std::isfinite(prev) && obj > prev) {
      res.worst_objective_increase =
          std::max(res.worst_objective_increase, obj - prev);
      if (obj - prev > objective_noise_band(prev)) res.objective_monotone = false;
    }
    res.objective_trace.push_back(obj);

    if (max_change < params.delta) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace mwis

#endif
