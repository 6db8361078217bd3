#ifndef MWIS_MAX_PRODUCT_HPP
#define MWIS_MAX_PRODUCT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mwis {

/// One message per directed edge. Slot 2e holds the message lo -> hi of
/// edge e, slot 2e+1 the message hi -> lo.
struct message_field {
  std::vector<double> values;

  bool operator==(const message_field&) const = default;
};

inline int directed_index(const weighted_graph& g, int edge, int from) {
  return 2 * edge + (g.edges[edge].first == from ? 0 : 1);
}

inline message_field zero_messages(const weighted_graph& g) {
  return message_field{std::vector<double>(2 * g.edges.size(), 0.0)};
}

/// Message carried from h.to into the node whose adjacency produced h.
inline double incoming_message(const weighted_graph& g, const message_field& f,
                               const half_edge& h) {
  return f.values[directed_index(g, h.edge, h.to)];
}

/// One synchronous min-sum update of every directed message:
/// the new message i -> j is the positive part of w_i minus the sum of
/// current messages into i from neighbors other than j.
inline message_field sweep(const weighted_graph& g, const message_field& f) {
  if (f.values.size() != 2 * g.edges.size())
    throw std::invalid_argument("sweep: message field length does not match graph");
  message_field out = zero_messages(g);
  for (int i = 0; i < g.node_count(); ++i) {
    for (const half_edge& h : g.neighbors(i)) {
      double excluded = 0.0;
      for (const half_edge& other : g.neighbors(i))
        if (other.to != h.to) excluded += incoming_message(g, f, other);
      out.values[directed_index(g, h.edge, i)] =
          std::max(0.0, g.weights[i] - excluded);
    }
  }
  return out;
}

/// Node belief residual: w_i minus the sum of all messages into i.
/// Positive pulls the estimate toward membership, negative away.
inline double belief_gap(const weighted_graph& g, const message_field& f, int i) {
  double covered = 0.0;
  for (const half_edge& h : g.neighbors(i)) covered += incoming_message(g, f, h);
  return g.weights[i] - covered;
}

enum class estimate_value : std::uint8_t { one, zero, unknown };
using estimate_vector = std::vector<estimate_value>;

inline char to_char(estimate_value v) {
  switch (v) {
    case estimate_value::one: return '1';
    case estimate_value::zero: return '0';
    default: return '?';
  }
}

inline const char* to_string(estimate_value v) {
  switch (v) {
    case estimate_value::one: return "one";
    case estimate_value::zero: return "zero";
    default: return "unknown";
  }
}

/// Dead band that separates a clear signal from numerical noise when
/// thresholding belief gaps.
inline double default_tau(const weighted_graph& g) {
  return 1e-9 * std::max(1.0, g.max_weight());
}

/// Thresholds each node's belief gap: above tau -> one, below -tau ->
/// zero, inside the band -> unknown.
inline estimate_vector estimate(const weighted_graph& g, const message_field& f,
                                double tau) {
  if (tau < 0.0)
    throw std::invalid_argument("estimate: tau must be nonnegative");
  estimate_vector est(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    double gap = belief_gap(g, f, i);
    if (gap > tau)
      est[i] = estimate_value::one;
    else if (gap < -tau)
      est[i] = estimate_value::zero;
    else
      est[i] = estimate_value::unknown;
  }
  return est;
}

/// Largest single-message change a sweep would make from f. Zero exactly
/// when f is a fixed point.
inline double fixed_point_residual(const weighted_graph& g, const message_field& f) {
  message_field next = sweep(g, f);
  double res = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    res = std::max(res, std::abs(next.values[k] - f.values[k]));
  return res;
}

struct maxprod_params {
  int max_iters = 200;
  double tau = -1.0;         // negative -> default_tau(g)
  int stability_window = 3;  // identical estimate vectors required to settle
};

struct maxprod_iteration {
  message_field field;
  estimate_vector estimates;
  double sup_change = 0.0;  // vs the previous field; 0 for the initial entry
};

struct maxprod_trace {
  std::vector<maxprod_iteration> iterations;  // index t = sweeps applied
  bool converged = false;
  int iterations_used = 0;
  int settled_at = -1;        // first sweep whose estimates persist to the end
  int oscillation_period = 0; // detected period when not converged, else 0
  double tau = 0.0;

  const message_field& final_field() const { return iterations.back().field; }
  const estimate_vector& final_estimates() const { return iterations.back().estimates; }
};

/// Runs synchronous sweeps from the given field. Declares convergence
/// when the field is an exact fixed point, or when the estimates held
/// steady for `stability_window` consecutive iterations while the
/// last sweep moved every message by less than tau.
inline maxprod_trace run_max_product(const weighted_graph& g, const message_field& init,
                                     const maxprod_params& params = {}) {
  if (params.max_iters < 0)
    throw std::invalid_argument("run_max_product: negative iteration limit");
  if (params.stability_window < 1)
    throw std::invalid_argument("run_max_product: stability window must be >= 1");

  maxprod_trace trace;
  trace.tau = params.tau < 0.0 ? default_tau(g) : params.tau;
  trace.iterations.push_back({init, estimate(g, init, trace.tau), 0.0});

  int stable_run = 1;
  for (int t = 1; t <= params.max_iters; ++t) {
    const maxprod_iteration& prev = trace.iterations.back();
    maxprod_iteration iter;
    iter.field = sweep(g, prev.field);
    iter.sup_change = 0.0;
    for (std::size_t k = 0; k < iter.field.values.size(); ++k)
      iter.sup_change = std::max(iter.sup_change,
                                 std::abs(iter.field.values[k] - prev.field.values[k]));
    iter.estimates = estimate(g, iter.field, trace.tau);
    stable_run = iter.estimates == prev.estimates ? stable_run + 1 : 1;
    const double sup = iter.sup_change;
    trace.iterations.push_back(std::move(iter));
    trace.iterations_used = t;

    if (sup == 0.0 ||
        (stable_run >= params.stability_window && sup < trace.tau)) {
      trace.converged = true;
      break;
    }
  }

  // First sweep index from which the final estimates never change again.
  const auto& final_est = trace.iterations.back().estimates;
  for (int t = static_cast<int>(trace.iterations.size()) - 1; t >= 0; --t) {
    if (trace.iterations[t].estimates == final_est)
      trace.settled_at = t;
    else
      break;
  }

  if (!trace.converged) {
    // Look for a short exact cycle in the message fields.
    const int last = static_cast<int>(trace.iterations.size()) - 1;
    for (int p = 1; p <= 10 && 2 * p <= last; ++p) {
      bool periodic = true;
      for (int k = 0; k < p && periodic; ++k)
        periodic = trace.iterations[last - k].field ==
                   trace.iterations[last - k - p].field;
      if (periodic) { trace.oscillation_period = p; break; }
    }
  }
  return trace;
}

inline maxprod_trace run_max_product(const weighted_graph& g,
                                     const maxprod_params& params = {}) {
  return run_max_product(g, zero_messages(g), params);
}

struct structure_report {
  struct violation {
    int clause;  // 1: one-node, 2: zero-node, 3: unknown-node condition
    int node;
    std::string detail;
  };
  std::vector<violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural consequences of a fixed point: every one-node has only
/// zero-neighbors, every zero-node has a one-neighbor, every
/// unknown-node has an unknown-neighbor.
inline structure_report check_fixed_point_structure(const weighted_graph& g,
                                                    const estimate_vector& est) {
  if (static_cast<int>(est.size()) != g.node_count())
    throw std::invalid_argument("check_fixed_point_structure: estimate length mismatch");
  structure_report rep;
  for (int i = 0; i < g.node_count(); ++i) {
    switch (est[i]) {
      case estimate_value::one:
        for (const half_edge& h : g.neighbors(i))
          if (est[h.to] != estimate_value::zero)
            rep.violations.push_back({1, i,
                "one-node " + std::to_string(i) + " has non-zero neighbor " +
                std::to_string(h.to)});
        break;
      case estimate_value::zero: {
        bool has_one = false;
        for (const half_edge& h : g.neighbors(i))
          if (est[h.to] == estimate_value::one) { has_one = true; break; }
        if (!has_one)
          rep.violations.push_back({2, i,
              "zero-node " + std::to_string(i) + " has no one-neighbor"});
        break;
      }
      case estimate_value::unknown: {
        bool has_unknown = false;
        for (const half_edge& h : g.neighbors(i))
          if (est[h.to] == estimate_value::unknown) { has_unknown = true; break; }
        if (!has_unknown)
          rep.violations.push_back({3, i,
              "unknown-node " + std::to_string(i) + " has no unknown-neighbor"});
        break;
      }
    }
  }
  return rep;
}

}  // namespace mwis

#endif
