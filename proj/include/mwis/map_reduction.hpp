#ifndef MWIS_MAP_REDUCTION_HPP
#define MWIS_MAP_REDUCTION_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mwis {

/// Table-valued factor over a subset of variables. Values are stored
/// row-major with the last scope variable varying fastest.
struct factor {
  std::vector<int> scope;
  std::vector<double> table;
};

struct map_problem {
  std::vector<int> domain_sizes;
  std::vector<factor> factors;

  int variable_count() const { return static_cast<int>(domain_sizes.size()); }
};

inline std::size_t table_size_for(const map_problem& p, const factor& f) {
  std::size_t size = 1;
  for (int v : f.scope) size *= static_cast<std::size_t>(p.domain_sizes[v]);
  return size;
}

inline std::vector<std::string> validate_map_problem(const map_problem& p) {
  std::vector<std::string> out;
  const int n = p.variable_count();
  for (int v = 0; v < n; ++v)
    if (p.domain_sizes[v] < 1)
      out.push_back("variable " + std::to_string(v) + " has empty domain");

  std::vector<char> mentioned(n, 0);
  for (std::size_t k = 0; k < p.factors.size(); ++k) {
    const factor& f = p.factors[k];
    if (f.scope.empty()) {
      out.push_back("factor " + std::to_string(k) + " has empty scope");
      continue;
    }
    bool scope_ok = true;
    std::vector<int> sorted = f.scope;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (sorted[j] < 0 || sorted[j] >= n) {
        out.push_back("factor " + std::to_string(k) + " scope out of range");
        scope_ok = false;
        break;
      }
      if (j > 0 && sorted[j] == sorted[j - 1]) {
        out.push_back("factor " + std::to_string(k) + " repeats a scope variable");
        scope_ok = false;
        break;
      }
    }
    if (!scope_ok) continue;
    for (int v : f.scope) mentioned[v] = 1;
    if (f.table.size() != table_size_for(p, f))
      out.push_back("factor " + std::to_string(k) + " table size mismatch");
    for (double t : f.table)
      if (!std::isfinite(t)) {
        out.push_back("factor " + std::to_string(k) + " has non-finite entries");
        break;
      }
  }
  for (int v = 0; v < n; ++v)
    if (!mentioned[v])
      out.push_back("variable " + std::to_string(v) + " appears in no factor");
  return out;
}

/// Row-major table index of a joint assignment restricted to the scope.
inline std::size_t table_index(const map_problem& p, const factor& f,
                               const std::vector<int>& assignment) {
  std::size_t idx = 0;
  for (int v : f.scope)
    idx = idx * static_cast<std::size_t>(p.domain_sizes[v]) +
          static_cast<std::size_t>(assignment[v]);
  return idx;
}

inline double map_score(const map_problem& p, const std::vector<int>& assignment) {
  double score = 0.0;
  for (const factor& f : p.factors) score += f.table[table_index(p, f, assignment)];
  return score;
}

/// One node per (factor, joint assignment of its scope).
struct factor_assignment {
  int factor_id = 0;
  std::vector<int> values;  // aligned with the factor's scope
};

struct mwis_reduction {
  weighted_graph graph;
  std::vector<factor_assignment> labels;  // per node
  double offset = 0.0;                    // additive weight shift c
};

inline constexpr std::size_t default_reduction_node_budget = 10000;

/// Builds the conflict graph: nodes are factor-local assignments with
/// weight offset + table value; two nodes clash (edge) iff they assign
/// some shared variable differently. The offset is 1 plus the most
/// negative table entry's magnitude, keeping every weight >= 1.
/// Throws std::invalid_argument on an invalid problem and
/// std::length_error when the node count would exceed the budget.
inline mwis_reduction build_reduction(const map_problem& p,
                                      std::size_t node_budget = default_reduction_node_budget) {
  auto violations = validate_map_problem(p);
  if (!violations.empty()) {
    std::string msg = "build_reduction: invalid problem:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }

  std::size_t node_count = 0;
  for (const factor& f : p.factors) {
    std::size_t sz = table_size_for(p, f);
    if (sz > node_budget || node_count > node_budget - sz)
      throw std::length_error("build_reduction: node budget of " +
                              std::to_string(node_budget) + " exceeded");
    node_count += sz;
  }

  double most_negative = 0.0;
  for (const factor& f : p.factors)
    for (double t : f.table) most_negative = std::min(most_negative, t);

  mwis_reduction red;
  red.offset = 1.0 - most_negative;

  std::vector<double> weights;
  const int n_vars = p.variable_count();
  // Per node: value of each variable, or -1 when outside the scope.
  std::vector<std::vector<int>> assigned;
  for (std::size_t k = 0; k < p.factors.size(); ++k) {
    const factor& f = p.factors[k];
    const std::size_t rows = table_size_for(p, f);
    for (std::size_t r = 0; r < rows; ++r) {
      factor_assignment label;
      label.factor_id = static_cast<int>(k);
      label.values.assign(f.scope.size(), 0);
      std::size_t rest = r;
      for (std::size_t j = f.scope.size(); j-- > 0;) {
        int dom = p.domain_sizes[f.scope[j]];
        label.values[j] = static_cast<int>(rest % static_cast<std::size_t>(dom));
        rest /= static_cast<std::size_t>(dom);
      }
      std::vector<int> dense(n_vars, -1);
      for (std::size_t j = 0; j < f.scope.size(); ++j)
        dense[f.scope[j]] = label.values[j];
      assigned.push_back(std::move(dense));
      weights.push_back(red.offset + f.table[r]);
      red.labels.push_back(std::move(label));
    }
  }

  std::vector<std::pair<int, int>> edges;
  const int total = static_cast<int>(red.labels.size());
  for (int a = 0; a < total; ++a) {
    const factor& fa = p.factors[red.labels[a].factor_id];
    for (int b = a + 1; b < total; ++b) {
      bool clash = false;
      for (int v : fa.scope) {
        int other = assigned[b][v];
        if (other >= 0 && other != assigned[a][v]) { clash = true; break; }
      }
      if (clash) edges.emplace_back(a, b);
    }
  }
  red.graph = make_graph(std::move(weights), std::move(edges));
  return red;
}

/// Reads a full variable assignment off an independent set that picks
/// exactly one node per factor; nullopt when some factor is picked zero
/// or multiple times. The set must be independent.
inline std::optional<std::vector<int>> lift(const map_problem& p,
                                            const mwis_reduction& red,
                                            const node_subset& s) {
  require_subset_size(red.graph, s, "lift");
  if (!is_independent(red.graph, s))
    throw std::invalid_argument("lift: the selected set is not independent");

  std::vector<int> picks(p.factors.size(), 0);
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v]) ++picks[red.labels[v].factor_id];
  for (int count : picks)
    if (count != 1) return std::nullopt;

  std::vector<int> assignment(p.variable_count(), -1);
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (!s[v]) continue;
    const factor_assignment& label = red.labels[v];
    const factor& f = p.factors[label.factor_id];
    for (std::size_t j = 0; j < f.scope.size(); ++j) {
      assert(assignment[f.scope[j]] == -1 ||
             assignment[f.scope[j]] == label.values[j]);
      assignment[f.scope[j]] = label.values[j];
    }
  }
  // Every variable appears in some factor, so the assignment is total.
  for (int y : assignment) { assert(y >= 0); (void)y; }
  return assignment;
}

struct map_result {
  std::vector<int> assignment;
  double score = 0.0;
};

/// Exhaustive reference solver; ties go to the lexicographically
/// smallest assignment. Throws std::length_error when the joint space
/// exceeds the limit.
inline map_result brute_force_map(const map_problem& p,
                                  std::size_t joint_limit = 1000000) {
  auto violations = validate_map_problem(p);
  if (!violations.empty()) {
    std::string msg = "brute_force_map: invalid problem:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
  const int n = p.variable_count();
  std::size_t joint = 1;
  for (int v = 0; v < n; ++v) {
    std::size_t dom = static_cast<std::size_t>(p.domain_sizes[v]);
    if (joint > joint_limit / dom)
      throw std::length_error("brute_force_map: joint space exceeds " +
                              std::to_string(joint_limit));
    joint *= dom;
  }

  map_result best;
  best.assignment.assign(n, 0);
  std::vector<int> y(n, 0);
  best.score = map_score(p, y);
  for (;;) {
    // lexicographic odometer: bump the last variable first
    int v = n - 1;
    while (v >= 0 && y[v] + 1 == p.domain_sizes[v]) { y[v] = 0; --v; }
    if (v < 0) break;
    ++y[v];
    double score = map_score(p, y);
    if (score > best.score) {
      best.score = score;
      best.assignment = y;
    }
  }
  return best;
}

struct map_via_mwis_result {
  bool ok = false;
  std::string error;
  std::vector<int> assignment;
  double score = 0.0;
  double mwis_weight = 0.0;
  node_subset chosen;
  mwis_reduction reduction;
};

/// Solves the problem through the conflict-graph reduction using any
/// independent-set solver. A solver output that is not liftable fails
/// loudly instead of being repaired.
template <typename Solver>
map_via_mwis_result map_via_mwis(const map_problem& p, Solver&& solve,
                                 std::size_t node_budget = default_reduction_node_budget) {
  map_via_mwis_result res;
  res.reduction = build_reduction(p, node_budget);
  res.chosen = solve(res.reduction.graph);
  if (static_cast<int>(res.chosen.size()) != res.reduction.graph.node_count()) {
    res.error = "solver returned a vector of the wrong length";
    return res;
  }
  if (!is_independent(res.reduction.graph, res.chosen)) {
    res.error = "solver returned a set that is not independent";
    return res;
  }
  res.mwis_weight = subset_weight(res.reduction.graph, res.chosen);
  auto lifted = lift(p, res.reduction, res.chosen);
  if (!lifted) {
    res.error = "solver set does not pick exactly one assignment per factor";
    return res;
  }
  res.assignment = *lifted;
  res.score = map_score(p, res.assignment);
  res.ok = true;
  return res;
}

}  // namespace mwis

#endif
