#ifndef MWIS_COMPUTATION_TREE_HPP
#define MWIS_COMPUTATION_TREE_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "max_product.hpp"

namespace mwis {

inline constexpr std::size_t default_tree_vertex_budget = 1000000;

/// Level-t unrolling of the graph around a root node: the root's copies
/// of its neighbors, then each copy's eligible neighbors (all but the
/// parent's original), repeated until t levels exist or no copy has an
/// eligible neighbor. Vertices are stored in breadth-first order, so
/// children always follow their parent.
struct computation_tree {
  struct vertex {
    int original;                // node id in the source graph
    double weight;
    int parent;                  // -1 for the root
    std::vector<int> children;
  };
  std::vector<vertex> vertices;
  int levels = 0;  // requested level count

  std::size_t vertex_count() const { return vertices.size(); }
  double total_weight() const {
    double w = 0.0;
    for (const vertex& v : vertices) w += v.weight;
    return w;
  }
};

/// Builds the unrolled tree. Throws std::invalid_argument for levels < 1
/// or an out-of-range root, std::length_error once the vertex count
/// exceeds the budget.
inline computation_tree build_tree(const weighted_graph& g, int root, int levels,
                                   std::size_t vertex_budget = default_tree_vertex_budget) {
  if (root < 0 || root >= g.node_count())
    throw std::invalid_argument("build_tree: root out of range");
  if (levels < 1)
    throw std::invalid_argument("build_tree: need at least one level");

  computation_tree tree;
  tree.levels = levels;
  tree.vertices.push_back({root, g.weights[root], -1, {}});

  std::vector<int> frontier{0};
  for (int level = 2; level <= levels && !frontier.empty(); ++level) {
    std::vector<int> next;
    for (int vi : frontier) {
      const int u = tree.vertices[vi].original;
      const int parent = tree.vertices[vi].parent;
      const int skip = parent == -1 ? -1 : tree.vertices[parent].original;
      for (const half_edge& h : g.neighbors(u)) {
        if (h.to == skip) continue;
        if (tree.vertices.size() >= vertex_budget)
          throw std::length_error("build_tree: vertex budget of " +
                                  std::to_string(vertex_budget) + " exceeded");
        const int child = static_cast<int>(tree.vertices.size());
        tree.vertices.push_back({h.to, g.weights[h.to], vi, {}});
        tree.vertices[vi].children.push_back(child);
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

enum class tree_membership : std::uint8_t { in_every_mwis, in_no_mwis, ambiguous };

inline const char* to_string(tree_membership m) {
  switch (m) {
    case tree_membership::in_every_mwis: return "in_every_mwis";
    case tree_membership::in_no_mwis: return "in_no_mwis";
    default: return "ambiguous";
  }
}

struct membership_report {
  tree_membership decision = tree_membership::ambiguous;
  double best_with = 0.0;     // best independent-set weight forcing the root in
  double best_without = 0.0;  // best excluding the root
  double tolerance = 0.0;
};

/// Decides whether the root is in every / no / some-but-not-all maximum
/// independent sets of the tree, by the standard two-state tree DP.
inline membership_report root_membership(const computation_tree& tree) {
  assert(!tree.vertices.empty());
  const std::size_t n = tree.vertex_count();
  std::vector<double> with(n), without(n);
  // Breadth-first storage puts children after parents, so a reverse scan
  // sees every child before its parent.
  for (std::size_t v = n; v-- > 0;) {
    double in = tree.vertices[v].weight, out = 0.0;
    for (int c : tree.vertices[v].children) {
      in += without[c];
      out += std::max(with[c], without[c]);
    }
    with[v] = in;
    without[v] = out;
  }

  membership_report res;
  res.best_with = with[0];
  res.best_without = without[0];
  res.tolerance = 1e-9 * tree.total_weight();
  if (with[0] > without[0] + res.tolerance)
    res.decision = tree_membership::in_every_mwis;
  else if (with[0] < without[0] - res.tolerance)
    res.decision = tree_membership::in_no_mwis;
  else
    res.decision = tree_membership::ambiguous;
  return res;
}

/// Tree-side reference for the message-passing estimate of node i after
/// t sweeps: membership of root i in the (t+1)-level unrolled tree.
inline estimate_value oracle_estimate(const weighted_graph& g, int i, int sweeps,
                                      std::size_t vertex_budget = default_tree_vertex_budget) {
  if (sweeps < 0)
    throw std::invalid_argument("oracle_estimate: negative sweep count");
  membership_report r = root_membership(build_tree(g, i, sweeps + 1, vertex_budget));
  switch (r.decision) {
    case tree_membership::in_every_mwis: return estimate_value::one;
    case tree_membership::in_no_mwis: return estimate_value::zero;
    default: return estimate_value::unknown;
  }
}

/// Closed-form vertex count of build_tree(g, root, levels): the root
/// branches to all neighbors, deeper copies to all but their parent.
inline std::size_t expected_tree_vertices(const weighted_graph& g, int root, int levels,
                                          std::size_t cap = default_tree_vertex_budget) {
  if (root < 0 || root >= g.node_count())
    throw std::invalid_argument("expected_tree_vertices: root out of range");
  if (levels < 1)
    throw std::invalid_argument("expected_tree_vertices: need at least one level");
  // count[(u, p)] over the current level; p == -1 encodes "no parent".
  std::size_t total = 1;
  std::vector<std::pair<std::pair<int, int>, std::size_t>> level{{{root, -1}, 1}};
  for (int l = 2; l <= levels && !level.empty(); ++l) {
    std::vector<std::pair<std::pair<int, int>, std::size_t>> next;
    for (auto [key, count] : level) {
      auto [u, p] = key;
      for (const half_edge& h : g.neighbors(u)) {
        if (h.to == p) continue;
        next.push_back({{h.to, u}, count});
        total += count;
        if (total > cap) return total;  // saturated; caller only needs "over budget"
      }
    }
    // merge duplicate (node, parent) keys to keep the level list small
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    level.clear();
    for (auto& entry : next) {
      if (!level.empty() && level.back().first == entry.first)
        level.back().second += entry.second;
      else
        level.push_back(entry);
    }
  }
  return total;
}

}  // namespace mwis

#endif
