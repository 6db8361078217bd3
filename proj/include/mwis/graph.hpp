#ifndef MWIS_GRAPH_HPP
#define MWIS_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mwis {

/// 0/1 membership indicator, one entry per node.
using node_subset = std::vector<std::uint8_t>;

struct half_edge {
  int to;    // neighbor node id
  int edge;  // index into weighted_graph::edges
};

/// Undirected instance with strictly positive node weights.
///
/// Node ids are dense 0..n-1. Edges are stored as (lo, hi) pairs in
/// lexicographic order; adjacency mirrors the edge list and carries the
/// edge index so per-edge quantities (messages, duals) can be looked up
/// from either endpoint. Instances are immutable after construction and
/// safe to share across threads.
struct weighted_graph {
  std::vector<double> weights;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<half_edge>> adjacency;

  int node_count() const { return static_cast<int>(weights.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int i) const { return static_cast<int>(adjacency[i].size()); }
  const std::vector<half_edge>& neighbors(int i) const { return adjacency[i]; }

  double max_weight() const {
    double w = 0.0;
    for (double wi : weights) w = std::max(w, wi);
    return w;
  }
};

/// Dual variables, one nonnegative entry per undirected edge, aligned
/// with weighted_graph::edges.
struct dual_vector {
  std::vector<double> values;

  static dual_vector zeros(const weighted_graph& g) {
    return dual_vector{std::vector<double>(g.edge_count(), 0.0)};
  }
  double& operator[](int e) { return values[e]; }
  double operator[](int e) const { return values[e]; }
  int size() const { return static_cast<int>(values.size()); }
};

/// Checks every structural invariant and returns the violations found
/// (empty result means the instance is valid). Violations are data, not
/// exceptions, so parsers and tests can report all of them at once.
inline std::vector<std::string> validate(const weighted_graph& g) {
  std::vector<std::string> out;
  const int n = g.node_count();

  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(g.weights[i]))
      out.push_back("non-finite weight at node " + std::to_string(i));
    else if (g.weights[i] <= 0.0)
      out.push_back("non-positive weight at node " + std::to_string(i));
  }

  std::vector<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n) {
      out.push_back("edge " + std::to_string(e) + " endpoint out of range");
      continue;
    }
    if (u == v) {
      out.push_back("self-loop at node " + std::to_string(u));
      continue;
    }
    seen.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t k = 1; k < seen.size(); ++k)
    if (seen[k] == seen[k - 1])
      out.push_back("duplicate edge (" + std::to_string(seen[k].first) + "," +
                    std::to_string(seen[k].second) + ")");

  if (static_cast<int>(g.adjacency.size()) != n) {
    out.push_back("adjacency size differs from node count");
    return out;
  }
  std::size_t half_edges = 0;
  for (int i = 0; i < n; ++i) {
    for (const half_edge& h : g.adjacency[i]) {
      ++half_edges;
      if (h.edge < 0 || h.edge >= g.edge_count()) {
        out.push_back("adjacency of node " + std::to_string(i) +
                      " references invalid edge index");
        continue;
      }
      auto [u, v] = g.edges[h.edge];
      if (!((u == i && v == h.to) || (v == i && u == h.to)))
        out.push_back("adjacency of node " + std::to_string(i) +
                      " inconsistent with edge " + std::to_string(h.edge));
    }
  }
  if (out.empty() && half_edges != 2 * g.edges.size())
    out.push_back("adjacency does not cover every edge twice");
  return out;
}

/// Builds a graph from weights and an edge list, normalizing edge
/// orientation and order. Throws std::invalid_argument listing every
/// violated invariant.
inline weighted_graph make_graph(std::vector<double> weights,
                                 std::vector<std::pair<int, int>> edges) {
  weighted_graph g;
  g.weights = std::move(weights);
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  g.edges = std::move(edges);

  const int n = g.node_count();
  g.adjacency.assign(n, {});
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) continue;  // validate reports it
    g.adjacency[u].push_back({v, e});
    g.adjacency[v].push_back({u, e});
  }
  for (auto& adj : g.adjacency)
    std::sort(adj.begin(), adj.end(),
              [](const half_edge& a, const half_edge& b) { return a.to < b.to; });

  auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
  return g;
}

inline void require_subset_size(const weighted_graph& g, const node_subset& s,
                                const char* where) {
  if (static_cast<int>(s.size()) != g.node_count())
    throw std::invalid_argument(std::string(where) +
                                ": subset length does not match node count");
}

/// True iff no edge has both endpoints selected.
inline bool is_independent(const weighted_graph& g, const node_subset& s) {
  require_subset_size(g, s, "is_independent");
  for (auto [u, v] : g.edges)
    if (s[u] && s[v]) return false;
  return true;
}

inline double subset_weight(const weighted_graph& g, const node_subset& s) {
  require_subset_size(g, s, "subset_weight");
  double total = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    if (s[i]) total += g.weights[i];
  return total;
}

struct bipartition_result {
  bool bipartite = false;
  std::vector<int> side;       // 0/1 per node, valid when bipartite
  std::vector<int> odd_cycle;  // odd-length witness cycle otherwise
};

/// Two-colors every connected component, or returns an odd cycle.
inline bipartition_result bipartition(const weighted_graph& g) {
  const int n = g.node_count();
  bipartition_result res;
  res.side.assign(n, -1);
  std::vector<int> parent(n, -1);

  for (int root = 0; root < n; ++root) {
    if (res.side[root] != -1) continue;
    res.side[root] = 0;
    std::vector<int> queue{root};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int u = queue[q];
      for (const half_edge& h : g.neighbors(u)) {
        int v = h.to;
        if (res.side[v] == -1) {
          res.side[v] = 1 - res.side[u];
          parent[v] = u;
          queue.push_back(v);
        } else if (res.side[v] == res.side[u]) {
          // Same-color edge (u,v): the two tree paths to their lowest
          // common ancestor plus this edge form an odd cycle.
          std::vector<int> pu{u}, pv{v};
          auto depth = [&](int x) {
            int d = 0;
            for (int y = x; parent[y] != -1; y = parent[y]) ++d;
            return d;
          };
          int du = depth(u), dv = depth(v);
          while (du > dv) { pu.push_back(parent[pu.back()]); --du; }
          while (dv > du) { pv.push_back(parent[pv.back()]); --dv; }
          while (pu.back() != pv.back()) {
            pu.push_back(parent[pu.back()]);
            pv.push_back(parent[pv.back()]);
          }
          res.odd_cycle.assign(pu.begin(), pu.end());
          for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it)
            res.odd_cycle.push_back(*it);
          res.bipartite = false;
          res.side.clear();
          return res;
        }
      }
    }
  }
  res.bipartite = true;
  return res;
}

}  // namespace mwis

#endif
