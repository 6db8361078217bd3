#ifndef MWIS_GENERATORS_HPP
#define MWIS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mwis {

enum class instance_kind : std::uint8_t { random_gnp, random_bipartite, cycle, path };

inline const char* to_string(instance_kind k) {
  switch (k) {
    case instance_kind::random_gnp: return "random-gnp";
    case instance_kind::random_bipartite: return "random-bipartite";
    case instance_kind::cycle: return "cycle";
    default: return "path";
  }
}

inline instance_kind parse_instance_kind(const std::string& name) {
  if (name == "random-gnp") return instance_kind::random_gnp;
  if (name == "random-bipartite") return instance_kind::random_bipartite;
  if (name == "cycle") return instance_kind::cycle;
  if (name == "path") return instance_kind::path;
  throw std::invalid_argument("unknown instance kind: " + name);
}

struct generator_params {
  int n = 0;
  double edge_probability = 0.5;  // random kinds only
  double weight_override = 0.0;   // > 0 fixes every weight to this value
  std::uint64_t seed = 0;
};

/// Uniform draw from (0, 1]: 53 mantissa bits, zero excluded.
inline double uniform_unit_positive(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Deterministic instance families for experiments. Weights default to
/// independent uniform (0, 1] draws; the draw order (all weights first,
/// then structure) is fixed so a seed pins the instance exactly.
inline weighted_graph generate_instance(instance_kind kind, const generator_params& p) {
  if (p.n < 1)
    throw std::invalid_argument("generate_instance: need at least one node");
  if (p.edge_probability < 0.0 || p.edge_probability > 1.0)
    throw std::invalid_argument("generate_instance: edge probability outside [0,1]");
  if (p.weight_override < 0.0)
    throw std::invalid_argument("generate_instance: negative weight override");
  if (kind == instance_kind::cycle && p.n < 3)
    throw std::invalid_argument("generate_instance: a cycle needs at least 3 nodes");

  std::mt19937_64 rng(p.seed);
  std::vector<double> weights(p.n);
  for (double& w : weights)
    w = p.weight_override > 0.0 ? p.weight_override : uniform_unit_positive(rng);

  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case instance_kind::random_gnp:
      for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
          if (uniform_unit_positive(rng) <= p.edge_probability)
            edges.emplace_back(i, j);
      break;
    case instance_kind::random_bipartite: {
      std::vector<int> side(p.n);
      for (int i = 0; i < p.n; ++i) side[i] = static_cast<int>(rng() & 1u);
      for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
          if (side[i] == side[j]) continue;
          if (uniform_unit_positive(rng) <= p.edge_probability)
            edges.emplace_back(i, j);
        }
      break;
    }
    case instance_kind::cycle:
      for (int i = 0; i < p.n; ++i) edges.emplace_back(i, (i + 1) % p.n);
      break;
    case instance_kind::path:
      for (int i = 0; i + 1 < p.n; ++i) edges.emplace_back(i, i + 1);
      break;
  }
  return make_graph(std::move(weights), std::move(edges));
}

}  // namespace mwis

#endif
