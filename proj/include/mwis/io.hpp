#ifndef MWIS_IO_HPP
#define MWIS_IO_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "map_reduction.hpp"

namespace mwis {

/// Input rejection with the offending line when known (0 otherwise).
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& what_)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_
                                     : what_),
        line(line_) {}
};

/// A parsed instance plus the original node labels by dense id. Files
/// may use arbitrary integer labels; they are remapped to 0..n-1 in
/// ascending label order.
struct parsed_graph {
  weighted_graph graph;
  std::vector<long long> labels;
};

namespace detail {

inline bool parse_ll(const std::string& tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

inline bool parse_double(const std::string& tok, double& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

inline parsed_graph assemble(std::vector<std::pair<long long, double>> nodes,
                             std::vector<std::pair<long long, long long>> edges) {
  std::sort(nodes.begin(), nodes.end());
  parsed_graph out;
  std::map<long long, int> dense;
  std::vector<double> weights;
  for (auto& [label, w] : nodes) {
    dense[label] = static_cast<int>(out.labels.size());
    out.labels.push_back(label);
    weights.push_back(w);
  }
  std::vector<std::pair<int, int>> dense_edges;
  for (auto [a, b] : edges) dense_edges.emplace_back(dense.at(a), dense.at(b));
  out.graph = make_graph(std::move(weights), std::move(dense_edges));
  return out;
}

}  // namespace detail

/// Plain-text instance format:
///   # comment
///   p mwis <node count> <edge count>
///   v <label> <weight>      (one per node)
///   e <label> <label>       (one per edge)
inline parsed_graph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  long long want_nodes = 0, want_edges = 0;
  std::vector<std::pair<long long, double>> nodes;
  std::set<long long> labels_seen;
  std::vector<std::pair<long long, long long>> edges;
  std::set<std::pair<long long, long long>> edges_seen;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (toks[0] == "p") {
      if (saw_header) throw parse_error(line_no, "repeated header");
      if (toks.size() != 4 || toks[1] != "mwis" ||
          !detail::parse_ll(toks[2], want_nodes) ||
          !detail::parse_ll(toks[3], want_edges) || want_nodes < 0 || want_edges < 0)
        throw parse_error(line_no, "malformed header, expected 'p mwis <n> <m>'");
      saw_header = true;
    } else if (toks[0] == "v") {
      if (!saw_header) throw parse_error(line_no, "node line before header");
      long long label;
      double w;
      if (toks.size() != 3 || !detail::parse_ll(toks[1], label) ||
          !detail::parse_double(toks[2], w))
        throw parse_error(line_no, "malformed node line, expected 'v <label> <weight>'");
      if (!std::isfinite(w) || w <= 0.0)
        throw parse_error(line_no, "node weight must be positive and finite");
      if (!labels_seen.insert(label).second)
        throw parse_error(line_no, "duplicate node label " + std::to_string(label));
      nodes.emplace_back(label, w);
    } else if (toks[0] == "e") {
      if (!saw_header) throw parse_error(line_no, "edge line before header");
      long long a, b;
      if (toks.size() != 3 || !detail::parse_ll(toks[1], a) ||
          !detail::parse_ll(toks[2], b))
        throw parse_error(line_no, "malformed edge line, expected 'e <label> <label>'");
      if (a == b) throw parse_error(line_no, "self-loop");
      if (!labels_seen.count(a) || !labels_seen.count(b))
        throw parse_error(line_no, "edge references an undeclared node label");
      auto key = std::minmax(a, b);
      if (!edges_seen.insert({key.first, key.second}).second)
        throw parse_error(line_no, "duplicate edge");
      edges.emplace_back(a, b);
    } else {
      throw parse_error(line_no, "unknown line type '" + toks[0] + "'");
    }
  }
  if (!saw_header) throw parse_error(0, "missing 'p mwis' header");
  if (static_cast<long long>(nodes.size()) != want_nodes)
    throw parse_error(0, "header announces " + std::to_string(want_nodes) +
                             " nodes but " + std::to_string(nodes.size()) + " declared");
  if (static_cast<long long>(edges.size()) != want_edges)
    throw parse_error(0, "header announces " + std::to_string(want_edges) +
                             " edges but " + std::to_string(edges.size()) + " declared");
  return detail::assemble(std::move(nodes), std::move(edges));
}

inline std::string serialize_graph_text(const weighted_graph& g) {
  std::string out = "p mwis " + std::to_string(g.node_count()) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (int i = 0; i < g.node_count(); ++i)
    out += "v " + std::to_string(i) + " " + detail::format_weight(g.weights[i]) + "\n";
  for (auto [u, v] : g.edges)
    out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

/// JSON instance format:
///   {"nodes": [{"id": 0, "w": 1.0}, ...], "edges": [[0, 1], ...]}
inline parsed_graph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error(0, "top level must be an object");
  for (auto& [key, value] : doc.items())
    if (key != "nodes" && key != "edges")
      throw parse_error(0, "unknown key \"" + key + "\"");
  if (!doc.contains("nodes") || !doc["nodes"].is_array())
    throw parse_error(0, "missing \"nodes\" array");
  if (doc.contains("edges") && !doc["edges"].is_array())
    throw parse_error(0, "\"edges\" must be an array");

  std::vector<std::pair<long long, double>> nodes;
  std::set<long long> labels_seen;
  for (const auto& node : doc["nodes"]) {
    if (!node.is_object()) throw parse_error(0, "each node must be an object");
    for (auto& [key, value] : node.items())
      if (key != "id" && key != "w")
        throw parse_error(0, "unknown node key \"" + key + "\"");
    if (!node.contains("id") || !node["id"].is_number_integer())
      throw parse_error(0, "node is missing an integer \"id\"");
    if (!node.contains("w") || !node["w"].is_number())
      throw parse_error(0, "node is missing a numeric \"w\"");
    long long label = node["id"].get<long long>();
    double w = node["w"].get<double>();
    if (!std::isfinite(w) || w <= 0.0)
      throw parse_error(0, "weight of node " + std::to_string(label) +
                               " must be positive and finite");
    if (!labels_seen.insert(label).second)
      throw parse_error(0, "duplicate node id " + std::to_string(label));
    nodes.emplace_back(label, w);
  }

  std::vector<std::pair<long long, long long>> edges;
  std::set<std::pair<long long, long long>> edges_seen;
  if (doc.contains("edges")) {
    for (const auto& edge : doc["edges"]) {
      if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
          !edge[1].is_number_integer())
        throw parse_error(0, "each edge must be a pair of node ids");
      long long a = edge[0].get<long long>(), b = edge[1].get<long long>();
      if (a == b) throw parse_error(0, "self-loop at node " + std::to_string(a));
      if (!labels_seen.count(a) || !labels_seen.count(b))
        throw parse_error(0, "edge references an undeclared node id");
      auto key = std::minmax(a, b);
      if (!edges_seen.insert({key.first, key.second}).second)
        throw parse_error(0, "duplicate edge (" + std::to_string(key.first) + "," +
                                 std::to_string(key.second) + ")");
      edges.emplace_back(a, b);
    }
  }
  return detail::assemble(std::move(nodes), std::move(edges));
}

inline nlohmann::ordered_json graph_to_json(const weighted_graph& g) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (int i = 0; i < g.node_count(); ++i)
    doc["nodes"].push_back({{"id", i}, {"w", g.weights[i]}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges) doc["edges"].push_back({u, v});
  return doc;
}

/// Detects the instance format from the first significant byte.
inline parsed_graph parse_graph_auto(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? parse_graph_json(text) : parse_graph_text(text);
  }
  throw parse_error(0, "empty input");
}

/// Factor-model format:
///   {"vars": [2, 2], "factors": [{"scope": [0, 1], "table": [...]}]}
/// Tables are row-major with the last scope variable fastest.
inline map_problem parse_factor_model_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error(0, "top level must be an object");
  for (auto& [key, value] : doc.items())
    if (key != "vars" && key != "factors")
      throw parse_error(0, "unknown key \"" + key + "\"");
  if (!doc.contains("vars") || !doc["vars"].is_array())
    throw parse_error(0, "missing \"vars\" array");
  if (!doc.contains("factors") || !doc["factors"].is_array())
    throw parse_error(0, "missing \"factors\" array");

  map_problem p;
  for (const auto& d : doc["vars"]) {
    if (!d.is_number_integer())
      throw parse_error(0, "\"vars\" entries must be integers");
    p.domain_sizes.push_back(d.get<int>());
  }
  for (const auto& fj : doc["factors"]) {
    if (!fj.is_object()) throw parse_error(0, "each factor must be an object");
    for (auto& [key, value] : fj.items())
      if (key != "scope" && key != "table")
        throw parse_error(0, "unknown factor key \"" + key + "\"");
    if (!fj.contains("scope") || !fj["scope"].is_array())
      throw parse_error(0, "factor is missing a \"scope\" array");
    if (!fj.contains("table") || !fj["table"].is_array())
      throw parse_error(0, "factor is missing a \"table\" array");
    factor f;
    for (const auto& v : fj["scope"]) {
      if (!v.is_number_integer())
        throw parse_error(0, "factor scopes must hold integers");
      f.scope.push_back(v.get<int>());
    }
    for (const auto& t : fj["table"]) {
      if (!t.is_number()) throw parse_error(0, "factor tables must hold numbers");
      f.table.push_back(t.get<double>());
    }
    p.factors.push_back(std::move(f));
  }
  auto violations = validate_map_problem(p);
  if (!violations.empty()) {
    std::string msg = "invalid factor model:";
    for (const auto& v : violations) msg += " [" + v + "]";
    throw parse_error(0, msg);
  }
  return p;
}

inline nlohmann::ordered_json factor_model_to_json(const map_problem& p) {
  nlohmann::ordered_json doc;
  doc["vars"] = p.domain_sizes;
  doc["factors"] = nlohmann::ordered_json::array();
  for (const factor& f : p.factors)
    doc["factors"].push_back({{"scope", f.scope}, {"table", f.table}});
  return doc;
}

}  // namespace mwis

#endif
