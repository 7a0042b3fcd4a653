#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "formalitykit/errors.hpp"

namespace fkit {

/// Edge of a configuration graph. a_uv is the degree of Hom*(P_u, P_v), a_vu the reverse one,
/// d the degree of a one-dimensional Hom* between spherelike objects.
struct ConfigEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::optional<int> a_uv;
  std::optional<int> a_vu;
  std::optional<int> d;
};

/// Simple undirected graph: no self-loops, at most one edge between two vertices.
struct ConfigGraph {
  std::vector<std::string> vertices;
  std::vector<ConfigEdge> edges;

  std::size_t size() const { return vertices.size(); }

  void validate() const {
    std::set<std::string> names(vertices.begin(), vertices.end());
    if (names.size() != vertices.size()) throw input_error("duplicate vertex label");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges) {
      if (e.u >= vertices.size() || e.v >= vertices.size()) throw input_error("edge endpoint out of range");
      if (e.u == e.v) throw input_error("self-loop at vertex '" + vertices[e.u] + "'");
      auto key = std::minmax(e.u, e.v);
      if (!seen.insert(key).second) {
        throw input_error("multiple edges between '" + vertices[e.u] + "' and '" + vertices[e.v] + "'");
      }
    }
  }

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertices.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      adj[edges[i].u].emplace_back(edges[i].v, i);
      adj[edges[i].v].emplace_back(edges[i].u, i);
    }
    return adj;
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (vertices[i] == label) return i;
    }
    throw input_error("unknown vertex '" + label + "'");
  }
};

inline ConfigGraph make_graph(std::size_t m, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  ConfigGraph g;
  for (std::size_t i = 1; i <= m; ++i) g.vertices.push_back(std::to_string(i));
  for (auto [u, v] : edges) g.edges.push_back({u, v, std::nullopt, std::nullopt, std::nullopt});
  g.validate();
  return g;
}

/// A_m chain 1 - 2 - ... - m.
inline ConfigGraph chain_graph(std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
  return make_graph(m, e);
}

inline ConfigGraph cycle_graph(std::size_t m) {
  if (m < 3) throw input_error("a cycle needs at least 3 vertices");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
  return make_graph(m, e);
}

}  // namespace fkit
