#pragma once

// Endomorphism algebras of configurations of P^n[k]-like objects.
//
// Basis: idempotents e_i, powers t_i^l (1 <= l <= n, degree lk) and one arrow a_ij of degree h for
// each direction of each edge. Products follow paths: x*y means "x, then y", so a_ij = e_i a_ij e_j
// and a_ij a_ji is a loop at i. In both presets t_i a_ij = a_ij t_j = 0.

#include <string>
#include <tuple>
#include <vector>

#include "formalitykit/config_graph.hpp"
#include "formalitykit/errors.hpp"
#include "formalitykit/graded_algebra.hpp"

namespace fkit {

enum class ConfigPreset {
  orthogonal,      // every product of two arrows vanishes
  zigzag,          // a_ij a_ji = t_i^{2h/k}; paths through distinct vertices vanish
  explicit_table,  // orthogonal base overridden by caller-supplied products
};

inline std::string to_string(ConfigPreset p) {
  switch (p) {
    case ConfigPreset::orthogonal: return "orthogonal";
    case ConfigPreset::zigzag: return "zigzag";
    case ConfigPreset::explicit_table: return "explicit";
  }
  return "?";
}

inline ConfigPreset parse_preset(const std::string& s) {
  if (s == "orthogonal") return ConfigPreset::orthogonal;
  if (s == "zigzag") return ConfigPreset::zigzag;
  if (s == "explicit") return ConfigPreset::explicit_table;
  throw input_error("unknown preset '" + s + "' (expected orthogonal, zigzag or explicit)");
}

/// Canonical basis labels: "e1", "t1", "t1^2", "a12". Vertex names longer than one character are
/// joined with an underscore ("a10_11").
struct ConfigLabels {
  const ConfigGraph& graph;

  bool compact() const {
    for (const auto& v : graph.vertices) {
      if (v.size() != 1) return false;
    }
    return true;
  }
  std::string e(std::size_t i) const { return "e" + graph.vertices[i]; }
  std::string t(std::size_t i, int power) const {
    std::string base = "t" + graph.vertices[i];
    return power == 1 ? base : base + "^" + std::to_string(power);
  }
  std::string a(std::size_t i, std::size_t j) const {
    return "a" + graph.vertices[i] + (compact() ? "" : "_") + graph.vertices[j];
  }
};

using ExplicitProduct = std::tuple<std::string, std::string, std::vector<std::pair<std::string, Rational>>>;

inline GradedAlgebra build_configuration_algebra(const ConfigGraph& graph, int n, int k, int h, ConfigPreset preset,
                                                 const std::vector<ExplicitProduct>& explicit_products = {}) {
  graph.validate();
  if (n < 1 || k < 1) throw input_error("configuration algebras need n, k >= 1");
  if (!graph.edges.empty() && h < 1) throw input_error("arrow degree h must be positive");
  int loop_power = 0;
  if (preset == ConfigPreset::zigzag && !graph.edges.empty()) {
    if ((2 * h) % k != 0) {
      throw input_error("zigzag preset infeasible: k = " + std::to_string(k) + " does not divide 2h = " + std::to_string(2 * h));
    }
    loop_power = 2 * h / k;
    if (loop_power > n) {
      throw input_error("zigzag preset infeasible: 2h/k = " + std::to_string(loop_power) + " exceeds n = " + std::to_string(n));
    }
  }

  ConfigLabels lab{graph};
  const std::size_t m = graph.size();
  AlgebraBuilder b;
  for (std::size_t i = 0; i < m; ++i) b.add_basis(lab.e(i), 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (int l = 1; l <= n; ++l) b.add_basis(lab.t(i, l), l * k);
  }
  std::vector<std::tuple<std::size_t, std::size_t>> arrows;
  for (const auto& e : graph.edges) {
    arrows.emplace_back(e.u, e.v);
    arrows.emplace_back(e.v, e.u);
  }
  for (auto [i, j] : arrows) b.add_basis(lab.a(i, j), h);

  for (std::size_t i = 0; i < m; ++i) {
    b.set_product(lab.e(i), lab.e(i), {{lab.e(i), 1}});
    for (int l = 1; l <= n; ++l) {
      b.set_product(lab.e(i), lab.t(i, l), {{lab.t(i, l), 1}});
      b.set_product(lab.t(i, l), lab.e(i), {{lab.t(i, l), 1}});
      for (int r = 1; l + r <= n; ++r) b.set_product(lab.t(i, l), lab.t(i, r), {{lab.t(i, l + r), 1}});
    }
  }
  for (auto [i, j] : arrows) {
    b.set_product(lab.e(i), lab.a(i, j), {{lab.a(i, j), 1}});
    b.set_product(lab.a(i, j), lab.e(j), {{lab.a(i, j), 1}});
    if (preset == ConfigPreset::zigzag) b.set_product(lab.a(i, j), lab.a(j, i), {{lab.t(i, loop_power), 1}});
  }
  if (preset == ConfigPreset::explicit_table) {
    for (const auto& [l, r, result] : explicit_products) b.set_product(l, r, result);
  } else if (!explicit_products.empty()) {
    throw input_error("explicit products are only accepted with the explicit preset");
  }

  std::vector<std::pair<std::string, Rational>> unit;
  std::vector<std::vector<std::string>> idems;
  for (std::size_t i = 0; i < m; ++i) {
    unit.emplace_back(lab.e(i), 1);
    idems.push_back({lab.e(i)});
  }
  b.set_unit(unit);
  b.set_idempotents(idems);
  GradedAlgebra a = b.build();
  auto report = validate(a);
  if (!report.ok()) {
    throw input_error("configuration algebra (" + to_string(preset) + ") fails validation: " + report.violations.front().message);
  }
  return a;
}

}  // namespace fkit
