#pragma once

// Graph combinatorics of configurations: shift normalization, sign assignments and graded
// symmetric / exterior powers of Poincare data.

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "formalitykit/config_graph.hpp"
#include "formalitykit/errors.hpp"
#include "formalitykit/field.hpp"

namespace fkit {

namespace detail {

// Spanning forest by BFS from the lowest-index vertex of each component.
struct Forest {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> parent_edge;
  std::vector<std::size_t> depth;
  std::vector<std::size_t> order;
  std::vector<bool> tree_edge;

  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  explicit Forest(const ConfigGraph& g) : parent(g.size(), none), parent_edge(g.size(), none), depth(g.size(), 0), tree_edge(g.edges.size(), false) {
    auto adj = g.adjacency();
    std::vector<bool> seen(g.size(), false);
    for (std::size_t root = 0; root < g.size(); ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::queue<std::size_t> queue;
      queue.push(root);
      while (!queue.empty()) {
        auto u = queue.front();
        queue.pop();
        order.push_back(u);
        for (auto [v, e] : adj[u]) {
          if (seen[v]) continue;
          seen[v] = true;
          parent[v] = u;
          parent_edge[v] = e;
          depth[v] = depth[u] + 1;
          tree_edge[e] = true;
          queue.push(v);
        }
      }
    }
  }

  // Closed walk u -> ... -> lca -> ... -> v (then back to u along the non-tree edge).
  std::vector<std::size_t> cycle(std::size_t u, std::size_t v) const {
    std::vector<std::size_t> left{u}, right{v};
    while (left.back() != right.back()) {
      if (depth[left.back()] >= depth[right.back()]) {
        left.push_back(parent[left.back()]);
      } else {
        right.push_back(parent[right.back()]);
      }
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
  }
};

inline std::vector<std::string> cycle_labels(const ConfigGraph& g, const std::vector<std::size_t>& c) {
  std::vector<std::string> out;
  for (auto v : c) out.push_back(g.vertices[v]);
  return out;
}

}  // namespace detail

struct ShiftNormalization {
  bool consistent = true;
  long h = 0;
  std::vector<long> shifts;                    // per vertex
  std::vector<std::pair<long, long>> degrees;  // normalized (a_uv, a_vu) per edge
  std::vector<std::string> witness_cycle;      // when inconsistent
};

/// Shifts n_v with n_v = n_u + a_uv - h along every edge, h = nk/2, root shifts 0.
inline ShiftNormalization normalize_shifts(const ConfigGraph& g, long nk) {
  g.validate();
  if (nk % 2 != 0) throw input_error("normalize_shifts needs nk even (nk = " + std::to_string(nk) + ")");
  ShiftNormalization r;
  r.h = nk / 2;
  std::vector<long> a(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    const std::string name = g.vertices[e.u] + "-" + g.vertices[e.v];
    if (!e.a_uv && !e.a_vu) throw input_error("edge " + name + " has no hom degrees a_uv / a_vu");
    long auv = e.a_uv ? *e.a_uv : nk - *e.a_vu;
    long avu = e.a_vu ? *e.a_vu : nk - *e.a_uv;
    if (auv + avu != nk) {
      throw input_error("edge " + name + " violates Serre duality: a_uv + a_vu = " + std::to_string(auv + avu) + " != nk = " + std::to_string(nk));
    }
    a[i] = auv;
  }
  detail::Forest f(g);
  r.shifts.assign(g.size(), 0);
  for (auto v : f.order) {
    if (f.parent[v] == detail::Forest::none) continue;
    const auto& e = g.edges[f.parent_edge[v]];
    long step = e.u == f.parent[v] ? a[f.parent_edge[v]] - r.h : (nk - a[f.parent_edge[v]]) - r.h;
    r.shifts[v] = r.shifts[f.parent[v]] + step;
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    long nuv = a[i] + r.shifts[e.u] - r.shifts[e.v];
    r.degrees.emplace_back(nuv, nk - nuv);
    if (nuv != r.h && r.consistent) {
      r.consistent = false;
      r.witness_cycle = detail::cycle_labels(g, f.cycle(e.u, e.v));
    }
  }
  if (!r.consistent) r.shifts.clear();
  return r;
}

struct SignAssignment {
  bool feasible = true;
  std::vector<int> signs;  // +1 / -1 per vertex
  std::vector<std::string> witness_cycle;
};

/// eps_u * eps_v = (-1)^{d_uv} on every edge; roots get +1.
inline SignAssignment sign_assignment(const ConfigGraph& g) {
  g.validate();
  for (const auto& e : g.edges) {
    if (!e.d) throw input_error("edge " + g.vertices[e.u] + "-" + g.vertices[e.v] + " has no hom degree d");
  }
  detail::Forest f(g);
  SignAssignment r;
  r.signs.assign(g.size(), 1);
  auto parity_sign = [](int d) { return d % 2 == 0 ? 1 : -1; };
  for (auto v : f.order) {
    if (f.parent[v] == detail::Forest::none) continue;
    r.signs[v] = r.signs[f.parent[v]] * parity_sign(*g.edges[f.parent_edge[v]].d);
  }
  for (const auto& e : g.edges) {
    if (r.signs[e.u] * r.signs[e.v] != parity_sign(*e.d)) {
      r.feasible = false;
      r.witness_cycle = detail::cycle_labels(g, f.cycle(e.u, e.v));
      r.signs.clear();
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------

/// Graded dimensions: degree -> dimension, zero entries omitted. k[-m] is {m: 1}.
using PoincarePolynomial = std::map<int, long>;

enum class PowerKind { symmetric, exterior };

namespace detail {
inline long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw resource_error("graded power dimension overflows 64 bits");
  return r;
}
inline long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw resource_error("graded power dimension overflows 64 bits");
  return r;
}
inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}
}  // namespace detail

/// Koszul-signed S^n or Λ^n: coefficient of y^n in the product over degrees d of
/// 1/(1 - x^d y)^dim (symmetric behaviour) or (1 + x^d y)^dim (antisymmetric behaviour). Under S^n even
/// degrees are symmetric; under Λ^n odd degrees are.
inline PoincarePolynomial graded_power(const PoincarePolynomial& p, int n, PowerKind kind) {
  if (n < 0) throw input_error("graded power needs n >= 0");
  std::vector<PoincarePolynomial> series(static_cast<std::size_t>(n) + 1);  // by power of y
  series[0][0] = 1;
  for (const auto& [d, m] : p) {
    if (m < 0) throw input_error("negative dimension in Poincare data");
    if (m == 0) continue;
    const bool even = d % 2 == 0;
    const bool symmetric = (kind == PowerKind::symmetric) == even;
    std::vector<PoincarePolynomial> next(series.size());
    for (int i = 0; i <= n; ++i) {
      for (const auto& [deg, c] : series[static_cast<std::size_t>(i)]) {
        for (int j = 0; i + j <= n; ++j) {
          long coeff = symmetric ? detail::binomial(m + j - 1, j) : detail::binomial(m, j);
          if (coeff == 0) break;
          auto& slot = next[static_cast<std::size_t>(i + j)][deg + d * j];
          slot = detail::checked_add(slot, detail::checked_mul(c, coeff));
        }
      }
    }
    series = std::move(next);
  }
  PoincarePolynomial out;
  for (const auto& [deg, c] : series[static_cast<std::size_t>(n)]) {
    if (c != 0) out[deg] = c;
  }
  return out;
}

/// Same, refusing fields whose characteristic p satisfies p <= n.
inline PoincarePolynomial graded_power(const PoincarePolynomial& p, int n, PowerKind kind, const FieldSpec& field) {
  auto c = characteristic(field);
  if (c != 0 && c <= static_cast<std::uint64_t>(n)) {
    throw input_error("graded powers need characteristic 0 or > n (characteristic " + std::to_string(c) + ", n = " + std::to_string(n) + ")");
  }
  return graded_power(p, n, kind);
}

/// Hom between n-th equivariant powers: S^n when the linearizations agree, Λ^n otherwise.
inline PoincarePolynomial kunneth_hom(const PoincarePolynomial& p, int n, bool same_linearization) {
  return graded_power(p, n, same_linearization ? PowerKind::symmetric : PowerKind::exterior);
}

inline long total_dim(const PoincarePolynomial& p) {
  long s = 0;
  for (const auto& [d, m] : p) s += m;
  return s;
}

}  // namespace fkit
