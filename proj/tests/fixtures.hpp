#pragma once

// Fixtures and a dense Gaussian elimination that does not go through the library's sparse code.
// Shared by the unit tests and the acceptance driver.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "formalitykit/field.hpp"
#include "formalitykit/graded_algebra.hpp"

namespace fkit_test {

using fkit::Rational;

inline std::uint64_t seed_from_env() {
  std::uint64_t seed = 20240611;
  if (const char* env = std::getenv("FKIT_SEED")) seed = std::strtoull(env, nullptr, 10);
  return seed;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

using Dense = std::vector<std::vector<Rational>>;

inline std::size_t dense_rank(Dense a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t dense_rank_mod(std::vector<std::vector<long>> a, long p) {
  auto md = [p](long x) { return ((x % p) + p) % p; };
  auto inv = [&](long x) {
    long r = 1, b = md(x), e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (auto& row : a) {
    for (auto& x : row) x = md(x);
  }
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    long iv = inv(a[r][c]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      long f = a[i][c] * iv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = md(a[i][j] - f * a[r][j]);
    }
    ++r;
  }
  return r;
}

// Small fixtures of dimension at most 4, all with A^0 spanned by idempotents.
inline fkit::GradedAlgebra path_algebra_a2(int deg) {
  fkit::AlgebraBuilder b;
  b.add_basis("e1", 0);
  b.add_basis("e2", 0);
  b.add_basis("a", deg);
  b.set_product("e1", "e1", {{"e1", 1}});
  b.set_product("e2", "e2", {{"e2", 1}});
  b.set_product("e1", "a", {{"a", 1}});
  b.set_product("a", "e2", {{"a", 1}});
  b.set_unit({{"e1", 1}, {"e2", 1}});
  return b.build();
}

// k<x, y>/(x, y)^2 with deg x = dx, deg y = dy.
inline fkit::GradedAlgebra square_zero_two(int dx, int dy) {
  fkit::AlgebraBuilder b;
  b.add_basis("1", 0);
  b.add_basis("x", dx);
  b.add_basis("y", dy);
  for (auto l : {"1", "x", "y"}) {
    b.set_product("1", l, {{l, 1}});
    b.set_product(l, "1", {{l, 1}});
  }
  b.set_unit({{"1", 1}});
  return b.build();
}

// k<x, y>/(x^2, y^2, yx) with deg x = dx, deg y = dy: basis 1, x, y, xy.
inline fkit::GradedAlgebra xy_algebra(int dx, int dy) {
  fkit::AlgebraBuilder b;
  b.add_basis("1", 0);
  b.add_basis("x", dx);
  b.add_basis("y", dy);
  b.add_basis("xy", dx + dy);
  for (auto l : {"1", "x", "y", "xy"}) {
    b.set_product("1", l, {{l, 1}});
    b.set_product(l, "1", {{l, 1}});
  }
  b.set_product("x", "y", {{"xy", 1}});
  b.set_unit({{"1", 1}});
  return b.build();
}

struct Fixture {
  std::string name;
  fkit::GradedAlgebra algebra;
};

inline std::vector<Fixture> small_fixtures() {
  return {
      {"k[t]/t^2 deg 1", fkit::truncated_poly(1, 1)},
      {"k[t]/t^2 deg 2", fkit::truncated_poly(1, 2)},
      {"k[t]/t^3 deg 2", fkit::truncated_poly(2, 2)},
      {"k[t]/t^4 deg 1", fkit::truncated_poly(3, 1)},
      {"k[t]/t^3 deg 3", fkit::truncated_poly(2, 3)},
      {"A2 path deg 1", path_algebra_a2(1)},
      {"A2 path deg 2", path_algebra_a2(2)},
      {"square zero (1,2)", square_zero_two(1, 2)},
      {"square zero (2,2)", square_zero_two(2, 2)},
      {"xy (1,1)", xy_algebra(1, 1)},
      {"xy (1,2)", xy_algebra(1, 2)},
  };
}

}  // namespace fkit_test
