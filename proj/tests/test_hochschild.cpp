#include <gtest/gtest.h>

#include "formalitykit/hochschild.hpp"
#include "support.hpp"

using namespace fkit;

namespace {

// Closed form for A = k[t]/t^{n+1}, deg t = k, in characteristic 0 or prime to n+1. The
// 2-periodic complex has zero odd-to-even maps and multiplication by (n+1)t^n elsewhere, so
//   HH^{0,q} = dim A^q,
//   HH^{2i,q}   = 1 iff q + i(n+1)k = jk with 0 <= j <= n-1   (i >= 1),
//   HH^{2i+1,q} = 1 iff q + (i(n+1)+1)k = jk with 1 <= j <= n.
std::size_t truncated_poly_hh(int n, int k, int p, int q) {
  auto is_power = [&](long m, int lo, int hi) { return m % k == 0 && m / k >= lo && m / k <= hi; };
  if (p == 0) return is_power(q, 0, n) ? 1 : 0;
  long i = p / 2;
  if (p % 2 == 0) return is_power(q + i * (n + 1) * k, 0, n - 1) ? 1 : 0;
  return is_power(q + (i * (n + 1) + 1) * k, 1, n) ? 1 : 0;
}

}  // namespace

TEST(Hochschild, TruncatedPolyClosedForm) {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      auto a = truncated_poly(n, k);
      for (int p = 0; p <= 4; ++p) {
        for (int q = -(p + 1) * (n + 1) * k; q <= n * k; ++q) {
          EXPECT_EQ(hh_bar(a, p, q).dim, truncated_poly_hh(n, k, p, q)) << "n=" << n << " k=" << k << " p=" << p << " q=" << q;
        }
      }
    }
  }
}

TEST(Hochschild, SquareZeroOnEveryFixture) {
  for (const auto& fx : fkit_test::small_fixtures()) {
    auto m = regular_bimodule(fx.algebra);
    for (auto mode : {BarMode::relative_normalized, BarMode::absolute}) {
      for (int p = 0; p <= 2; ++p) {
        for (int q = -8; q <= 4; ++q) {
          EXPECT_TRUE(hochschild_square_zero(fx.algebra, m, p, q, mode)) << fx.name << " p=" << p << " q=" << q << " " << to_string(mode);
        }
      }
    }
  }
}

TEST(Hochschild, RelativeAgreesWithAbsolute) {
  for (const auto& fx : fkit_test::small_fixtures()) {
    for (int p = 0; p <= 3; ++p) {
      for (int q = -8; q <= 4; ++q) {
        auto rel = hh_bar(fx.algebra, p, q, BarMode::relative_normalized);
        auto abs = hh_bar(fx.algebra, p, q, BarMode::absolute);
        EXPECT_EQ(rel.dim, abs.dim) << fx.name << " p=" << p << " q=" << q;
      }
    }
  }
}

TEST(Hochschild, ZerothGroupIsTheCenter) {
  for (const auto& fx : fkit_test::small_fixtures()) {
    for (int q = 0; q <= 4; ++q) {
      EXPECT_EQ(hh_bar(fx.algebra, 0, q).dim, center_basis(fx.algebra, q).size()) << fx.name << " q=" << q;
    }
  }
}

TEST(Hochschild, PathAlgebraIsRigid) {
  // hereditary with trivial center: only HH^0 = k survives
  auto a = fkit_test::path_algebra_a2(1);
  EXPECT_EQ(hh_bar(a, 0, 0).dim, 1u);
  for (int p = 1; p <= 3; ++p) {
    for (int q = -4; q <= 2; ++q) EXPECT_EQ(hh_bar(a, p, q).dim, 0u) << p << "," << q;
  }
}

TEST(Hochschild, ResolutionEngineAgrees) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 1}}) {
    auto a = truncated_poly(n, k);
    auto res = standard_periodic_resolution(a, n, k, 7);
    EXPECT_NO_THROW(validate_resolution(RationalField{}, a, res));
    auto m = regular_bimodule(a);
    for (int p = 0; p <= 4; ++p) {
      for (int q = -(p + 1) * (n + 1) * k; q <= n * k; ++q) {
        EXPECT_EQ(hh_bar(a, p, q).dim, hh_resolution(RationalField{}, a, res, m, p, q)) << n << "," << k << " p=" << p << " q=" << q;
      }
    }
  }
}

TEST(Hochschild, BrokenResolutionRejected) {
  auto a = truncated_poly(2, 2);
  auto res = standard_periodic_resolution(a, 2, 2, 5);
  res.terms[2].multiplier.pop_back();  // no longer composes to zero with u
  EXPECT_THROW(validate_resolution(RationalField{}, a, res), input_error);
  auto shifted = standard_periodic_resolution(a, 2, 2, 5);
  shifted.terms[3].shift -= 1;  // map no longer of degree zero
  EXPECT_THROW(validate_resolution(RationalField{}, a, shifted), input_error);
}

TEST(Hochschild, FiniteFieldsAgreeAwayFromTorsion) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 1}, {2, 3}}) {
    auto a = truncated_poly(n, k);
    auto m = regular_bimodule(a);
    for (std::uint64_t p : {5u, 7u}) {
      for (int hp = 0; hp <= 3; ++hp) {
        for (int q = -10; q <= 4; ++q) {
          EXPECT_EQ(hh_bar(RationalField{}, a, m, hp, q).dim, hh_bar(PrimeField(p), a, m, hp, q).dim);
        }
      }
    }
  }
}

TEST(Hochschild, TorsionShowsUpInCharacteristicDividingNPlusOne) {
  // (n+1) t^n vanishes mod 3 for n = 2, so the even groups at j = n appear
  auto a = truncated_poly(2, 2);
  auto m = regular_bimodule(a);
  EXPECT_EQ(hh_bar(RationalField{}, a, m, 2, -2).dim, 0u);
  EXPECT_EQ(hh_bar(PrimeField(3), a, m, 2, -2).dim, 1u);
}

TEST(Hochschild, KadeishviliScanVanishesForSmallTruncatedPolys) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 2}}) {
    for (const auto& e : kadeishvili_scan(truncated_poly(n, k), 5)) EXPECT_EQ(e.dim, 0u) << n << "," << k << " q=" << e.q;
  }
}

TEST(Hochschild, OddGeneratorHasHigherClasses) {
  // k[x]/x^2 with deg x = 1 carries classes off the Kadeishvili diagonal
  auto a = truncated_poly(1, 1);
  EXPECT_EQ(hh_bar(a, 2, -2).dim, 1u);
  EXPECT_EQ(hh_bar(a, 3, -2).dim, 1u);
  EXPECT_EQ(hh_bar(a, 3, -1).dim, 0u);
}

TEST(Hochschild, CocyclesMatchDimension) {
  auto a = truncated_poly(2, 2);
  HHOptions opts;
  opts.want_cocycles = true;
  for (int p = 0; p <= 3; ++p) {
    for (int q = -12; q <= 4; ++q) {
      auto r = hh_bar(RationalField{}, a, regular_bimodule(a), p, q, BarMode::relative_normalized, opts);
      EXPECT_EQ(r.cocycles.size(), r.dim);
    }
  }
}

TEST(Hochschild, WordCapIsAResourceError) {
  auto a = truncated_poly(3, 1);
  HHOptions opts;
  opts.max_words = 2;
  EXPECT_THROW(hh_bar(RationalField{}, a, regular_bimodule(a), 4, -4, BarMode::absolute, opts), resource_error);
}

TEST(Hochschild, ReducedBarSquareZeroAndTor) {
  for (const auto& fx : fkit_test::small_fixtures()) {
    for (int p = 1; p <= 3; ++p) {
      for (int q = 0; q <= 8; ++q) {
        auto hi = reduced_bar_slice(fx.algebra, p + 1, q);
        auto lo = reduced_bar_slice(fx.algebra, p, q);
        if (hi.words.empty() || lo.words.empty()) continue;
        EXPECT_TRUE(lo.differential.multiply(hi.differential).is_zero()) << fx.name << " p=" << p << " q=" << q;
      }
    }
  }
  // Tor of k[t]/t^{n+1}: one class in each homological degree
  auto a = truncated_poly(2, 1);
  EXPECT_EQ(bar_tor_dim(a, 1, 1), 1u);
  EXPECT_EQ(bar_tor_dim(a, 2, 3), 1u);
  EXPECT_EQ(bar_tor_dim(a, 3, 4), 1u);
  EXPECT_EQ(bar_tor_dim(a, 4, 6), 1u);
  EXPECT_EQ(bar_tor_dim(a, 2, 2), 0u);
}
