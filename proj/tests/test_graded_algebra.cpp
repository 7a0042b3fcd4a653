#include <algorithm>

#include <gtest/gtest.h>

#include "formalitykit/graded_algebra.hpp"
#include "support.hpp"

using namespace fkit;

namespace {
bool has_kind(const ValidationReport& r, const std::string& kind) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}
}  // namespace

TEST(GradedAlgebra, FixturesValidate) {
  for (const auto& fx : fkit_test::small_fixtures()) {
    auto r = validate(fx.algebra);
    EXPECT_TRUE(r.ok()) << fx.name << ": " << (r.ok() ? "" : r.violations.front().message);
  }
}

TEST(GradedAlgebra, TruncatedPolyDegrees) {
  auto a = truncated_poly(3, 2);
  EXPECT_EQ(a.dim(), 4u);
  EXPECT_EQ(maxdeg(a), 6);
  EXPECT_EQ(mindeg(a), 0);
  EXPECT_EQ(a.underlying_space().dim(4), 1u);
  EXPECT_THROW(truncated_poly(0, 2), input_error);
}

TEST(GradedAlgebra, DetectsNonAssociativeTable) {
  AlgebraBuilder b;
  b.add_basis("1", 0);
  b.add_basis("x", 1);
  b.add_basis("y", 2);
  b.add_basis("z", 3);
  for (auto l : {"1", "x", "y", "z"}) {
    b.set_product("1", l, {{l, 1}});
    b.set_product(l, "1", {{l, 1}});
  }
  b.set_product("x", "x", {{"y", 1}});
  b.set_product("x", "y", {{"z", 1}});
  b.set_product("y", "x", {{"z", 2}});  // (xx)x = 2z but x(xx) = z
  b.set_unit({{"1", 1}});
  auto r = validate(b.build());
  EXPECT_TRUE(has_kind(r, "associativity"));
  EXPECT_THROW(require_valid(b.build()), input_error);
}

TEST(GradedAlgebra, DetectsGradingAndUnitErrors) {
  AlgebraBuilder b;
  b.add_basis("1", 0);
  b.add_basis("x", 1);
  b.set_product("1", "1", {{"1", 1}});
  b.set_product("1", "x", {{"x", 1}});
  b.set_product("x", "1", {{"x", 1}});
  b.set_product("x", "x", {{"1", 1}});  // degree 2 product landing in degree 0
  b.set_unit({{"1", 1}});
  EXPECT_TRUE(has_kind(validate(b.build()), "grading"));

  AlgebraBuilder c;
  c.add_basis("1", 0);
  c.add_basis("x", 1);
  c.set_product("1", "1", {{"1", 1}});
  c.set_product("1", "x", {{"x", 1}});
  c.set_unit({{"1", 1}});
  EXPECT_TRUE(has_kind(validate(c.build()), "right_unit"));
}

TEST(GradedAlgebra, DuplicateLabelsRejected) {
  AlgebraBuilder b;
  b.add_basis("x", 1);
  EXPECT_THROW(b.add_basis("x", 2), input_error);
  EXPECT_THROW(b.set_product("x", "w", {}), input_error);
}

TEST(GradedAlgebra, CenterOfPathAlgebraIsScalars) {
  auto a = fkit_test::path_algebra_a2(1);
  auto z0 = center_basis(a, 0);
  ASSERT_EQ(z0.size(), 1u);
  // the unit e1 + e2
  EXPECT_EQ(z0[0].size(), 2u);
  EXPECT_TRUE(center_basis(a, 1).empty());
}

TEST(GradedAlgebra, CommutativeCenterIsEverything) {
  auto a = truncated_poly(2, 3);
  for (int q : {0, 3, 6}) EXPECT_EQ(center_basis(a, q).size(), 1u);
}

TEST(GradedAlgebra, RegularBimoduleAndShift) {
  auto a = truncated_poly(2, 2);
  auto m = regular_bimodule(a);
  EXPECT_TRUE(validate_bimodule(a, m).ok());
  EXPECT_EQ(m.dim(), 3u);
  auto s = m.shifted(3);
  EXPECT_EQ(maxdeg(s) - maxdeg(m), -3);
}
