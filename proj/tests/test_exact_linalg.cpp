#include <gtest/gtest.h>

#include "formalitykit/exact_linalg.hpp"
#include "support.hpp"

using namespace fkit;
using fkit_test::dense_rank;
using fkit_test::uniform;

namespace {

std::vector<std::vector<long>> random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range, double density) {
  std::bernoulli_distribution nz(density);
  std::vector<std::vector<long>> m(r, std::vector<long>(c, 0));
  for (auto& row : m) {
    for (auto& x : row) {
      if (nz(rng)) x = uniform(rng, -range, range);
    }
  }
  return m;
}

template <class F>
ExactMatrix<F> to_exact(const F& f, const std::vector<std::vector<long>>& m, std::size_t cols) {
  ExactMatrix<F> e(f, m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] != 0) e.add_entry(i, j, f.from_int(m[i][j]));
    }
  }
  e.finalize();
  return e;
}

fkit_test::Dense to_dense(const std::vector<std::vector<long>>& m) {
  fkit_test::Dense d;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (long x : row) r.emplace_back(x);
    d.push_back(r);
  }
  return d;
}

std::vector<Vec<RationalField>> rows_of(const std::vector<std::vector<long>>& m) {
  std::vector<Vec<RationalField>> out;
  for (const auto& row : m) {
    Vec<RationalField> v;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) v.emplace_back(j, Rational(row[j]));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Rationals, CanonicalStrings) {
  EXPECT_EQ(format_rational(parse_rational("2/4")), "1/2");
  EXPECT_EQ(format_rational(parse_rational("-6/3")), "-2");
  EXPECT_EQ(format_rational(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), input_error);
  EXPECT_THROW(parse_rational("abc"), input_error);
}

TEST(Fields, ParseAndGuards) {
  EXPECT_EQ(field_name(parse_field("rationals")), "rationals");
  EXPECT_EQ(field_name(parse_field("fp:7")), "fp:7");
  EXPECT_EQ(characteristic(parse_field("fp:5")), 5u);
  EXPECT_THROW(parse_field("fp:8"), input_error);
  EXPECT_THROW(parse_field("reals"), input_error);
  EXPECT_THROW(parse_field("fp:"), input_error);
}

TEST(PrimeFieldArithmetic, InversesAndRationalImages) {
  PrimeField f(7);
  for (std::uint64_t a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.from_rational(Rational(1, 2)), 4u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_THROW(f.from_rational(Rational(1, 7)), input_error);
}

TEST(ExactLinalg, RankMatchesDenseOracle) {
  auto rng = fkit_test::seeded_rng("rank oracle");
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 9)), c = static_cast<std::size_t>(uniform(rng, 1, 9));
    auto m = random_int_matrix(rng, r, c, 3, 0.4);
    auto e = to_exact(RationalField{}, m, c);
    EXPECT_EQ(rank(e), dense_rank(to_dense(m))) << "trial " << trial;
    for (long p : {5L, 7L}) {
      EXPECT_EQ(rank(to_exact(PrimeField(static_cast<std::uint64_t>(p)), m, c)), fkit_test::dense_rank_mod(m, p));
    }
  }
}

TEST(ExactLinalg, RankNullity) {
  auto rng = fkit_test::seeded_rng("rank-nullity");
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 10)), c = static_cast<std::size_t>(uniform(rng, 1, 10));
    auto m = random_int_matrix(rng, r, c, 4, 0.35);
    auto check = [&](const auto& field) {
      auto e = to_exact(field, m, c);
      auto ker = kernel_basis(e);
      EXPECT_EQ(rank(e) + ker.size(), c);
      for (const auto& v : ker) EXPECT_TRUE(e.apply(v).empty());
      using F = std::decay_t<decltype(field)>;
      EXPECT_EQ(span_of<F>(field, c, ker).dim(), ker.size());
    };
    check(RationalField{});
    check(PrimeField(5));
  }
}

TEST(ExactLinalg, ModularLaw) {
  auto rng = fkit_test::seeded_rng("modular law");
  RationalField f;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 8));
    auto u = rows_of(random_int_matrix(rng, static_cast<std::size_t>(uniform(rng, 0, 6)), n, 2, 0.5));
    auto w = rows_of(random_int_matrix(rng, static_cast<std::size_t>(uniform(rng, 0, 6)), n, 2, 0.5));
    auto su = span_of<RationalField>(f, n, u), sw = span_of<RationalField>(f, n, w);
    auto sum = subspace_sum<RationalField>(f, n, u, w);
    auto meet = subspace_meet<RationalField>(f, n, u, w);
    EXPECT_EQ(sum.dim() + span_of<RationalField>(f, n, meet).dim(), su.dim() + sw.dim());
    for (const auto& v : meet) {
      EXPECT_TRUE(su.contains(v));
      EXPECT_TRUE(sw.contains(v));
    }
    EXPECT_EQ(quotient_dim<RationalField>(f, n, u, meet), su.dim() - meet.size());
  }
}

TEST(ExactLinalg, ErrorsOnBadInput) {
  RationalField f;
  std::vector<Vec<RationalField>> u{{{0, Rational(1)}}};
  std::vector<Vec<RationalField>> w{{{1, Rational(1)}}};
  EXPECT_THROW(quotient_dim<RationalField>(f, 2, u, w), input_error);
  std::vector<Vec<RationalField>> too_long{{{5, Rational(1)}}};
  EXPECT_THROW(subspace_sum<RationalField>(f, 2, u, too_long), input_error);
}

TEST(ExactLinalg, MatrixProductAndTranspose) {
  RationalField f;
  ExactMatrix<RationalField> a(f, 2, 3), b(f, 3, 2);
  a.add_entry(0, 0, 1);
  a.add_entry(0, 2, 2);
  a.add_entry(1, 1, -1);
  a.finalize();
  b.add_entry(0, 1, 3);
  b.add_entry(2, 0, 1);
  b.add_entry(1, 1, 1);
  b.finalize();
  auto c = a.multiply(b);
  EXPECT_EQ(c.at(0, 0), 2);
  EXPECT_EQ(c.at(0, 1), 3);
  EXPECT_EQ(c.at(1, 1), -1);
  EXPECT_EQ(a.transpose().at(2, 0), 2);
}
