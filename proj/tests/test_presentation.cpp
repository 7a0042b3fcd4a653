#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "formalitykit/hochschild.hpp"
#include "formalitykit/presentation.hpp"
#include "support.hpp"

using namespace fkit;
using fkit_test::uniform;

namespace {

TensorPresentation one_generator(int n, int k, int truncation) {
  TensorPresentation p;
  p.vertices = 1;
  p.generators = {{"t", 0, 0, k}};
  p.relations = {{{std::vector<std::string>(static_cast<std::size_t>(n) + 1, "t"), Rational(1)}}};
  p.truncation = truncation;
  return p;
}

using Letters = std::vector<int>;  // 0 = x (deg 1), 1 = y (deg 2)

int word_degree(const Letters& w) {
  int d = 0;
  for (int l : w) d += l + 1;
  return d;
}

bool contains_factor(const Letters& w, const std::set<Letters>& s) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      if (s.count(Letters(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(j)))) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Presentation, ValidationRejectsBadRelations) {
  auto p = one_generator(2, 2, 10);
  p.relations = {{{{"t"}, Rational(1)}}};
  EXPECT_THROW(p.validate(), input_error);

  TensorPresentation q;
  q.vertices = 2;
  q.generators = {{"a", 0, 1, 1}, {"b", 1, 0, 2}};
  q.relations = {{{{"a", "a"}, Rational(1)}}};
  EXPECT_THROW(q.validate(), input_error);  // not composable
  q.relations = {{{{"a", "b"}, Rational(1)}, {{"a", "b", "a", "b"}, Rational(1)}}};
  EXPECT_THROW(q.validate(), input_error);  // not homogeneous
  q.relations = {{{{"a", "b"}, Rational(1)}}};
  EXPECT_NO_THROW(q.validate());
  q.generators[0].src = 5;
  EXPECT_THROW(q.validate(), input_error);
}

TEST(Presentation, OneGeneratorTorIsPeriodic) {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      auto pres = one_generator(n, k, 6 * n * k);
      for (int q = 0; q <= 6; ++q) {
        auto t = tor_term(pres, q);
        int p = q / 2;
        int deg = q % 2 == 0 ? p * (n + 1) * k : (p * (n + 1) + 1) * k;
        EXPECT_EQ(t.total_dim(), 1u) << n << "," << k << " q=" << q;
        EXPECT_EQ(t.dim(deg), 1u) << n << "," << k << " q=" << q;
      }
    }
  }
}

TEST(Presentation, TorIndependentOfTruncation) {
  auto a = one_generator(2, 2, 24);
  auto b = one_generator(2, 2, 31);
  for (int q = 0; q <= 4; ++q) EXPECT_EQ(tor_term(a, q).dims(), tor_term(b, q).dims()) << q;

  auto c = configuration_presentation(chain_graph(2), 2, 2, 2, ConfigPreset::orthogonal, 12);
  auto d = configuration_presentation(chain_graph(2), 2, 2, 2, ConfigPreset::orthogonal, 15);
  for (int q = 0; q <= 3; ++q) EXPECT_EQ(tor_term(c, q).dims(), tor_term(d, q).dims()) << q;
}

TEST(Presentation, TruncationTooSmallIsAResourceError) {
  EXPECT_THROW(tor_term(one_generator(2, 2, 10), 4), resource_error);
}

TEST(Presentation, NoNilpotenceIsInconclusive) {
  TensorPresentation p;
  p.generators = {{"x", 0, 0, 1}, {"y", 0, 0, 1}};
  p.relations = {{{{"x", "y"}, Rational(1)}, {{"y", "x"}, Rational(-1)}}};
  p.truncation = 12;
  EXPECT_THROW(tor_term(p, 2), inconclusive_error);
}

TEST(Presentation, ConfigurationQuotientMatchesAlgebra) {
  struct Case {
    int n, k, h;
    ConfigPreset preset;
  };
  for (const auto& c : std::vector<Case>{{2, 2, 2, ConfigPreset::orthogonal}, {2, 2, 2, ConfigPreset::zigzag}, {1, 2, 1, ConfigPreset::zigzag}}) {
    auto g = chain_graph(2);
    auto alg = build_configuration_algebra(g, c.n, c.k, c.h, c.preset);
    auto pres = configuration_presentation(g, c.n, c.k, c.h, c.preset, 4 * c.n * c.k);
    auto dims = quotient_dims(pres);
    auto space = alg.underlying_space();
    for (const auto& [d, m] : dims) EXPECT_EQ(m, space.dim(d)) << "degree " << d;
    for (int q = 1; q <= 3; ++q) {
      auto t = tor_term(pres, q);
      for (int d = 0; d <= pres.truncation; ++d) {
        EXPECT_EQ(t.dim(d), bar_tor_dim(alg, q, d)) << "q=" << q << " degree " << d << " preset " << to_string(c.preset);
      }
    }
  }
}

TEST(Presentation, MindegBoundIsALowerBound) {
  auto pres = configuration_presentation(chain_graph(2), 2, 2, 2, ConfigPreset::orthogonal, 16);
  // mindeg J = 2 and mindeg I = 4 for these degrees
  for (int q = 1; q <= 4; ++q) {
    auto t = tor_term(pres, q);
    ASSERT_FALSE(t.is_zero());
    EXPECT_GE(mindeg(t), mindeg_bound(4, 2, q).value()) << q;
  }
  EXPECT_THROW(mindeg_bound(3, 2, 2), input_error);
  EXPECT_EQ(mindeg_bound(4, 2, 0).value(), 0);
  EXPECT_EQ(mindeg_bound(8, 2, 2).value(), 8);
  EXPECT_EQ(mindeg_bound(6, 2, 3).value(), 8);
}

TEST(IdealCalculus, MonomialIdealsAgainstWordOracle) {
  auto rng = fkit_test::seeded_rng("monomial ideals");
  const int D = 7;
  TensorPresentation pres;
  pres.generators = {{"x", 0, 0, 1}, {"y", 0, 0, 2}};
  pres.truncation = D;
  IdealCalculus<RationalField> calc(RationalField{}, pres);

  std::vector<Letters> all;
  std::function<void(Letters)> grow = [&](Letters w) {
    if (!w.empty()) all.push_back(w);
    for (int l : {0, 1}) {
      Letters v = w;
      v.push_back(l);
      if (word_degree(v) <= D) grow(v);
    }
  };
  grow({});

  auto random_set = [&]() {
    std::set<Letters> s;
    long count = uniform(rng, 1, 3);
    while (static_cast<long>(s.size()) < count) {
      const auto& w = all[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(all.size()) - 1))];
      if (word_degree(w) <= 4) s.insert(w);
    }
    return s;
  };
  auto as_relations = [&](const std::set<Letters>& s) {
    std::vector<Relation> rels;
    for (const auto& w : s) {
      RelationTerm t;
      for (int l : w) t.word.push_back(l == 0 ? "x" : "y");
      t.coeff = 1;
      rels.push_back({t});
    }
    return rels;
  };

  for (int trial = 0; trial < 25; ++trial) {
    auto si = random_set(), sj = random_set();
    auto i = calc.generated(as_relations(si), pres);
    auto j = calc.generated(as_relations(sj), pres);
    auto prod = calc.product(i, j);
    auto sum = calc.sum(i, j);
    auto meet = calc.meet(i, j);
    std::vector<std::size_t> want_i(D + 1), want_p(D + 1), want_s(D + 1), want_m(D + 1);
    for (const auto& w : all) {
      auto d = static_cast<std::size_t>(word_degree(w));
      bool in_i = contains_factor(w, si), in_j = contains_factor(w, sj);
      bool in_p = false;
      for (std::size_t cut = 1; cut < w.size() && !in_p; ++cut) {
        in_p = contains_factor(Letters(w.begin(), w.begin() + static_cast<long>(cut)), si) &&
               contains_factor(Letters(w.begin() + static_cast<long>(cut), w.end()), sj);
      }
      want_i[d] += in_i;
      want_p[d] += in_p;
      want_s[d] += in_i || in_j;
      want_m[d] += in_i && in_j;
    }
    for (int d = 0; d <= D; ++d) {
      auto u = static_cast<std::size_t>(d);
      EXPECT_EQ(i.dim(d), want_i[u]) << "trial " << trial << " degree " << d;
      EXPECT_EQ(prod.dim(d), want_p[u]) << "trial " << trial << " degree " << d;
      EXPECT_EQ(sum.dim(d), want_s[u]) << "trial " << trial << " degree " << d;
      EXPECT_EQ(meet.dim(d), want_m[u]) << "trial " << trial << " degree " << d;
    }
    // mindeg calculus
    ASSERT_TRUE(i.mindeg() && j.mindeg());
    EXPECT_EQ(*sum.mindeg(), std::min(*i.mindeg(), *j.mindeg()));
    if (*i.mindeg() + *j.mindeg() <= D) {
      EXPECT_EQ(*prod.mindeg(), *i.mindeg() + *j.mindeg());
    }
  }
}

TEST(IdealCalculus, AugmentationPowers) {
  TensorPresentation pres;
  pres.generators = {{"x", 0, 0, 1}, {"y", 0, 0, 1}};
  pres.truncation = 5;
  IdealCalculus<RationalField> calc(RationalField{}, pres);
  auto j = calc.augmentation();
  auto j2 = calc.product(j, j);
  EXPECT_EQ(j2.dim(1), 0u);
  EXPECT_EQ(j2.dim(2), 4u);
  EXPECT_EQ(j2.dim(5), 32u);
  EXPECT_EQ(calc.unit().dim(0), 1u);
}
