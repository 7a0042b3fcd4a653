#include <algorithm>

#include <gtest/gtest.h>

#include "formalitykit/formality.hpp"
#include "formalitykit/json_io.hpp"
#include "support.hpp"

using namespace fkit;

namespace {

const EvidenceItem* find_item(const FormalityCertificate& c, long q) {
  for (const auto& e : c.evidence) {
    if (e.parity == q % 2 && e.q_min() <= q && (!e.q_max() || q <= *e.q_max())) return &e;
  }
  return nullptr;
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

FormalityCertificate round_trip(const FormalityCertificate& c) {
  return json_io::certificate_from_json(nlohmann::json::parse(json_io::certificate_to_json(c).dump()));
}

}  // namespace

TEST(Affine, TextAndEvaluation) {
  auto t = detail::term(2, 3);
  EXPECT_EQ(t.at(4), 11);
  EXPECT_EQ(detail::affine_text(2, 3), "2p + 3");
  EXPECT_EQ(detail::affine_text(0, -1), "-1");
  EXPECT_EQ(detail::affine_text(1, -2), "p - 2");
}

TEST(Affine, LinkChecksUnboundedRangesExactly) {
  // 2p + 1 < 3p holds from p = 2 onwards only
  Link l{detail::term(2, 1), true, detail::term(3, 0)};
  EXPECT_TRUE(detail::link_holds(l, 2, std::nullopt));
  EXPECT_FALSE(detail::link_holds(l, 1, std::nullopt));
  // 3p < 2p + 10 fails eventually but holds on a bounded range
  Link m{detail::term(3, 0), true, detail::term(2, 10)};
  EXPECT_FALSE(detail::link_holds(m, 0, std::nullopt));
  EXPECT_TRUE(detail::link_holds(m, 0, 9));
  EXPECT_FALSE(detail::link_holds(m, 0, 10));
  Link eq{detail::term(1, 1), false, detail::term(1, 1)};
  EXPECT_TRUE(detail::link_holds(eq, 0, std::nullopt));
  eq.strict = true;
  EXPECT_FALSE(detail::link_holds(eq, 0, std::nullopt));
}

TEST(Certificates, SingleObjectsAreFormal) {
  for (long n = 1; n <= 6; ++n) {
    for (long k = 1; k <= 6; ++k) {
      auto c = certify_single(n, k);
      EXPECT_EQ(c.verdict, Verdict::CertifiedFormal) << n << "," << k;
      auto r = recheck(c);
      EXPECT_TRUE(r.ok) << n << "," << k << ": " << (r.problems.empty() ? "" : r.problems.front());
      EXPECT_TRUE(recheck(round_trip(c)).ok);
    }
  }
  EXPECT_EQ(certify_single(0, 2).verdict, Verdict::CriterionInapplicable);
}

TEST(Certificates, PnConfigurationTwoTwoTwo) {
  auto c = certify_config_pn(2, 2, 2);
  EXPECT_EQ(c.verdict, Verdict::CertifiedFormal);
  EXPECT_TRUE(recheck(c).ok);
  const auto* q4 = find_item(c, 4);
  ASSERT_NE(q4, nullptr);
  EXPECT_EQ(q4->method, Method::DegreeBound);
  // q = 4 (p = 2): maxdeg(A) + q - 2 = 6 and the Tor bound is 8
  EXPECT_EQ(q4->chain.front().lhs.at(2), 6);
  EXPECT_EQ(q4->chain.back().rhs.at(2), 8);
  const auto* q3 = find_item(c, 3);
  ASSERT_NE(q3, nullptr);
  EXPECT_EQ(q3->method, Method::GcdDivisibility);
  EXPECT_EQ(q3->g, 2);
}

TEST(Certificates, PnConfigurationGcdFailure) {
  auto c = certify_config_pn(3, 2, 3);
  EXPECT_EQ(c.verdict, Verdict::CriterionInapplicable);
  EXPECT_TRUE(mentions(c.failed_hypotheses, "gcd"));
  EXPECT_TRUE(recheck(c).ok);
}

TEST(Certificates, PnHypotheses) {
  EXPECT_TRUE(mentions(certify_config_pn(1, 2, 1).failed_hypotheses, "n >= 2"));
  EXPECT_EQ(certify_config_pn(2, 2, 5).verdict, Verdict::CriterionInapplicable);
  auto neg = certify_config_pn(2, -2, -2);
  EXPECT_TRUE(neg.experimental);
  EXPECT_TRUE(recheck(neg).ok);
}

TEST(Certificates, CyNormalizationParityRule) {
  for (long n = 1; n <= 8; ++n) {
    for (long k = 1; k <= 8; ++k) {
      if ((n * k) % 2) {
        EXPECT_THROW(cy_normalize(n, k), input_error);
        continue;
      }
      auto c = cy_normalize(n, k);
      EXPECT_EQ(c.h, n * k / 2);
      // sufficient for k >= 2, and exact for k = 2, 4
      if (k >= 2 && (n % 2 == 0 || k % 4 == 0)) {
        EXPECT_TRUE(c.gcd_ok) << n << "," << k;
      }
      if (k == 2 || k == 4) {
        EXPECT_EQ(c.gcd_ok, n % 2 == 0 || k % 4 == 0) << n << "," << k;
      }
    }
  }
}

TEST(Certificates, SphericalConfigurations) {
  for (long k : {2L, 3L}) {
    auto c = certify_config_spherical(k, k / 2, k);
    EXPECT_EQ(c.verdict, Verdict::CriterionInapplicable);
    EXPECT_FALSE(c.remarks.empty());
    EXPECT_TRUE(recheck(c).ok);
  }
  for (long k : {4L, 6L, 8L}) {
    auto c = certify_config_spherical(k, k / 2, k);
    EXPECT_EQ(c.verdict, Verdict::CertifiedFormal) << k;
    EXPECT_TRUE(recheck(c).ok);
  }
}

TEST(Certificates, SphericalFiveStallsAtQThree) {
  // The degree bound reaches equality at q = 3 (6 < 6 fails), so no certificate is issued.
  auto c = certify_config_spherical(5, 2, 5);
  EXPECT_EQ(c.verdict, Verdict::Inconclusive);
  const auto* q3 = find_item(c, 3);
  ASSERT_NE(q3, nullptr);
  EXPECT_FALSE(q3->holds);
  EXPECT_TRUE(recheck(c).ok);
}

TEST(Certificates, SphericalVerdictMonotoneInWindow) {
  auto rng = fkit_test::seeded_rng("spherical windows");
  for (int trial = 0; trial < 40; ++trial) {
    long k = fkit_test::uniform(rng, 4, 12);
    long lo = fkit_test::uniform(rng, k / 2, k), hi = fkit_test::uniform(rng, lo, k);
    long lo2 = fkit_test::uniform(rng, k / 2, lo), hi2 = fkit_test::uniform(rng, hi, k);
    auto a = certify_config_spherical(k, lo, hi), b = certify_config_spherical(k, lo2, hi2);
    if (a.verdict == Verdict::CertifiedFormal) {
      EXPECT_NE(b.verdict, Verdict::CriterionInapplicable) << k << " [" << lo << "," << hi << "]";
    }
  }
}

TEST(Certificates, TamperedCertificatesFailRecheck) {
  auto c = certify_config_pn(2, 2, 2);
  auto bad = c;
  for (auto& e : bad.evidence) {
    if (e.method == Method::DegreeBound) {
      e.chain.back().rhs.intercept += 50;
      break;
    }
  }
  EXPECT_FALSE(recheck(bad).ok);

  auto wrong_params = c;
  wrong_params.params["h"] = 3;
  EXPECT_FALSE(recheck(wrong_params).ok);

  auto uncovered = c;
  uncovered.evidence.erase(std::remove_if(uncovered.evidence.begin(), uncovered.evidence.end(),
                                          [](const EvidenceItem& e) { return e.method == Method::GcdDivisibility; }),
                           uncovered.evidence.end());
  EXPECT_FALSE(recheck(uncovered).ok);

  auto promoted = certify_config_pn(3, 2, 3);
  promoted.verdict = Verdict::CertifiedFormal;
  EXPECT_FALSE(recheck(promoted).ok);
}

TEST(Certificates, RoundTripThroughJson) {
  for (const auto& c : {certify_single(3, 2), certify_config_pn(2, 2, 2), certify_config_pn(4, 2, 4), certify_config_spherical(6, 3, 6),
                        certify_config_spherical(5, 2, 5), certify_config_spherical(2, 1, 2)}) {
    auto back = round_trip(c);
    EXPECT_EQ(json_io::certificate_to_json(back), json_io::certificate_to_json(c));
    EXPECT_TRUE(recheck(back).ok);
  }
}

TEST(Certificates, RenderUsesCriterionNotation) {
  auto c = certify_config_pn(2, 2, 2);
  bool found = false;
  for (const auto& e : c.evidence) {
    if (e.method == Method::DegreeBound) found = found || render(e).find("mindeg Tor_q") != std::string::npos;
  }
  EXPECT_TRUE(found);
}
