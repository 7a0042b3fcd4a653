#pragma once

// Intrinsic-formality certificates. Every item is an exact integer statement about affine functions
// of p (with q = 2p + parity) that recheck() replays from the certificate data alone.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "formalitykit/errors.hpp"

namespace fkit {

enum class Verdict { CertifiedFormal, CriterionInapplicable, Inconclusive };
enum class Method { DegreeBound, GcdDivisibility, DirectHH, PeriodicResolution };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedFormal: return "CertifiedFormal";
    case Verdict::CriterionInapplicable: return "CriterionInapplicable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "CertifiedFormal") return Verdict::CertifiedFormal;
  if (s == "CriterionInapplicable") return Verdict::CriterionInapplicable;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw input_error("unknown verdict '" + s + "'");
}

inline std::string to_string(Method m) {
  switch (m) {
    case Method::DegreeBound: return "DegreeBound";
    case Method::GcdDivisibility: return "GcdDivisibility";
    case Method::DirectHH: return "DirectHH";
    case Method::PeriodicResolution: return "PeriodicResolution";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "DegreeBound") return Method::DegreeBound;
  if (s == "GcdDivisibility") return Method::GcdDivisibility;
  if (s == "DirectHH") return Method::DirectHH;
  if (s == "PeriodicResolution") return Method::PeriodicResolution;
  throw input_error("unknown evidence method '" + s + "'");
}

/// slope * p + intercept, with a display form.
struct AffineTerm {
  long slope = 0;
  long intercept = 0;
  std::string text;

  long at(long p) const { return slope * p + intercept; }
  bool same_function(const AffineTerm& o) const { return slope == o.slope && intercept == o.intercept; }
};

struct Link {
  AffineTerm lhs;
  bool strict = true;  // "<" or "<="
  AffineTerm rhs;
};

struct EvidenceItem {
  Method method = Method::DegreeBound;
  int parity = 0;  // q = 2p + parity
  long p_min = 0;
  std::optional<long> p_max;  // bounded range; equal to p_min for a single q
  std::vector<Link> chain;
  // DegreeBound data: maxdeg(A), mindeg I, mindeg J; mirrored compares mindeg(A)+q-2 > maxdeg Tor.
  long maxdeg = 0, mu = 0, nu = 0;
  bool mirrored = false;
  // PeriodicResolution data.
  long n = 0, k = 0;
  // GcdDivisibility data.
  long g = 0, h = 0;
  // DirectHH data.
  long dim = 0;
  bool holds = false;
  std::string note;

  long q_min() const { return 2 * p_min + parity; }
  std::optional<long> q_max() const {
    if (!p_max) return std::nullopt;
    return 2 * *p_max + parity;
  }
  std::string q_range() const {
    if (p_max && *p_max == p_min) return "q = " + std::to_string(q_min());
    std::string s = "q = 2p" + std::string(parity ? "+1" : "") + ", p >= " + std::to_string(p_min);
    if (p_max) s += ", p <= " + std::to_string(*p_max);
    return s;
  }
};

struct FormalityCertificate {
  std::string kind;  // single, pn-config, spherical
  std::map<std::string, long> params;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> failed_hypotheses;
  std::vector<EvidenceItem> evidence;
  std::vector<std::string> remarks;
  bool experimental = false;
};

namespace detail {

inline std::string affine_text(long slope, long intercept, const std::string& var = "p") {
  std::string s;
  if (slope != 0) s = (slope == 1 ? "" : slope == -1 ? "-" : std::to_string(slope)) + var;
  if (intercept != 0 || s.empty()) {
    if (s.empty()) {
      s = std::to_string(intercept);
    } else {
      s += intercept > 0 ? " + " + std::to_string(intercept) : " - " + std::to_string(-intercept);
    }
  }
  return s;
}

inline AffineTerm term(long slope, long intercept, std::string text = {}) {
  if (text.empty()) text = affine_text(slope, intercept);
  return {slope, intercept, std::move(text)};
}

// Link valid for every p in [p_min, p_max] (or p >= p_min when unbounded).
inline bool link_holds(const Link& l, long p_min, std::optional<long> p_max) {
  auto ok_at = [&](long p) { return l.strict ? l.lhs.at(p) < l.rhs.at(p) : l.lhs.at(p) <= l.rhs.at(p); };
  if (!ok_at(p_min)) return false;
  if (p_max) return ok_at(*p_max);
  return l.rhs.slope - l.lhs.slope >= 0;
}

inline bool chain_holds(const EvidenceItem& e) {
  if (e.chain.empty()) return false;
  bool strict = false;
  for (std::size_t i = 0; i < e.chain.size(); ++i) {
    if (i > 0 && !e.chain[i - 1].rhs.same_function(e.chain[i].lhs)) return false;
    if (!link_holds(e.chain[i], e.p_min, e.p_max)) return false;
    strict = strict || e.chain[i].strict;
  }
  return strict;
}

// lhs of the degree criterion: maxdeg(A) + q - 2 (mirrored: -(mindeg(A) + q - 2) against -maxdeg Tor).
inline AffineTerm criterion_lhs(long maxdeg, int parity, bool mirrored) {
  if (mirrored) return term(-2, maxdeg - parity + 2, "-(mindeg(A) + q - 2) = " + affine_text(-2, maxdeg - parity + 2));
  return term(2, maxdeg + parity - 2, "maxdeg(A) + q - 2 = " + affine_text(2, maxdeg + parity - 2));
}

inline AffineTerm criterion_rhs(long mu, long nu, int parity) {
  long intercept = parity ? nu : std::max(0L, 2 * nu - mu);
  return term(mu, intercept, "mindeg Tor_q >= " + affine_text(mu, intercept));
}

// Tries the supplied chain; falls back to the direct comparison. Intermediate terms must start at
// the criterion lhs and end at the bound.
inline EvidenceItem degree_item(long maxdeg, long mu, long nu, int parity, long p_min, std::optional<long> p_max,
                                bool mirrored, const std::vector<std::pair<AffineTerm, bool>>& middle) {
  EvidenceItem e;
  e.method = Method::DegreeBound;
  e.parity = parity;
  e.p_min = p_min;
  e.p_max = p_max;
  e.maxdeg = maxdeg;
  e.mu = mu;
  e.nu = nu;
  e.mirrored = mirrored;
  AffineTerm lhs = criterion_lhs(maxdeg, parity, mirrored);
  AffineTerm rhs = criterion_rhs(mu, nu, parity);
  if (!middle.empty()) {
    AffineTerm prev = lhs;
    for (const auto& [t, strict] : middle) {
      e.chain.push_back({prev, strict, t});
      prev = t;
    }
    if (!e.chain.back().rhs.same_function(rhs)) e.chain.push_back({prev, false, rhs});
    e.holds = chain_holds(e);
    if (e.holds) return e;
  }
  e.chain = {{lhs, true, rhs}};
  e.holds = chain_holds(e);
  if (!e.holds) e.note = "degree criterion fails at " + (p_max && *p_max == p_min ? e.q_range() : "p = " + std::to_string(p_min));
  return e;
}

inline EvidenceItem gcd_item(long k, long h, long q) {
  EvidenceItem e;
  e.method = Method::GcdDivisibility;
  e.parity = static_cast<int>(q % 2);
  e.p_min = q / 2;
  e.p_max = q / 2;
  e.k = k;
  e.h = h;
  e.g = std::gcd(k, h);
  long internal = 2 - q;
  e.holds = e.g > 1 && k % e.g == 0 && h % e.g == 0 && ((internal % e.g) + e.g) % e.g != 0;
  e.note = "A is concentrated in degrees divisible by " + std::to_string(e.g) + "; internal degree " + std::to_string(internal) +
           " is not";
  return e;
}

inline Verdict combine(const std::vector<EvidenceItem>& items) {
  return std::all_of(items.begin(), items.end(), [](const auto& e) { return e.holds; }) ? Verdict::CertifiedFormal
                                                                                        : Verdict::Inconclusive;
}

}  // namespace detail

/// k[t]/t^{n+1} with deg t = k: Hom^0(F^q, A(2-q)) vanishes for q > 2 because its degree
/// 2 - q - shift_q leaves the band [0, nk].
inline FormalityCertificate certify_single(long n, long k) {
  FormalityCertificate c;
  c.kind = "single";
  c.params = {{"n", n}, {"k", k}};
  if (n < 1) c.failed_hypotheses.push_back("n >= 1");
  if (k < 1) c.failed_hypotheses.push_back("k >= 1");
  if (!c.failed_hypotheses.empty()) {
    c.verdict = Verdict::CriterionInapplicable;
    return c;
  }
  const long slope = n * k + k - 2;
  for (int parity : {0, 1}) {
    EvidenceItem e;
    e.method = Method::PeriodicResolution;
    e.parity = parity;
    e.p_min = parity ? 1 : 2;
    e.n = n;
    e.k = k;
    e.maxdeg = n * k;
    long intercept = parity ? 1 + k : 2;
    e.chain = {{detail::term(0, n * k, "maxdeg(A) = " + std::to_string(n * k)), true,
                detail::term(slope, intercept, "deg Hom^0(F^q, A(2-q)) = " + detail::affine_text(slope, intercept, "i"))}};
    e.holds = detail::chain_holds(e);
    c.evidence.push_back(std::move(e));
  }
  c.verdict = detail::combine(c.evidence);
  return c;
}

/// Configurations of P^n[k]-objects with arrow degrees h. Negative k is the mirrored variant.
inline FormalityCertificate certify_config_pn(long n, long k, long h) {
  FormalityCertificate c;
  c.kind = "pn-config";
  c.params = {{"n", n}, {"k", k}, {"h", h}};
  const bool mirrored = k < 0;
  if (mirrored) {
    c.experimental = true;
    c.remarks.push_back("negative k: mirrored criterion mindeg(A) + q - 2 > maxdeg Tor_q, experimental");
  }
  const long kk = mirrored ? -k : k;
  const long hh = mirrored ? -h : h;
  if (n < 2) c.failed_hypotheses.push_back("n >= 2");
  if (kk < 2) c.failed_hypotheses.push_back(mirrored ? "|k| >= 2" : "k >= 2");
  if (2 * hh < n * kk || hh > n * kk) c.failed_hypotheses.push_back(mirrored ? "nk/2 >= h >= nk" : "nk/2 <= h <= nk");
  if (std::gcd(k, h) <= 1) c.failed_hypotheses.push_back("gcd(k,h) > 1");
  if (!c.failed_hypotheses.empty()) {
    c.verdict = Verdict::CriterionInapplicable;
    return c;
  }
  const long maxdeg = n * kk;
  const long mu = std::min({(n + 1) * kk, 2 * hh, hh + kk});
  const long nu = std::min(kk, hh);
  using detail::term;
  if (!mirrored) {
    // nk+2p-2 <= 2h+2p-2 < ph+2p <= ph+pk <= p(h+k)
    c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 0, 2, std::nullopt, false,
                                             {{term(2, 2 * hh - 2, "2h + 2p - 2"), false},
                                              {term(hh + 2, 0, "ph + 2p"), true},
                                              {term(hh + kk, 0, "ph + pk"), false},
                                              {term(hh + kk, 0, "p(h + k)"), false}}));
    // nk+2p-1 <= 2h+2p-1 < ph+2p < ph+pk+k <= p(h+k)+k
    c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 1, 2, std::nullopt, false,
                                             {{term(2, 2 * hh - 1, "2h + 2p - 1"), false},
                                              {term(hh + 2, 0, "ph + 2p"), true},
                                              {term(hh + kk, kk, "ph + pk + k"), true},
                                              {term(hh + kk, kk, "p(h + k) + k"), false}}));
  } else {
    c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 0, 2, std::nullopt, true, {}));
    c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 1, 2, std::nullopt, true, {}));
  }
  // q = 3: HH^{3,-1} vanishes by degree divisibility.
  c.evidence.push_back(detail::gcd_item(kk, hh, 3));
  c.verdict = detail::combine(c.evidence);
  return c;
}

/// Configurations of spherelike objects (End = k ⊕ k[-k]) with arrow degrees in [h_min, h_max].
inline FormalityCertificate certify_config_spherical(long k, long h_min, long h_max) {
  FormalityCertificate c;
  c.kind = "spherical";
  c.params = {{"k", k}, {"h_min", h_min}, {"h_max", h_max}};
  if (k < 4) {
    c.failed_hypotheses.push_back("k >= 4");
    if (k == 2 || k == 3) c.remarks.push_back("open case: formality is expected for k = 2, 3 but not covered by the criterion");
  }
  if (h_min < k / 2 || h_min > h_max || h_max > k) c.failed_hypotheses.push_back("floor(k/2) <= h_min <= h_max <= k");
  if (!c.failed_hypotheses.empty()) {
    c.verdict = Verdict::CriterionInapplicable;
    return c;
  }
  // The bounds increase with h, so h_min is the worst case.
  const long h = h_min;
  const long maxdeg = k;
  const long mu = std::min({2 * k, 2 * h, h + k});
  const long nu = std::min(k, h);
  using detail::term;
  // k+2p-2 <= 2h+2p-1 < 2ph
  c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 0, 2, std::nullopt, false,
                                           {{term(2, 2 * h - 1, "2h + 2p - 1"), false}, {term(2 * h, 0, "2ph"), true}}));
  // q = 3 separately, then k+2p-1 <= 2h+2p < 2ph+h for p >= 2
  c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 1, 1, 1, false,
                                           {{term(2, 2 * h, "2h + 2p"), false}, {term(2 * h, h, "2ph + h"), true}}));
  c.evidence.push_back(detail::degree_item(maxdeg, mu, nu, 1, 2, std::nullopt, false,
                                           {{term(2, 2 * h, "2h + 2p"), false}, {term(2 * h, h, "2ph + h"), true}}));
  c.verdict = detail::combine(c.evidence);
  return c;
}

struct CyNormalization {
  long h = 0;
  bool gcd_ok = false;
};

/// Calabi-Yau normalization: h = nk/2 and whether gcd(k, nk/2) > 1.
inline CyNormalization cy_normalize(long n, long k) {
  if ((n * k) % 2 != 0) throw input_error("cy_normalize needs nk even (nk = " + std::to_string(n * k) + ")");
  CyNormalization r;
  r.h = n * k / 2;
  r.gcd_ok = std::gcd(k, r.h) > 1;
  return r;
}

// ---------------------------------------------------------------------------------------------

struct RecheckReport {
  bool ok = true;
  std::vector<std::string> problems;

  void fail(std::string msg) {
    ok = false;
    problems.push_back(std::move(msg));
  }
};

/// Replays a certificate from its data: subject-derived constants, every link of every chain,
/// the gcd statements and coverage of all q > 2.
inline RecheckReport recheck(const FormalityCertificate& c) {
  RecheckReport r;
  auto param = [&](const std::string& key) -> long {
    auto it = c.params.find(key);
    if (it == c.params.end()) {
      r.fail("missing parameter " + key);
      return 0;
    }
    return it->second;
  };
  // Degree data implied by the subject.
  long maxdeg = 0, mu = 0, nu = 0, kk = 0, hh = 0;
  bool mirrored = false;
  if (c.kind == "single") {
    maxdeg = param("n") * param("k");
  } else if (c.kind == "pn-config") {
    long n = param("n"), k = param("k"), h = param("h");
    mirrored = k < 0;
    kk = mirrored ? -k : k;
    hh = mirrored ? -h : h;
    maxdeg = n * kk;
    mu = std::min({(n + 1) * kk, 2 * hh, hh + kk});
    nu = std::min(kk, hh);
  } else if (c.kind == "spherical") {
    long k = param("k"), h = param("h_min");
    maxdeg = k;
    mu = std::min({2 * k, 2 * h, h + k});
    nu = std::min(k, h);
  } else {
    r.fail("unknown certificate kind '" + c.kind + "'");
    return r;
  }
  if (!r.ok) return r;

  bool all_hold = true;
  for (std::size_t i = 0; i < c.evidence.size(); ++i) {
    const auto& e = c.evidence[i];
    const std::string where = "evidence " + std::to_string(i) + " (" + e.q_range() + ")";
    if (e.parity != 0 && e.parity != 1) r.fail(where + ": parity must be 0 or 1");
    if (e.p_max && *e.p_max < e.p_min) r.fail(where + ": empty range");
    bool holds = false;
    switch (e.method) {
      case Method::DegreeBound: {
        if (e.maxdeg != maxdeg || e.mu != mu || e.nu != nu || e.mirrored != mirrored) r.fail(where + ": degree data do not match the subject");
        if (e.chain.empty()) {
          r.fail(where + ": empty chain");
          break;
        }
        long lhs_slope = mirrored ? -2 : 2;
        long lhs_icpt = mirrored ? maxdeg - e.parity + 2 : maxdeg + e.parity - 2;
        long rhs_icpt = e.parity ? nu : std::max(0L, 2 * nu - mu);
        if (e.chain.front().lhs.slope != lhs_slope || e.chain.front().lhs.intercept != lhs_icpt) r.fail(where + ": chain does not start at maxdeg(A) + q - 2");
        if (e.chain.back().rhs.slope != mu || e.chain.back().rhs.intercept != rhs_icpt) r.fail(where + ": chain does not end at the Tor bound");
        holds = detail::chain_holds(e);
        break;
      }
      case Method::PeriodicResolution: {
        if (c.kind != "single" || e.n != param("n") || e.k != param("k")) r.fail(where + ": resolution data do not match the subject");
        if (e.chain.size() != 1) {
          r.fail(where + ": expected one link");
          break;
        }
        long n = e.n, k = e.k;
        // 2 - q - shift_q with shift_{2i} = -i(n+1)k and shift_{2i+1} = -(i(n+1)+1)k
        long slope = n * k + k - 2, icpt = e.parity ? 1 + k : 2;
        const auto& l = e.chain.front();
        if (l.lhs.slope != 0 || l.lhs.intercept != n * k || l.rhs.slope != slope || l.rhs.intercept != icpt) {
          r.fail(where + ": link does not compare maxdeg(A) with the Hom degree");
        }
        holds = detail::chain_holds(e);
        break;
      }
      case Method::GcdDivisibility: {
        if (!e.p_max || *e.p_max != e.p_min) r.fail(where + ": gcd evidence covers a single q");
        long q = e.q_min();
        long g = std::gcd(e.k, e.h);
        if (c.kind == "pn-config" && (e.k != kk || e.h != hh)) r.fail(where + ": gcd data do not match the subject");
        if (g != e.g) r.fail(where + ": recorded gcd is wrong");
        long internal = 2 - q;
        holds = g > 1 && e.k % g == 0 && e.h % g == 0 && ((internal % g) + g) % g != 0;
        break;
      }
      case Method::DirectHH: {
        if (!e.p_max || *e.p_max != e.p_min) r.fail(where + ": direct evidence covers a single q");
        holds = e.dim == 0;
        break;
      }
    }
    if (holds != e.holds) r.fail(where + ": recorded outcome does not replay");
    all_hold = all_hold && holds;
  }

  if (c.verdict == Verdict::CertifiedFormal) {
    if (!c.failed_hypotheses.empty()) r.fail("certified despite failed hypotheses");
    if (!all_hold) r.fail("certified with a failing evidence item");
    // Coverage: every q >= 3 must lie in some item range.
    long tail[2] = {-1, -1};
    for (const auto& e : c.evidence) {
      if (!e.p_max && (tail[e.parity] < 0 || e.q_min() < tail[e.parity])) tail[e.parity] = e.q_min();
    }
    if (tail[0] < 0 || tail[1] < 0) {
      r.fail("no unbounded tail for " + std::string(tail[0] < 0 ? "even" : "odd") + " q");
    } else {
      for (long q = 3; q < std::max(tail[0], tail[1]); ++q) {
        if (q >= tail[q % 2]) continue;
        bool covered = std::any_of(c.evidence.begin(), c.evidence.end(), [&](const auto& e) {
          return e.parity == q % 2 && e.q_min() <= q && e.q_max() && q <= *e.q_max();
        });
        if (!covered) r.fail("q = " + std::to_string(q) + " is not covered");
      }
    }
  } else if (c.verdict == Verdict::CriterionInapplicable) {
    if (c.failed_hypotheses.empty()) r.fail("inapplicable without a failed hypothesis");
  } else if (c.failed_hypotheses.empty() && all_hold && !c.evidence.empty()) {
    r.fail("inconclusive although all evidence holds");
  }
  return r;
}

/// Human rendering of one evidence item.
inline std::string render(const EvidenceItem& e) {
  std::string s = to_string(e.method) + " [" + e.q_range() + "] ";
  if (e.method == Method::GcdDivisibility) return s + e.note + (e.holds ? "" : " (fails)");
  if (e.method == Method::DirectHH) return s + "dim HH = " + std::to_string(e.dim);
  for (std::size_t i = 0; i < e.chain.size(); ++i) {
    const auto& l = e.chain[i];
    if (i == 0) s += l.lhs.text;
    s += std::string(l.strict ? " < " : " <= ") + l.rhs.text;
  }
  if (e.method == Method::DegreeBound && e.chain.back().rhs.text.rfind("mindeg Tor_q", 0) != 0) s += " <= mindeg Tor_q";
  s += " at p = " + std::to_string(e.p_min) + ": ";
  for (std::size_t i = 0; i < e.chain.size(); ++i) {
    const auto& l = e.chain[i];
    if (i == 0) s += std::to_string(l.lhs.at(e.p_min));
    s += std::string(l.strict ? " < " : " <= ") + std::to_string(l.rhs.at(e.p_min));
  }
  return s + (e.holds ? "" : " (fails)");
}

}  // namespace fkit
