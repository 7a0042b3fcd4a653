#pragma once

// Bigraded Hochschild cohomology HH^{p,q}(A, M).
//
// The default engine is the normalized bar complex relative to R = A^0 = k^m: cochains are
// R-bimodule maps from composable words in A^+ to M, raising internal degree by q. Only words whose
// degree can land in the support of M are materialized. The absolute bar complex over k is kept as
// an independent cross-check. Sign convention: (-1)^i on the i-th inner multiplication.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "formalitykit/errors.hpp"
#include "formalitykit/exact_linalg.hpp"
#include "formalitykit/field.hpp"
#include "formalitykit/graded_algebra.hpp"
#include "formalitykit/word.hpp"

namespace fkit {

enum class BarMode { relative_normalized, absolute };

inline std::string to_string(BarMode m) { return m == BarMode::absolute ? "absolute" : "relative_normalized"; }

inline BarMode parse_bar_mode(const std::string& s) {
  if (s == "relative" || s == "relative_normalized") return BarMode::relative_normalized;
  if (s == "absolute") return BarMode::absolute;
  throw input_error("unknown bar mode '" + s + "' (expected relative or absolute)");
}

struct HHOptions {
  std::size_t max_words = 2'000'000;  // per slice
  bool want_cocycles = false;
};

/// A cocycle representative: value of the cochain on each word it does not kill.
struct CocycleTerm {
  std::vector<std::string> word;
  std::string value;  // module basis label
  std::string coeff;
};

struct HHResult {
  int p = 0;
  int q = 0;
  std::size_t dim = 0;
  BarMode mode = BarMode::relative_normalized;
  std::array<std::size_t, 3> slice_dims{};  // dim C^{p-1,q}, C^{p,q}, C^{p+1,q}
  std::vector<std::vector<CocycleTerm>> cocycles;
};

namespace detail {

// Algebra and module tables converted into the working field, plus letter and block data.
template <class F>
struct BarContext {
  F field;
  BarMode mode;
  std::size_t vertices = 1;
  std::vector<std::size_t> letters;  // algebra basis indices allowed in words
  std::vector<std::size_t> letter_of_basis;  // basis index -> letter position or npos
  std::vector<int> letter_degree;
  std::vector<std::size_t> letter_src, letter_tgt;
  std::vector<std::vector<Vec<F>>> mult;  // over letters: mult[x][y] in letter coordinates
  std::vector<std::size_t> module_src, module_tgt;
  std::vector<int> module_degree;
  std::vector<std::vector<Vec<F>>> left;   // left[letter][m]
  std::vector<std::vector<Vec<F>>> right;  // right[m][letter]
  std::vector<std::string> letter_label, module_label;
  int min_letter_degree = 0, max_letter_degree = 0;
  int min_module_degree = 0, max_module_degree = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BarContext(const F& f, const GradedAlgebra& a, const GradedBimodule& m, BarMode md) : field(f), mode(md) {
    if (m.algebra_dim() != a.dim()) throw input_error("bimodule is not defined over this algebra");
    BlockStructure ablocks, mblocks;
    if (mode == BarMode::relative_normalized) {
      for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.degree(i) < 0) throw input_error("relative bar complex needs a non-negatively graded algebra");
      }
      auto idems = detect_idempotents(a);
      std::size_t deg0 = 0;
      for (std::size_t i = 0; i < a.dim(); ++i) deg0 += a.degree(i) == 0;
      if (deg0 != idems.size()) {
        throw input_error("relative bar complex needs A^0 spanned by orthogonal idempotents (dim A^0 = " +
                          std::to_string(deg0) + ", " + std::to_string(idems.size()) + " idempotents)");
      }
      ablocks = algebra_blocks(a, idems);
      mblocks = module_blocks(m, idems);
      vertices = idems.size();
      for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.degree(i) > 0) letters.push_back(i);
      }
    } else {
      vertices = 1;
      ablocks = {1, std::vector<std::size_t>(a.dim(), 0), std::vector<std::size_t>(a.dim(), 0)};
      mblocks = {1, std::vector<std::size_t>(m.dim(), 0), std::vector<std::size_t>(m.dim(), 0)};
      for (std::size_t i = 0; i < a.dim(); ++i) letters.push_back(i);
    }
    letter_of_basis.assign(a.dim(), npos);
    for (std::size_t l = 0; l < letters.size(); ++l) {
      letter_of_basis[letters[l]] = l;
      letter_degree.push_back(a.degree(letters[l]));
      letter_src.push_back(ablocks.src[letters[l]]);
      letter_tgt.push_back(ablocks.tgt[letters[l]]);
      letter_label.push_back(a.element(letters[l]).label);
    }
    if (!letters.empty()) {
      min_letter_degree = *std::min_element(letter_degree.begin(), letter_degree.end());
      max_letter_degree = *std::max_element(letter_degree.begin(), letter_degree.end());
    }
    auto convert = [&](const Combo& c, bool to_letters) {
      Vec<F> v;
      for (const auto& [idx, coeff] : c) {
        std::size_t target = idx;
        if (to_letters) {
          target = letter_of_basis[idx];
          // Components in A^0 vanish in the normalized complex (cannot occur for products in A^+).
          if (target == npos) continue;
        }
        v.emplace_back(target, field.from_rational(coeff));
      }
      return normalize(field, std::move(v));
    };
    mult.assign(letters.size(), std::vector<Vec<F>>(letters.size()));
    for (std::size_t x = 0; x < letters.size(); ++x) {
      for (std::size_t y = 0; y < letters.size(); ++y) mult[x][y] = convert(a.product(letters[x], letters[y]), true);
    }
    for (std::size_t j = 0; j < m.dim(); ++j) {
      module_src.push_back(mblocks.src[j]);
      module_tgt.push_back(mblocks.tgt[j]);
      module_degree.push_back(m.degree(j));
      module_label.push_back(m.basis()[j].label);
    }
    if (m.dim() > 0) {
      min_module_degree = *std::min_element(module_degree.begin(), module_degree.end());
      max_module_degree = *std::max_element(module_degree.begin(), module_degree.end());
    }
    left.assign(letters.size(), std::vector<Vec<F>>(m.dim()));
    right.assign(m.dim(), std::vector<Vec<F>>(letters.size()));
    for (std::size_t x = 0; x < letters.size(); ++x) {
      for (std::size_t j = 0; j < m.dim(); ++j) {
        left[x][j] = convert(m.left(letters[x], j), false);
        right[j][x] = convert(m.right(j, letters[x]), false);
      }
    }
  }

  std::size_t word_src(const Word& w) const { return w.letters.empty() ? w.start : letter_src[w.letters.front()]; }
  std::size_t word_tgt(const Word& w) const { return w.letters.empty() ? w.start : letter_tgt[w.letters.back()]; }
  int word_degree(const Word& w) const {
    int d = 0;
    for (auto l : w.letters) d += letter_degree[l];
    return d;
  }

  /// All composable words of the given length with degree in [dmin, dmax].
  std::vector<Word> words(int length, int dmin, int dmax, std::size_t cap) const {
    std::vector<Word> out;
    if (length < 0 || dmin > dmax) return out;
    if (length == 0) {
      if (dmin <= 0 && 0 <= dmax) {
        for (std::size_t v = 0; v < vertices; ++v) out.push_back({v, {}});
      }
      return out;
    }
    Word cur;
    cur.letters.reserve(static_cast<std::size_t>(length));
    auto rec = [&](auto&& self, int deg) -> void {
      int remaining = length - static_cast<int>(cur.letters.size());
      if (remaining == 0) {
        if (deg >= dmin && deg <= dmax) {
          if (out.size() >= cap) {
            throw resource_error("bar slice exceeds the word cap of " + std::to_string(cap) + " words");
          }
          cur.start = letter_src[cur.letters.front()];
          out.push_back(cur);
        }
        return;
      }
      if (deg + remaining * min_letter_degree > dmax || deg + remaining * max_letter_degree < dmin) return;
      for (std::uint32_t l = 0; l < letters.size(); ++l) {
        if (!cur.letters.empty() && letter_tgt[cur.letters.back()] != letter_src[l]) continue;
        cur.letters.push_back(l);
        self(self, deg + letter_degree[l]);
        cur.letters.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }
};

// Basis of C^{p,q}: pairs (word, module basis element) with matching block and degree deg(w) + q.
template <class F>
struct CochainSlice {
  int p = 0;
  int q = 0;
  std::vector<Word> words;
  std::unordered_map<Word, std::size_t, WordHash> word_index;
  std::vector<std::pair<std::size_t, std::size_t>> basis;         // (word, module element)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_word;  // word -> [(module element, basis idx)]
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;

  std::size_t dim() const { return basis.size(); }
};

template <class F>
CochainSlice<F> cochain_slice(const BarContext<F>& ctx, int p, int q, std::size_t cap) {
  CochainSlice<F> s;
  s.p = p;
  s.q = q;
  if (p < 0) return s;
  s.words = ctx.words(p, ctx.min_module_degree - q, ctx.max_module_degree - q, cap);
  s.by_word.resize(s.words.size());
  for (std::size_t w = 0; w < s.words.size(); ++w) {
    s.word_index.emplace(s.words[w], w);
    const Word& word = s.words[w];
    const int target = ctx.word_degree(word) + q;
    const std::size_t src = ctx.word_src(word), tgt = ctx.word_tgt(word);
    for (std::size_t m = 0; m < ctx.module_degree.size(); ++m) {
      if (ctx.module_degree[m] != target || ctx.module_src[m] != src || ctx.module_tgt[m] != tgt) continue;
      std::size_t idx = s.basis.size();
      s.basis.emplace_back(w, m);
      s.by_word[w].emplace_back(m, idx);
      s.index[{w, m}] = idx;
    }
  }
  return s;
}

// delta: C^{p,q} -> C^{p+1,q}; rows index `to`, columns index `from`.
template <class F>
ExactMatrix<F> hochschild_differential(const BarContext<F>& ctx, const CochainSlice<F>& from, const CochainSlice<F>& to) {
  const F& field = ctx.field;
  ExactMatrix<F> d(field, to.dim(), from.dim());
  if (from.dim() == 0 || to.dim() == 0) return d;
  const int p = from.p;
  auto add_face = [&](std::size_t u_idx, const Word& face, auto&& value_map, const typename F::value_type& sign) {
    auto it = from.word_index.find(face);
    if (it == from.word_index.end()) return;
    for (const auto& [m, col] : from.by_word[it->second]) {
      Vec<F> image = value_map(m);
      for (const auto& [m2, c] : image) {
        auto row = to.index.find({u_idx, m2});
        if (row == to.index.end()) continue;
        d.add_entry(row->second, col, field.mul(sign, c));
      }
    }
  };
  const auto one = field.one();
  const auto minus_one = field.neg(one);
  for (std::size_t u_idx = 0; u_idx < to.words.size(); ++u_idx) {
    if (to.by_word[u_idx].empty()) continue;
    const Word& u = to.words[u_idx];
    const auto& a = u.letters;
    // a_1 f(a_2, ..., a_{p+1})
    {
      Word face{ctx.letter_tgt[a.front()], std::vector<std::uint32_t>(a.begin() + 1, a.end())};
      if (!face.letters.empty()) face.start = ctx.letter_src[face.letters.front()];
      add_face(u_idx, face, [&](std::size_t m) { return ctx.left[a.front()][m]; }, one);
    }
    // (-1)^i f(..., a_i a_{i+1}, ...)
    for (int i = 1; i <= p; ++i) {
      const auto& prod = ctx.mult[a[i - 1]][a[i]];
      if (prod.empty()) continue;
      const auto sign = (i % 2 == 0) ? one : minus_one;
      for (const auto& [b, c] : prod) {
        Word face;
        face.letters.reserve(a.size() - 1);
        face.letters.insert(face.letters.end(), a.begin(), a.begin() + (i - 1));
        face.letters.push_back(static_cast<std::uint32_t>(b));
        face.letters.insert(face.letters.end(), a.begin() + (i + 1), a.end());
        face.start = ctx.letter_src[face.letters.front()];
        add_face(u_idx, face, [&](std::size_t m) { return Vec<F>{{m, c}}; }, sign);
      }
    }
    // (-1)^{p+1} f(a_1, ..., a_p) a_{p+1}
    {
      Word face{ctx.letter_src[a.front()], std::vector<std::uint32_t>(a.begin(), a.end() - 1)};
      const auto sign = ((p + 1) % 2 == 0) ? one : minus_one;
      add_face(u_idx, face, [&](std::size_t m) { return ctx.right[m][a.back()]; }, sign);
    }
  }
  d.finalize();
  return d;
}

template <class F>
std::vector<CocycleTerm> describe_cochain(const BarContext<F>& ctx, const CochainSlice<F>& s, const Vec<F>& v) {
  std::vector<CocycleTerm> out;
  for (const auto& [idx, c] : v) {
    const auto& [w, m] = s.basis[idx];
    CocycleTerm t;
    for (auto l : s.words[w].letters) t.word.push_back(ctx.letter_label[l]);
    t.value = ctx.module_label[m];
    t.coeff = ctx.field.to_string(c);
    out.push_back(std::move(t));
  }
  return out;
}

template <class F>
HHResult hh_bar_impl(const F& field, const GradedAlgebra& a, const GradedBimodule& m, int p, int q, BarMode mode,
                     const HHOptions& opts) {
  if (p < 0) throw input_error("homological degree p must be non-negative");
  require_valid(a);
  BarContext<F> ctx(field, a, m, mode);
  auto prev = cochain_slice(ctx, p - 1, q, opts.max_words);
  auto cur = cochain_slice(ctx, p, q, opts.max_words);
  auto next = cochain_slice(ctx, p + 1, q, opts.max_words);
  HHResult r;
  r.p = p;
  r.q = q;
  r.mode = mode;
  r.slice_dims = {prev.dim(), cur.dim(), next.dim()};
  auto d_out = hochschild_differential(ctx, cur, next);
  std::size_t rank_out = rank(d_out);
  std::size_t rank_in = 0;
  std::optional<ExactMatrix<F>> d_in;
  if (p > 0) {
    d_in = hochschild_differential(ctx, prev, cur);
    rank_in = rank(*d_in);
  }
  r.dim = cur.dim() - rank_out - rank_in;
  if (opts.want_cocycles && r.dim > 0) {
    Subspace<F> span(field, cur.dim());
    if (d_in) {
      auto t = d_in->transpose();
      for (std::size_t i = 0; i < t.rows(); ++i) span.insert(t.row(i));
    }
    for (const auto& z : kernel_basis(d_out)) {
      if (span.insert(z)) r.cocycles.push_back(describe_cochain(ctx, cur, z));
    }
  }
  return r;
}

}  // namespace detail

/// HH^{p,q}(A, M) from the bar complex.
inline HHResult hh_bar(const FieldSpec& field, const GradedAlgebra& a, const GradedBimodule& m, int p, int q,
                       BarMode mode = BarMode::relative_normalized, const HHOptions& opts = {}) {
  return std::visit([&](const auto& f) { return detail::hh_bar_impl(f, a, m, p, q, mode, opts); }, field);
}

inline HHResult hh_bar(const GradedAlgebra& a, int p, int q, BarMode mode = BarMode::relative_normalized,
                       const HHOptions& opts = {}) {
  return hh_bar(RationalField{}, a, regular_bimodule(a), p, q, mode, opts);
}

/// True when delta_{p+1} o delta_p = 0 on the degree-q cochains.
inline bool hochschild_square_zero(const GradedAlgebra& a, const GradedBimodule& m, int p, int q, BarMode mode,
                                   std::size_t cap = 2'000'000) {
  RationalField f;
  detail::BarContext<RationalField> ctx(f, a, m, mode);
  auto s0 = detail::cochain_slice(ctx, p, q, cap);
  auto s1 = detail::cochain_slice(ctx, p + 1, q, cap);
  auto s2 = detail::cochain_slice(ctx, p + 2, q, cap);
  auto d0 = detail::hochschild_differential(ctx, s0, s1);
  auto d1 = detail::hochschild_differential(ctx, s1, s2);
  return d1.multiply(d0).is_zero();
}

/// Degree-q part of the reduced bar complex (A^+)^{⊗_R p} computing Tor^A(R, R), with its
/// differential into slice (p-1, q): inner multiplications only.
struct BarComplexSlice {
  int p = 0;
  int q = 0;
  std::vector<std::vector<std::string>> words;
  ExactMatrix<RationalField> differential{RationalField{}, 0, 0};
};

namespace detail {
template <class F>
std::vector<Word> reduced_words(const BarContext<F>& ctx, int p, int q, std::size_t cap) {
  return ctx.words(p, q, q, cap);
}

template <class F>
ExactMatrix<F> reduced_differential(const BarContext<F>& ctx, const std::vector<Word>& from, const std::vector<Word>& to) {
  std::unordered_map<Word, std::size_t, WordHash> index;
  for (std::size_t i = 0; i < to.size(); ++i) index.emplace(to[i], i);
  ExactMatrix<F> d(ctx.field, to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    const auto& a = from[col].letters;
    for (std::size_t i = 1; i < a.size(); ++i) {
      const auto sign = (i % 2 == 0) ? ctx.field.one() : ctx.field.neg(ctx.field.one());
      for (const auto& [b, c] : ctx.mult[a[i - 1]][a[i]]) {
        Word face;
        face.letters.insert(face.letters.end(), a.begin(), a.begin() + static_cast<long>(i - 1));
        face.letters.push_back(static_cast<std::uint32_t>(b));
        face.letters.insert(face.letters.end(), a.begin() + static_cast<long>(i + 1), a.end());
        face.start = ctx.letter_src[face.letters.front()];
        auto it = index.find(face);
        if (it != index.end()) d.add_entry(it->second, col, ctx.field.mul(sign, c));
      }
    }
  }
  d.finalize();
  return d;
}
}  // namespace detail

inline BarComplexSlice reduced_bar_slice(const GradedAlgebra& a, int p, int q, std::size_t cap = 2'000'000) {
  if (p < 0) throw input_error("homological degree p must be non-negative");
  RationalField f;
  detail::BarContext<RationalField> ctx(f, a, regular_bimodule(a), BarMode::relative_normalized);
  auto from = detail::reduced_words(ctx, p, q, cap);
  auto to = detail::reduced_words(ctx, p - 1, q, cap);
  BarComplexSlice s;
  s.p = p;
  s.q = q;
  for (const auto& w : from) {
    std::vector<std::string> labels;
    for (auto l : w.letters) labels.push_back(ctx.letter_label[l]);
    s.words.push_back(std::move(labels));
  }
  s.differential = p > 0 ? detail::reduced_differential(ctx, from, to) : ExactMatrix<RationalField>(f, 0, from.size());
  return s;
}

/// dim Tor^A_p(R, R) in internal degree q, read off the reduced bar complex.
inline std::size_t bar_tor_dim(const GradedAlgebra& a, int p, int q, std::size_t cap = 2'000'000) {
  auto s = reduced_bar_slice(a, p, q, cap);
  auto up = reduced_bar_slice(a, p + 1, q, cap);
  return s.words.size() - rank(s.differential) - rank(up.differential);
}

// ---------------------------------------------------------------------------------------------
// Explicit free resolutions F^i = A^e(shift_i) with maps "multiplication by" an element of A^e.

/// coeff * (left ⊗ right) in A^e, acting on bimodules by m -> left . m . right.
struct EnvelopingTerm {
  Rational coeff;
  std::size_t left = 0;
  std::size_t right = 0;
};
using EnvelopingElement = std::vector<EnvelopingTerm>;

struct ResolutionTerm {
  int shift = 0;
  EnvelopingElement multiplier;  // map F^i -> F^{i-1}; empty for i = 0 (augmentation is multiplication)
};

struct PeriodicResolutionSpec {
  std::vector<ResolutionTerm> terms;
};

/// The 2-periodic resolution of k[t]/t^{n+1} (as built by truncated_poly) with `length` terms:
/// F^{2i} = A^e(-i(n+1)k), F^{2i+1} = A^e(-(i(n+1)+1)k), maps u = t⊗1 - 1⊗t and v = Σ t^{n-j}⊗t^j.
inline PeriodicResolutionSpec standard_periodic_resolution(const GradedAlgebra& a, int n, int k, int length) {
  auto idx = [&](int power) -> std::size_t {
    if (power == 0) return a.require_index("1");
    if (power == 1) return a.require_index("t");
    return a.require_index("t^" + std::to_string(power));
  };
  PeriodicResolutionSpec spec;
  for (int i = 0; i < length; ++i) {
    ResolutionTerm term;
    int half = i / 2;
    if (i % 2 == 0) {
      term.shift = -half * (n + 1) * k;
      if (i > 0) {
        for (int j = 0; j <= n; ++j) term.multiplier.push_back({1, idx(n - j), idx(j)});
      }
    } else {
      term.shift = -(half * (n + 1) + 1) * k;
      term.multiplier.push_back({1, idx(1), idx(0)});
      term.multiplier.push_back({-1, idx(0), idx(1)});
    }
    spec.terms.push_back(std::move(term));
  }
  return spec;
}

struct ResolutionCheckOptions {
  int max_position = 8;  // exactness is verified at positions -1 .. max_position
};

namespace detail {

// Elements of A ⊗ A as sparse vectors over pairs (x, y) -> x * dim + y.
template <class F>
Vec<F> act_on_pair(const F& field, const GradedAlgebra& a, const EnvelopingElement& u, std::size_t x, std::size_t y) {
  Vec<F> out;
  const std::size_t n = a.dim();
  for (const auto& t : u) {
    const Combo& left = a.product(t.left, x);
    const Combo& right = a.product(y, t.right);
    for (const auto& [i, ci] : left) {
      for (const auto& [j, cj] : right) out.emplace_back(i * n + j, field.from_rational(t.coeff * ci * cj));
    }
  }
  return normalize(field, std::move(out));
}

template <class F>
void validate_resolution_impl(const F& field, const GradedAlgebra& a, const PeriodicResolutionSpec& res,
                              const ResolutionCheckOptions& opts) {
  const std::size_t n = a.dim();
  if (res.terms.empty()) throw input_error("resolution has no terms");
  for (std::size_t i = 1; i < res.terms.size(); ++i) {
    const int expected = res.terms[i - 1].shift - res.terms[i].shift;
    if (res.terms[i].multiplier.empty()) throw input_error("resolution map " + std::to_string(i) + " is missing");
    for (const auto& t : res.terms[i].multiplier) {
      if (t.left >= n || t.right >= n) throw input_error("resolution multiplier refers to an unknown basis element");
      if (a.degree(t.left) + a.degree(t.right) != expected) {
        throw input_error("resolution map " + std::to_string(i) + " is not homogeneous of degree " + std::to_string(expected));
      }
    }
  }
  // Composites vanish: mu(u_1) = 0 and u_{i+1} u_i = 0 in A^e.
  if (res.terms.size() > 1) {
    Combo mu;
    for (const auto& t : res.terms[1].multiplier) mu = combo_add(mu, a.product(t.left, t.right), t.coeff);
    if (!mu.empty()) throw input_error("resolution: augmentation composed with map 1 is nonzero");
  }
  for (std::size_t i = 1; i + 1 < res.terms.size(); ++i) {
    Vec<F> total;
    for (const auto& t : res.terms[i + 1].multiplier) {
      auto img = act_on_pair(field, a, res.terms[i].multiplier, t.left, t.right);
      total = sub_scaled(field, total, field.neg(field.from_rational(t.coeff)), img);
    }
    if (!total.empty()) throw input_error("resolution: maps " + std::to_string(i + 1) + " and " + std::to_string(i) + " do not compose to zero");
  }
  // Degreewise exactness. Position -1 is A itself; position i is F^i.
  int lo = 2 * mindeg(a), hi = 2 * maxdeg(a);
  auto pairs_in_degree = [&](int deg) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (a.degree(x) + a.degree(y) == deg) out.push_back(x * n + y);
      }
    }
    return out;
  };
  // Matrix of F^i_j -> F^{i-1}_j (or A_j for i = 0), as rank and domain dimension.
  auto map_rank = [&](std::size_t i, int j) -> std::pair<std::size_t, std::size_t> {
    auto dom = pairs_in_degree(j + res.terms[i].shift);
    ExactMatrix<F> mtx(field, dom.size(), i == 0 ? n : n * n);
    for (std::size_t r = 0; r < dom.size(); ++r) {
      std::size_t x = dom[r] / n, y = dom[r] % n;
      if (i == 0) {
        Vec<F> v;
        for (const auto& [b, c] : a.product(x, y)) v.emplace_back(b, field.from_rational(c));
        mtx.set_row(r, std::move(v));
      } else {
        mtx.set_row(r, act_on_pair(field, a, res.terms[i].multiplier, x, y));
      }
    }
    return {rank(mtx), dom.size()};
  };
  const int last = std::min<int>(opts.max_position, static_cast<int>(res.terms.size()) - 2);
  for (int pos = -1; pos <= last; ++pos) {
    int jlo = pos < 0 ? mindeg(a) : lo - res.terms[pos].shift;
    int jhi = pos < 0 ? maxdeg(a) : hi - res.terms[pos].shift;
    for (int j = jlo; j <= jhi; ++j) {
      std::size_t ker;
      if (pos < 0) {
        ker = 0;
        for (std::size_t b = 0; b < n; ++b) ker += a.degree(b) == j;  // A -> 0
      } else {
        auto [r, d] = map_rank(static_cast<std::size_t>(pos), j);
        ker = d - r;
      }
      auto [r_in, d_in] = map_rank(static_cast<std::size_t>(pos + 1), j);
      (void)d_in;
      if (ker != r_in) {
        throw input_error("resolution is not exact at position " + std::to_string(pos) + " in internal degree " +
                          std::to_string(j) + " (kernel " + std::to_string(ker) + ", image " + std::to_string(r_in) + ")");
      }
    }
  }
}

template <class F>
std::size_t hh_resolution_impl(const F& field, const GradedAlgebra& a, const PeriodicResolutionSpec& res,
                               const GradedBimodule& m, int p, int q, const ResolutionCheckOptions& opts) {
  if (p < 0) throw input_error("homological degree p must be non-negative");
  if (static_cast<std::size_t>(p) + 1 >= res.terms.size()) {
    throw input_error("p = " + std::to_string(p) + " is beyond the supplied resolution (" +
                      std::to_string(res.terms.size()) + " terms; need p + 2)");
  }
  require_valid(a);
  validate_resolution_impl(field, a, res, opts);
  // Hom^0(A^e(s), M(q)) = M^{q - s}; delta_i: M^{q - s_{i-1}} -> M^{q - s_i}, m -> Σ c x m y.
  auto component = [&](std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (m.degree(j) == q - res.terms[i].shift) out.push_back(j);
    }
    return out;
  };
  auto delta = [&](std::size_t i) {
    auto from = component(i - 1), to = component(i);
    std::map<std::size_t, std::size_t> to_index;
    for (std::size_t r = 0; r < to.size(); ++r) to_index[to[r]] = r;
    ExactMatrix<F> d(field, to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
      Combo total;
      for (const auto& t : res.terms[i].multiplier) {
        Combo xm = m.act_left(Combo{{t.left, 1}}, Combo{{from[c], 1}});
        total = combo_add(total, m.act_right(xm, Combo{{t.right, 1}}), t.coeff);
      }
      for (const auto& [j, v] : total) d.add_entry(to_index.at(j), c, field.from_rational(v));
    }
    d.finalize();
    return d;
  };
  std::size_t dim = component(static_cast<std::size_t>(p)).size();
  std::size_t r_out = rank(delta(static_cast<std::size_t>(p) + 1));
  std::size_t r_in = p > 0 ? rank(delta(static_cast<std::size_t>(p))) : 0;
  return dim - r_out - r_in;
}

}  // namespace detail

/// Checks degrees, vanishing composites and degreewise exactness; throws input_error naming the
/// failing position and degree.
inline void validate_resolution(const FieldSpec& field, const GradedAlgebra& a, const PeriodicResolutionSpec& res,
                                const ResolutionCheckOptions& opts = {}) {
  std::visit([&](const auto& f) { detail::validate_resolution_impl(f, a, res, opts); }, field);
}

/// HH^{p,q}(A, M) computed from an explicitly supplied free resolution.
inline std::size_t hh_resolution(const FieldSpec& field, const GradedAlgebra& a, const PeriodicResolutionSpec& res,
                                 const GradedBimodule& m, int p, int q, const ResolutionCheckOptions& opts = {}) {
  return std::visit([&](const auto& f) { return detail::hh_resolution_impl(f, a, res, m, p, q, opts); }, field);
}

struct ScanEntry {
  int q = 0;  // HH^{q, 2-q}
  std::size_t dim = 0;
};

/// dim HH^{q,2-q}(A, A) for 3 <= q <= q_max.
inline std::vector<ScanEntry> kadeishvili_scan(const FieldSpec& field, const GradedAlgebra& a, int q_max,
                                               BarMode mode = BarMode::relative_normalized, const HHOptions& opts = {}) {
  std::vector<ScanEntry> out;
  auto m = regular_bimodule(a);
  for (int q = 3; q <= q_max; ++q) out.push_back({q, hh_bar(field, a, m, q, 2 - q, mode, opts).dim});
  return out;
}

inline std::vector<ScanEntry> kadeishvili_scan(const GradedAlgebra& a, int q_max) {
  return kadeishvili_scan(RationalField{}, a, q_max);
}

}  // namespace fkit
