#pragma once

// Truncated tensor algebras T(V) over R = k^m, homogeneous two-sided ideals and Tor^A_q(R, R)
// for A = T(V)/I via the Butler-King quotients of intersections of products of I and J = T(V)^+.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "formalitykit/config_algebra.hpp"
#include "formalitykit/config_graph.hpp"
#include "formalitykit/errors.hpp"
#include "formalitykit/exact_linalg.hpp"
#include "formalitykit/field.hpp"
#include "formalitykit/graded_space.hpp"
#include "formalitykit/word.hpp"

namespace fkit {

struct Generator {
  std::string label;
  std::size_t src = 0;
  std::size_t tgt = 0;
  int degree = 1;
};

struct RelationTerm {
  std::vector<std::string> word;
  Rational coeff;
};
using Relation = std::vector<RelationTerm>;

/// T(V)/I presented by a quiver with graded arrows; vertices are 0 .. vertices-1.
struct TensorPresentation {
  std::size_t vertices = 1;
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  int truncation = 0;

  std::size_t generator_index(const std::string& label) const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].label == label) return i;
    }
    throw input_error("unknown generator '" + label + "'");
  }

  int min_generator_degree() const {
    int d = generators.empty() ? 1 : generators.front().degree;
    for (const auto& g : generators) d = std::min(d, g.degree);
    return d;
  }
  int max_generator_degree() const {
    int d = 1;
    for (const auto& g : generators) d = std::max(d, g.degree);
    return d;
  }

  /// Structural checks: generator data, composable homogeneous relations, I inside J^2.
  void validate() const {
    if (vertices == 0) throw input_error("presentation needs at least one vertex");
    if (truncation < 0) throw input_error("truncation must be non-negative");
    std::map<std::string, int> seen;
    for (const auto& g : generators) {
      if (g.label.empty()) throw input_error("generator with empty label");
      if (!seen.emplace(g.label, 0).second) throw input_error("duplicate generator '" + g.label + "'");
      if (g.src >= vertices || g.tgt >= vertices) throw input_error("generator '" + g.label + "' has a vertex out of range");
      if (g.degree <= 0) throw input_error("generator '" + g.label + "' must have positive degree");
    }
    for (std::size_t r = 0; r < relations.size(); ++r) {
      const auto& rel = relations[r];
      const std::string where = "relation " + std::to_string(r);
      if (rel.empty()) throw input_error(where + " is empty");
      std::optional<int> degree;
      for (const auto& term : rel) {
        if (term.word.size() < 2) throw input_error(where + " has a term of length < 2 (I must lie in J^2)");
        int d = 0;
        for (std::size_t i = 0; i < term.word.size(); ++i) {
          const auto& g = generators[generator_index(term.word[i])];
          d += g.degree;
          if (i > 0 && generators[generator_index(term.word[i - 1])].tgt != g.src) {
            throw input_error(where + " contains a non-composable word");
          }
        }
        if (degree && *degree != d) throw input_error(where + " is not homogeneous");
        degree = d;
      }
    }
  }
};

inline std::string vertex_label(std::size_t v) { return "e" + std::to_string(v + 1); }

namespace detail {

// All composable words of degree 0 .. D, grouped by degree.
struct WordSpace {
  std::vector<Generator> gens;
  std::size_t vertices = 1;
  int D = 0;
  std::vector<std::vector<Word>> words;
  std::vector<std::unordered_map<Word, std::size_t, WordHash>> index;

  WordSpace(const TensorPresentation& p, std::size_t cap) : gens(p.generators), vertices(p.vertices), D(p.truncation) {
    words.resize(static_cast<std::size_t>(D) + 1);
    index.resize(words.size());
    std::size_t total = 0;
    for (std::size_t v = 0; v < vertices; ++v) words[0].push_back({v, {}});
    for (int d = 1; d <= D; ++d) {
      for (std::uint32_t g = 0; g < gens.size(); ++g) {
        int prev = d - gens[g].degree;
        if (prev < 0) continue;
        for (const auto& w : words[static_cast<std::size_t>(prev)]) {
          if (tgt(w) != gens[g].src) continue;
          Word x = w;
          x.letters.push_back(g);
          x.start = gens[x.letters.front()].src;
          words[static_cast<std::size_t>(d)].push_back(std::move(x));
        }
      }
      total += words[static_cast<std::size_t>(d)].size();
      if (total > cap) throw resource_error("word space up to degree " + std::to_string(d) + " exceeds the cap of " + std::to_string(cap) + " words");
    }
    for (std::size_t d = 0; d < words.size(); ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) index[d].emplace(words[d][i], i);
    }
  }

  std::size_t src(const Word& w) const { return w.letters.empty() ? w.start : gens[w.letters.front()].src; }
  std::size_t tgt(const Word& w) const { return w.letters.empty() ? w.start : gens[w.letters.back()].tgt; }
  std::size_t dim(int d) const { return words[static_cast<std::size_t>(d)].size(); }

  std::optional<Word> concat(const Word& a, const Word& b) const {
    if (tgt(a) != src(b)) return std::nullopt;
    if (a.letters.empty()) return b;
    if (b.letters.empty()) return a;
    Word w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  }

  std::string format(const Word& w) const {
    if (w.letters.empty()) return vertex_label(w.start);
    std::string s;
    for (std::size_t i = 0; i < w.letters.size(); ++i) s += (i ? "*" : "") + gens[w.letters[i]].label;
    return s;
  }
};

}  // namespace detail

/// Degreewise subspaces I_d of T(V)_d for 0 <= d <= D.
template <class F>
struct HomogeneousIdeal {
  std::vector<Subspace<F>> parts;

  std::size_t dim(int d) const { return parts[static_cast<std::size_t>(d)].dim(); }
  int truncation() const { return static_cast<int>(parts.size()) - 1; }
  bool is_zero() const {
    return std::all_of(parts.begin(), parts.end(), [](const auto& s) { return s.dim() == 0; });
  }
  std::optional<int> mindeg() const {
    for (std::size_t d = 0; d < parts.size(); ++d) {
      if (parts[d].dim() > 0) return static_cast<int>(d);
    }
    return std::nullopt;
  }
};

/// Ideal arithmetic inside one truncated tensor algebra.
template <class F>
class IdealCalculus {
 public:
  IdealCalculus(F field, const TensorPresentation& pres, std::size_t cap = 2'000'000)
      : field_(std::move(field)), space_(pres, cap) {
    pres.validate();
  }

  const detail::WordSpace& space() const { return space_; }
  const F& field() const { return field_; }
  int truncation() const { return space_.D; }

  HomogeneousIdeal<F> zero() const {
    HomogeneousIdeal<F> x;
    for (int d = 0; d <= space_.D; ++d) x.parts.emplace_back(field_, space_.dim(d));
    return x;
  }

  /// T(V) itself.
  HomogeneousIdeal<F> unit() const {
    auto x = zero();
    for (int d = 0; d <= space_.D; ++d) fill(x, d);
    return x;
  }

  /// J = T(V)^+.
  HomogeneousIdeal<F> augmentation() const {
    auto x = zero();
    for (int d = 1; d <= space_.D; ++d) fill(x, d);
    return x;
  }

  /// Two-sided ideal generated by the given relations, each split into its (src, tgt) blocks.
  HomogeneousIdeal<F> generated(const std::vector<Relation>& rels, const TensorPresentation& pres) const {
    std::vector<std::vector<Vec<F>>> seeds(static_cast<std::size_t>(space_.D) + 1);
    for (const auto& rel : rels) {
      std::map<std::pair<std::size_t, std::size_t>, Vec<F>> blocks;
      int degree = 0;
      for (const auto& term : rel) {
        Word w;
        degree = 0;
        for (const auto& l : term.word) {
          auto g = static_cast<std::uint32_t>(pres.generator_index(l));
          w.letters.push_back(g);
          degree += pres.generators[g].degree;
        }
        w.start = pres.generators[w.letters.front()].src;
        if (degree > space_.D) break;
        auto idx = space_.index[static_cast<std::size_t>(degree)].at(w);
        blocks[{space_.src(w), space_.tgt(w)}].emplace_back(idx, field_.from_rational(term.coeff));
      }
      if (degree > space_.D) continue;
      for (auto& [key, v] : blocks) {
        auto n = normalize(field_, std::move(v));
        if (!n.empty()) seeds[static_cast<std::size_t>(degree)].push_back(std::move(n));
      }
    }
    auto x = zero();
    for (int d = 0; d <= space_.D; ++d) {
      for (const auto& v : seeds[static_cast<std::size_t>(d)]) x.parts[static_cast<std::size_t>(d)].insert(v);
      for (std::uint32_t g = 0; g < space_.gens.size(); ++g) {
        int prev = d - space_.gens[g].degree;
        if (prev < 0) continue;
        for (const auto& row : x.parts[static_cast<std::size_t>(prev)].rows()) {
          x.parts[static_cast<std::size_t>(d)].insert(multiply_letter(row, prev, g, true));
          x.parts[static_cast<std::size_t>(d)].insert(multiply_letter(row, prev, g, false));
        }
      }
    }
    return x;
  }

  HomogeneousIdeal<F> sum(const HomogeneousIdeal<F>& a, const HomogeneousIdeal<F>& b) const {
    auto x = a;
    for (std::size_t d = 0; d < x.parts.size(); ++d) {
      for (const auto& row : b.parts[d].rows()) x.parts[d].insert(row);
    }
    return x;
  }

  HomogeneousIdeal<F> meet(const HomogeneousIdeal<F>& a, const HomogeneousIdeal<F>& b) const {
    auto x = zero();
    for (std::size_t d = 0; d < x.parts.size(); ++d) {
      const auto& ra = a.parts[d].rows();
      const auto& rb = b.parts[d].rows();
      for (const auto& v : subspace_meet<F>(field_, space_.dim(static_cast<int>(d)), ra, rb)) x.parts[d].insert(v);
    }
    return x;
  }

  /// J * X (X a left ideal, so J X = V X).
  HomogeneousIdeal<F> left_j(const HomogeneousIdeal<F>& a) const { return letter_multiple(a, true); }

  /// X * J (X a right ideal).
  HomogeneousIdeal<F> right_j(const HomogeneousIdeal<F>& a) const { return letter_multiple(a, false); }

  /// Minimal homogeneous generators of a two-sided ideal: a complement of V X + X V in each degree.
  std::vector<std::vector<Vec<F>>> minimal_generators(const HomogeneousIdeal<F>& a) const {
    auto dec = sum(left_j(a), right_j(a));
    std::vector<std::vector<Vec<F>>> out(a.parts.size());
    for (std::size_t d = 0; d < a.parts.size(); ++d) {
      auto s = dec.parts[d];
      for (const auto& row : a.parts[d].rows()) {
        if (s.insert(row)) out[d].push_back(row);
      }
    }
    return out;
  }

  /// X * Y for two-sided ideals: the right ideal generated by x * g, g running over the minimal
  /// generators of Y.
  HomogeneousIdeal<F> product(const HomogeneousIdeal<F>& a, const HomogeneousIdeal<F>& b) const {
    auto gens = minimal_generators(b);
    auto x = zero();
    for (int d = 0; d <= space_.D; ++d) {
      auto& part = x.parts[static_cast<std::size_t>(d)];
      for (int e = 0; e <= d; ++e) {
        for (const auto& g : gens[static_cast<std::size_t>(e)]) {
          for (const auto& row : a.parts[static_cast<std::size_t>(d - e)].rows()) part.insert(multiply(row, d - e, g, e));
        }
      }
      for (std::uint32_t l = 0; l < space_.gens.size(); ++l) {
        int prev = d - space_.gens[l].degree;
        if (prev < 0) continue;
        for (const auto& row : x.parts[static_cast<std::size_t>(prev)].rows()) part.insert(multiply_letter(row, prev, l, false));
      }
    }
    return x;
  }

  /// x * y for x in degree dx and y in degree dy.
  Vec<F> multiply(const Vec<F>& x, int dx, const Vec<F>& y, int dy) const {
    Vec<F> out;
    const int d = dx + dy;
    if (d > space_.D) return out;
    const auto& wx = space_.words[static_cast<std::size_t>(dx)];
    const auto& wy = space_.words[static_cast<std::size_t>(dy)];
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) {
        auto w = space_.concat(wx[i], wy[j]);
        if (!w) continue;
        out.emplace_back(space_.index[static_cast<std::size_t>(d)].at(*w), field_.mul(a, b));
      }
    }
    return normalize(field_, std::move(out));
  }

  std::string format(const Vec<F>& v, int degree) const {
    std::string s;
    for (const auto& [i, c] : v) {
      std::string coeff = field_.to_string(c);
      std::string w = space_.format(space_.words[static_cast<std::size_t>(degree)][i]);
      if (s.empty()) {
        s = coeff == "1" ? w : coeff == "-1" ? "-" + w : coeff + "*" + w;
      } else if (coeff == "1") {
        s += " + " + w;
      } else if (coeff == "-1") {
        s += " - " + w;
      } else if (coeff.front() == '-') {
        s += " - " + coeff.substr(1) + "*" + w;
      } else {
        s += " + " + coeff + "*" + w;
      }
    }
    return s;
  }

 private:
  void fill(HomogeneousIdeal<F>& x, int d) const {
    for (std::size_t i = 0; i < space_.dim(d); ++i) x.parts[static_cast<std::size_t>(d)].insert(unit_vector(field_, i));
  }

  Vec<F> multiply_letter(const Vec<F>& v, int degree, std::uint32_t g, bool on_left) const {
    Vec<F> out;
    const int d = degree + space_.gens[g].degree;
    if (d > space_.D) return out;
    Word letter{space_.gens[g].src, {g}};
    for (const auto& [i, c] : v) {
      const Word& w = space_.words[static_cast<std::size_t>(degree)][i];
      auto r = on_left ? space_.concat(letter, w) : space_.concat(w, letter);
      if (r) out.emplace_back(space_.index[static_cast<std::size_t>(d)].at(*r), c);
    }
    return normalize(field_, std::move(out));
  }

  HomogeneousIdeal<F> letter_multiple(const HomogeneousIdeal<F>& a, bool on_left) const {
    auto x = zero();
    for (int d = 0; d <= space_.D; ++d) {
      for (std::uint32_t g = 0; g < space_.gens.size(); ++g) {
        int prev = d - space_.gens[g].degree;
        if (prev < 0) continue;
        for (const auto& row : a.parts[static_cast<std::size_t>(prev)].rows()) {
          x.parts[static_cast<std::size_t>(d)].insert(multiply_letter(row, prev, g, on_left));
        }
      }
    }
    return x;
  }

  F field_;
  detail::WordSpace space_;
};

struct TorOptions {
  std::size_t max_words = 2'000'000;
};

/// dim A_d = dim T(V)_d - dim I_d for 0 <= d <= D.
inline std::map<int, std::size_t> quotient_dims(const TensorPresentation& pres, const TorOptions& opts = {}) {
  IdealCalculus<RationalField> calc(RationalField{}, pres, opts.max_words);
  auto ideal = calc.generated(pres.relations, pres);
  std::map<int, std::size_t> out;
  for (int d = 0; d <= pres.truncation; ++d) {
    auto n = calc.space().dim(d) - ideal.dim(d);
    if (n > 0) out[d] = n;
  }
  return out;
}

namespace detail {

// Smallest d0 such that A vanishes in gmax consecutive degrees starting at d0 (then in all degrees
// >= d0, since every longer word has a prefix of degree in that window).
template <class F>
std::optional<int> nilpotence_start(const IdealCalculus<F>& calc, const HomogeneousIdeal<F>& ideal, int gmax) {
  const int D = calc.truncation();
  for (int d0 = 1; d0 + gmax - 1 <= D; ++d0) {
    bool ok = true;
    for (int d = d0; d < d0 + gmax && ok; ++d) ok = ideal.dim(d) == calc.space().dim(d);
    if (ok) return d0;
  }
  return std::nullopt;
}

template <class F>
GradedVectorSpace tor_term_impl(const F& field, const TensorPresentation& pres, int q, const TorOptions& opts) {
  if (q < 0) throw input_error("Tor degree q must be non-negative");
  IdealCalculus<F> calc(field, pres, opts.max_words);
  GradedVectorSpace out;
  if (q == 0) {
    for (std::size_t v = 0; v < pres.vertices; ++v) out.add(0, vertex_label(v));
    return out;
  }
  auto I = calc.generated(pres.relations, pres);
  auto d0 = nilpotence_start(calc, I, pres.max_generator_degree());
  if (!d0) {
    throw inconclusive_error("no nilpotence bound J^N in I is visible up to truncation " + std::to_string(pres.truncation) +
                             "; increase truncation");
  }
  int top = 0;  // maxdeg(A)
  for (int d = 0; d < *d0; ++d) {
    if (I.dim(d) < calc.space().dim(d)) top = d;
  }
  // Tor_q is a subquotient of (A^+)^{⊗q}, so it lives in degrees <= q * maxdeg(A).
  if (static_cast<long>(q) * top > pres.truncation) {
    throw resource_error("truncation " + std::to_string(pres.truncation) + " is too small for Tor_" + std::to_string(q) +
                         " (needs >= " + std::to_string(static_cast<long>(q) * top) + "); increase truncation");
  }
  auto J = calc.augmentation();
  const int p = q / 2;
  std::vector<HomogeneousIdeal<F>> powers{calc.unit()};
  const int need = q % 2 == 0 ? p : p + 1;
  for (int i = 1; i <= need; ++i) powers.push_back(i == 1 ? I : calc.product(powers.back(), I));
  HomogeneousIdeal<F> num, den;
  if (q % 2 == 0) {
    num = calc.meet(powers[p], calc.left_j(calc.right_j(powers[p - 1])));
    den = calc.sum(calc.left_j(powers[p]), calc.right_j(powers[p]));
  } else {
    num = calc.meet(calc.left_j(powers[p]), calc.right_j(powers[p]));
    den = calc.sum(powers[p + 1], calc.left_j(calc.right_j(powers[p])));
  }
  for (int d = 0; d <= pres.truncation; ++d) {
    auto s = den.parts[static_cast<std::size_t>(d)];
    for (const auto& row : s.rows()) {
      if (!num.parts[static_cast<std::size_t>(d)].contains(row)) {
        throw input_error("Tor quotient is ill-formed in degree " + std::to_string(d) + " (denominator not in numerator)");
      }
    }
    for (const auto& row : num.parts[static_cast<std::size_t>(d)].rows()) {
      if (s.insert(row)) out.add(d, calc.format(row, d));
    }
  }
  return out;
}

}  // namespace detail

/// Graded Tor^A_q(R, R) for A = T(V)/I. Basis labels are representative tensors.
inline GradedVectorSpace tor_term(const TensorPresentation& pres, int q, const FieldSpec& field = RationalField{},
                                  const TorOptions& opts = {}) {
  return std::visit([&](const auto& f) { return detail::tor_term_impl(f, pres, q, opts); }, field);
}

/// Lower bound for mindeg Tor_q from mindeg I = mu and mindeg J = nu, as slope * p + intercept.
struct AffineBound {
  int q = 0;
  int p = 0;
  long slope = 0;
  long intercept = 0;

  long value() const { return slope * p + intercept; }
};

inline AffineBound mindeg_bound(long mu, long nu, int q) {
  if (q < 0) throw input_error("Tor degree q must be non-negative");
  if (nu < 1 || mu < 2 * nu) throw input_error("mindeg bound needs mu >= 2 nu >= 2");
  AffineBound b;
  b.q = q;
  b.p = q / 2;
  b.slope = mu;
  // even: max(p mu, 2 nu + (p-1) mu) = p mu + max(0, 2 nu - mu); odd: p mu + nu
  b.intercept = q % 2 == 0 ? std::max(0L, 2 * nu - mu) : nu;
  if (q == 0) b.intercept = 0;
  return b;
}

// ---------------------------------------------------------------------------------------------

/// Tensor presentation of the configuration algebra with the same basis conventions as
/// build_configuration_algebra. In the zigzag preset with 2h/k = 1 the loops t_i at vertices
/// with an edge are decomposable and are eliminated.
inline TensorPresentation configuration_presentation(const ConfigGraph& graph, int n, int k, int h, ConfigPreset preset,
                                                     int truncation) {
  graph.validate();
  if (n < 1 || k < 1) throw input_error("configuration algebras need n, k >= 1");
  if (!graph.edges.empty() && h < 1) throw input_error("arrow degree h must be positive");
  if (preset == ConfigPreset::explicit_table) throw input_error("explicit tables have no canonical presentation");
  int r = 0;
  if (preset == ConfigPreset::zigzag && !graph.edges.empty()) {
    if ((2 * h) % k != 0 || 2 * h / k != n) throw input_error("zigzag preset needs 2h/k = n for an associative algebra");
    r = 2 * h / k;
  }
  ConfigLabels lab{graph};
  TensorPresentation p;
  p.vertices = graph.size();
  p.truncation = truncation;
  auto adj = graph.adjacency();
  auto eliminated = [&](std::size_t i) { return preset == ConfigPreset::zigzag && r == 1 && !adj[i].empty(); };
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (!eliminated(i)) p.generators.push_back({lab.t(i, 1), i, i, k});
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (auto [j, e] : adj[i]) p.generators.push_back({lab.a(i, j), i, j, h});
  }
  auto word = [](std::vector<std::string> w) { return RelationTerm{std::move(w), 1}; };
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const std::string t = lab.t(i, 1);
    if (!eliminated(i)) {
      p.relations.push_back({word(std::vector<std::string>(static_cast<std::size_t>(n) + 1, t))});
      for (auto [j, e] : adj[i]) {
        p.relations.push_back({word({t, lab.a(i, j)})});
        p.relations.push_back({word({lab.a(j, i), t})});
      }
    }
    for (auto [j, e] : adj[i]) {
      for (auto [l, f] : adj[j]) {
        if (l == i) {
          if (preset == ConfigPreset::orthogonal) {
            p.relations.push_back({word({lab.a(i, j), lab.a(j, i)})});
          } else if (!eliminated(i)) {
            p.relations.push_back({word({lab.a(i, j), lab.a(j, i)}), RelationTerm{std::vector<std::string>(static_cast<std::size_t>(r), t), -1}});
          }
        } else {
          p.relations.push_back({word({lab.a(i, j), lab.a(j, l)})});
        }
      }
    }
    if (eliminated(i)) {
      // t_i is the loop a_ij a_ji for any neighbour j; loops agree and t_i a_ij = 0.
      auto [j0, e0] = adj[i].front();
      for (auto [j, e] : adj[i]) {
        if (j != j0) {
          p.relations.push_back({word({lab.a(i, j), lab.a(j, i)}), RelationTerm{{lab.a(i, j0), lab.a(j0, i)}, -1}});
        }
        p.relations.push_back({word({lab.a(i, j0), lab.a(j0, i), lab.a(i, j)})});
        p.relations.push_back({word({lab.a(j, i), lab.a(i, j0), lab.a(j0, i)})});
      }
    }
  }
  return p;
}

}  // namespace fkit
