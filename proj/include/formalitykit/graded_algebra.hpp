#pragma once

// Finite-dimensional graded algebras given by structure constants on a labeled homogeneous basis,
// together with graded bimodules over them.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalitykit/errors.hpp"
#include "formalitykit/exact_linalg.hpp"
#include "formalitykit/field.hpp"
#include "formalitykit/graded_space.hpp"

namespace fkit {

struct BasisElement {
  std::string label;
  int degree = 0;
};

/// Exact linear combination of basis elements, sorted by basis index.
using Combo = SparseVec<Rational>;

inline Combo combo_add(const Combo& a, const Combo& b, const Rational& scale = 1) {
  return sub_scaled(RationalField{}, a, -scale, b);
}

class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  /// `mult` is row-major: mult[i * dim + j] = b_i * b_j.
  GradedAlgebra(std::vector<BasisElement> basis, std::vector<Combo> mult, Combo unit,
                std::optional<std::vector<Combo>> idempotents = std::nullopt)
      : basis_(std::move(basis)), mult_(std::move(mult)), unit_(std::move(unit)), idempotents_(std::move(idempotents)) {
    if (mult_.size() != basis_.size() * basis_.size()) {
      throw input_error("multiplication table has " + std::to_string(mult_.size()) + " entries, expected " +
                        std::to_string(basis_.size() * basis_.size()));
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!index_.emplace(basis_[i].label, i).second) {
        throw input_error("duplicate basis label '" + basis_[i].label + "'");
      }
    }
    for (auto& c : mult_) c = normalize(RationalField{}, std::move(c));
    unit_ = normalize(RationalField{}, std::move(unit_));
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t i) const { return basis_[i]; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  const Combo& product(std::size_t i, std::size_t j) const { return mult_[i * basis_.size() + j]; }
  const Combo& unit() const { return unit_; }
  const std::optional<std::vector<Combo>>& idempotents() const { return idempotents_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(const std::string& label) const {
    auto idx = index_of(label);
    if (!idx) throw input_error("unknown basis label '" + label + "'");
    return *idx;
  }

  Combo multiply(const Combo& x, const Combo& y) const {
    Combo out;
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) out = combo_add(out, product(i, j), a * b);
    }
    return out;
  }

  GradedVectorSpace underlying_space() const {
    GradedVectorSpace v;
    for (const auto& b : basis_) v.add(b.degree, b.label);
    return v;
  }

 private:
  std::vector<BasisElement> basis_;
  std::vector<Combo> mult_;
  Combo unit_;
  std::optional<std::vector<Combo>> idempotents_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Assembles an algebra by label; unspecified products are zero.
class AlgebraBuilder {
 public:
  std::size_t add_basis(std::string label, int degree) {
    if (index_.count(label)) throw input_error("duplicate basis label '" + label + "'");
    index_[label] = basis_.size();
    basis_.push_back({std::move(label), degree});
    return basis_.size() - 1;
  }

  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw input_error("unknown basis label '" + label + "'");
    return it->second;
  }

  void set_product(const std::string& left, const std::string& right,
                   const std::vector<std::pair<std::string, Rational>>& result) {
    products_[{index(left), index(right)}] = to_combo(result);
  }

  void set_unit(const std::vector<std::pair<std::string, Rational>>& unit) { unit_ = to_combo(unit); }

  void set_idempotents(const std::vector<std::vector<std::string>>& subsets) {
    std::vector<Combo> idems;
    for (const auto& subset : subsets) {
      std::vector<std::pair<std::string, Rational>> terms;
      for (const auto& l : subset) terms.emplace_back(l, 1);
      idems.push_back(to_combo(terms));
    }
    idempotents_ = std::move(idems);
  }

  GradedAlgebra build() const {
    const std::size_t n = basis_.size();
    std::vector<Combo> mult(n * n);
    for (const auto& [key, c] : products_) mult[key.first * n + key.second] = c;
    return GradedAlgebra(basis_, std::move(mult), unit_, idempotents_);
  }

 private:
  Combo to_combo(const std::vector<std::pair<std::string, Rational>>& terms) const {
    Combo c;
    for (const auto& [l, coeff] : terms) c.emplace_back(index(l), coeff);
    return normalize(RationalField{}, std::move(c));
  }

  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Combo> products_;
  Combo unit_;
  std::optional<std::vector<Combo>> idempotents_;
};

inline std::string format_combo(const GradedAlgebra& a, const Combo& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [i, coeff] : c) {
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += format_rational(coeff) + "*";
    out += a.element(i).label;
  }
  return out;
}

struct Violation {
  std::string kind;  // grading, associativity, left_unit, right_unit, idempotent, label
  std::vector<std::string> labels;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {
inline bool combo_is_homogeneous(const GradedAlgebra& a, const Combo& c, int degree) {
  return std::all_of(c.begin(), c.end(), [&](const auto& e) { return a.degree(e.first) == degree; });
}
}  // namespace detail

/// Checks grading, associativity on every basis triple, unit laws and (when present) the idempotent
/// decomposition. Every violated pair or triple is listed.
inline ValidationReport validate(const GradedAlgebra& a) {
  ValidationReport report;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!detail::combo_is_homogeneous(a, a.product(i, j), a.degree(i) + a.degree(j))) {
        report.violations.push_back({"grading",
                                     {a.element(i).label, a.element(j).label},
                                     a.element(i).label + "*" + a.element(j).label + " = " +
                                         format_combo(a, a.product(i, j)) + " is not homogeneous of degree " +
                                         std::to_string(a.degree(i) + a.degree(j))});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Combo& ij = a.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Combo left = a.multiply(ij, Combo{{k, 1}});
        Combo right = a.multiply(Combo{{i, 1}}, a.product(j, k));
        if (left != right) {
          report.violations.push_back({"associativity",
                                       {a.element(i).label, a.element(j).label, a.element(k).label},
                                       "(" + a.element(i).label + a.element(j).label + ")" + a.element(k).label +
                                           " = " + format_combo(a, left) + " but " + a.element(i).label + "(" +
                                           a.element(j).label + a.element(k).label + ") = " + format_combo(a, right)});
        }
      }
    }
  }
  if (!detail::combo_is_homogeneous(a, a.unit(), 0)) {
    report.violations.push_back({"grading", {}, "unit is not homogeneous of degree 0"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Combo b{{i, 1}};
    if (a.multiply(a.unit(), b) != b) {
      report.violations.push_back({"left_unit", {a.element(i).label}, "1*" + a.element(i).label + " != " + a.element(i).label});
    }
    if (a.multiply(b, a.unit()) != b) {
      report.violations.push_back({"right_unit", {a.element(i).label}, a.element(i).label + "*1 != " + a.element(i).label});
    }
  }
  if (const auto& idems = a.idempotents()) {
    Combo sum;
    std::size_t deg0 = 0;
    for (std::size_t i = 0; i < n; ++i) deg0 += a.degree(i) == 0;
    for (std::size_t s = 0; s < idems->size(); ++s) {
      const Combo& e = (*idems)[s];
      sum = combo_add(sum, e);
      if (e.empty() || !detail::combo_is_homogeneous(a, e, 0)) {
        report.violations.push_back({"idempotent", {}, "idempotent e" + std::to_string(s + 1) + " is not a nonzero degree-0 element"});
      }
      if (a.multiply(e, e) != e) {
        report.violations.push_back({"idempotent", {}, "e" + std::to_string(s + 1) + "^2 != e" + std::to_string(s + 1)});
      }
      for (std::size_t t = 0; t < idems->size(); ++t) {
        if (t != s && !a.multiply(e, (*idems)[t]).empty()) {
          report.violations.push_back({"idempotent", {}, "e" + std::to_string(s + 1) + "*e" + std::to_string(t + 1) + " != 0"});
        }
      }
    }
    if (sum != a.unit()) report.violations.push_back({"idempotent", {}, "idempotents do not sum to the unit"});
    if (idems->size() != deg0) {
      report.violations.push_back({"idempotent", {}, "idempotents do not span the degree-0 part (" +
                                                          std::to_string(idems->size()) + " idempotents, dim A^0 = " +
                                                          std::to_string(deg0) + ")"});
    }
  }
  return report;
}

inline void require_valid(const GradedAlgebra& a) {
  auto report = validate(a);
  if (!report.ok()) throw input_error("invalid algebra: " + report.violations.front().message);
}

/// k[t]/t^{n+1} with deg t = k; basis 1, t, t^2, ..., t^n.
inline GradedAlgebra truncated_poly(int n, int k) {
  if (n < 1) throw input_error("truncated_poly needs n >= 1");
  AlgebraBuilder b;
  auto label = [](int j) -> std::string {
    if (j == 0) return "1";
    if (j == 1) return "t";
    return "t^" + std::to_string(j);
  };
  for (int j = 0; j <= n; ++j) b.add_basis(label(j), j * k);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) b.set_product(label(i), label(j), {{label(i + j), 1}});
  }
  b.set_unit({{"1", 1}});
  return b.build();
}

inline int maxdeg(const GradedAlgebra& a) {
  if (a.dim() == 0) throw input_error("maxdeg of the zero algebra is undefined");
  int m = a.degree(0);
  for (const auto& b : a.basis()) m = std::max(m, b.degree);
  return m;
}

inline int mindeg(const GradedAlgebra& a) {
  if (a.dim() == 0) throw input_error("mindeg of the zero algebra is undefined");
  int m = a.degree(0);
  for (const auto& b : a.basis()) m = std::min(m, b.degree);
  return m;
}

/// Minimal degree of the augmentation ideal A^+ (positive-degree part).
inline int augmentation_mindeg(const GradedAlgebra& a) {
  std::optional<int> m;
  for (const auto& b : a.basis()) {
    if (b.degree > 0) m = m ? std::min(*m, b.degree) : b.degree;
  }
  if (!m) throw input_error("augmentation ideal is zero; mindeg undefined");
  return *m;
}

/// Orthogonal idempotents e_1..e_m spanning A^0. Uses the supplied ones when present; otherwise
/// accepts a degree-0 basis that already consists of orthogonal idempotents summing to 1, or a
/// one-dimensional A^0 spanned by the unit.
inline std::vector<Combo> detect_idempotents(const GradedAlgebra& a) {
  if (a.idempotents()) {
    auto report = validate(a);
    for (const auto& v : report.violations) {
      if (v.kind == "idempotent") throw input_error("supplied idempotents invalid: " + v.message);
    }
    return *a.idempotents();
  }
  std::vector<std::size_t> deg0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree(i) == 0) deg0.push_back(i);
  }
  if (deg0.size() == 1) return {a.unit()};
  std::vector<Combo> idems;
  Combo sum;
  for (auto i : deg0) {
    Combo e{{i, 1}};
    if (a.multiply(e, e) != e) throw input_error("cannot detect idempotents: degree-0 basis element '" + a.element(i).label + "' is not idempotent; supply them explicitly");
    idems.push_back(e);
    sum = combo_add(sum, e);
  }
  for (std::size_t s = 0; s < idems.size(); ++s) {
    for (std::size_t t = 0; t < idems.size(); ++t) {
      if (s != t && !a.multiply(idems[s], idems[t]).empty()) {
        throw input_error("cannot detect idempotents: degree-0 basis elements are not orthogonal");
      }
    }
  }
  if (sum != a.unit()) throw input_error("cannot detect idempotents: degree-0 basis does not sum to the unit");
  return idems;
}

/// Block position of each basis vector with respect to e_1..e_m: e_src b e_tgt = b.
struct BlockStructure {
  std::size_t vertices = 0;
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
};

namespace detail {
// Finds the unique s with act(e_s, b) = b and act(e_t, b) = 0 for t != s.
template <class Act>
std::optional<std::size_t> unique_block(const std::vector<Combo>& idems, std::size_t b, Act act) {
  std::optional<std::size_t> found;
  for (std::size_t s = 0; s < idems.size(); ++s) {
    Combo r = act(idems[s], b);
    if (r == Combo{{b, 1}}) {
      if (found) return std::nullopt;
      found = s;
    } else if (!r.empty()) {
      return std::nullopt;
    }
  }
  return found;
}
}  // namespace detail

inline BlockStructure algebra_blocks(const GradedAlgebra& a, const std::vector<Combo>& idems) {
  BlockStructure bs{idems.size(), {}, {}};
  for (std::size_t b = 0; b < a.dim(); ++b) {
    auto s = detail::unique_block(idems, b, [&](const Combo& e, std::size_t x) { return a.multiply(e, Combo{{x, 1}}); });
    auto t = detail::unique_block(idems, b, [&](const Combo& e, std::size_t x) { return a.multiply(Combo{{x, 1}}, e); });
    if (!s || !t) {
      throw input_error("basis element '" + a.element(b).label + "' does not lie in a single block e_i A e_j");
    }
    bs.src.push_back(*s);
    bs.tgt.push_back(*t);
  }
  return bs;
}

/// Degree-q part of the center, as a basis of combinations.
inline std::vector<Combo> center_basis(const GradedAlgebra& a, int q) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree(i) == q) cols.push_back(i);
  }
  RationalField f;
  // Rows indexed by (b, output basis index): z*b - b*z.
  ExactMatrix<RationalField> m(f, a.dim() * a.dim(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t b = 0; b < a.dim(); ++b) {
      Combo comm = combo_add(a.product(cols[c], b), a.product(b, cols[c]), -1);
      for (const auto& [idx, v] : comm) m.add_entry(b * a.dim() + idx, c, v);
    }
  }
  m.finalize();
  std::vector<Combo> out;
  for (const auto& k : kernel_basis(m)) {
    Combo z;
    for (const auto& [c, v] : k) z.emplace_back(cols[c], v);
    out.push_back(normalize(f, std::move(z)));
  }
  return out;
}

/// Graded A-bimodule given by left and right action tables on a labeled homogeneous basis.
class GradedBimodule {
 public:
  GradedBimodule() = default;

  /// left[a * dim + m] = b_a . m_m ; right[m * dimA + a] = m_m . b_a
  GradedBimodule(const GradedAlgebra& algebra, std::vector<BasisElement> basis, std::vector<Combo> left,
                 std::vector<Combo> right)
      : algebra_dim_(algebra.dim()), basis_(std::move(basis)), left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != algebra_dim_ * basis_.size() || right_.size() != algebra_dim_ * basis_.size()) {
      throw input_error("bimodule action tables have the wrong size");
    }
  }

  std::size_t dim() const { return basis_.size(); }
  std::size_t algebra_dim() const { return algebra_dim_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(std::size_t m) const { return basis_[m].degree; }
  const Combo& left(std::size_t a, std::size_t m) const { return left_[a * basis_.size() + m]; }
  const Combo& right(std::size_t m, std::size_t a) const { return right_[m * algebra_dim_ + a]; }

  Combo act_left(const Combo& a, const Combo& m) const {
    Combo out;
    for (const auto& [i, x] : a) {
      for (const auto& [j, y] : m) out = combo_add(out, left(i, j), x * y);
    }
    return out;
  }
  Combo act_right(const Combo& m, const Combo& a) const {
    Combo out;
    for (const auto& [j, y] : m) {
      for (const auto& [i, x] : a) out = combo_add(out, right(j, i), x * y);
    }
    return out;
  }

  GradedVectorSpace underlying_space() const {
    GradedVectorSpace v;
    for (const auto& b : basis_) v.add(b.degree, b.label);
    return v;
  }

  /// M<i>: M<i>^q = M^{q+i}.
  GradedBimodule shifted(int i) const {
    GradedBimodule out = *this;
    for (auto& b : out.basis_) b.degree -= i;
    return out;
  }

 private:
  std::size_t algebra_dim_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<Combo> left_;
  std::vector<Combo> right_;
};

/// The diagonal bimodule A.
inline GradedBimodule regular_bimodule(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Combo> left(n * n), right(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      left[i * n + j] = a.product(i, j);
      right[j * n + i] = a.product(j, i);
    }
  }
  return GradedBimodule(a, a.basis(), std::move(left), std::move(right));
}

inline int maxdeg(const GradedBimodule& m) {
  if (m.dim() == 0) throw input_error("maxdeg of the zero module is undefined");
  int d = m.degree(0);
  for (const auto& b : m.basis()) d = std::max(d, b.degree);
  return d;
}

inline int mindeg(const GradedBimodule& m) {
  if (m.dim() == 0) throw input_error("mindeg of the zero module is undefined");
  int d = m.degree(0);
  for (const auto& b : m.basis()) d = std::min(d, b.degree);
  return d;
}

/// Degree-0 homogeneity, associativity of both actions, the bimodule axiom and unitality.
inline ValidationReport validate_bimodule(const GradedAlgebra& a, const GradedBimodule& m) {
  ValidationReport report;
  if (m.algebra_dim() != a.dim()) {
    report.violations.push_back({"bimodule", {}, "module is defined over an algebra of another dimension"});
    return report;
  }
  auto homogeneous = [&](const Combo& c, int d) {
    return std::all_of(c.begin(), c.end(), [&](const auto& e) { return m.degree(e.first) == d; });
  };
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const std::string& al = a.element(i).label;
      const std::string& ml = m.basis()[j].label;
      if (!homogeneous(m.left(i, j), a.degree(i) + m.degree(j)) || !homogeneous(m.right(j, i), a.degree(i) + m.degree(j))) {
        report.violations.push_back({"grading", {al, ml}, "action of " + al + " on " + ml + " is not homogeneous"});
      }
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const std::string& bl = a.element(k).label;
        Combo x{{i, 1}}, y{{k, 1}}, v{{j, 1}};
        if (m.act_left(a.multiply(x, y), v) != m.act_left(x, m.act_left(y, v))) {
          report.violations.push_back({"associativity", {al, bl, ml}, "left action not associative"});
        }
        if (m.act_right(v, a.multiply(x, y)) != m.act_right(m.act_right(v, x), y)) {
          report.violations.push_back({"associativity", {ml, al, bl}, "right action not associative"});
        }
        if (m.act_right(m.act_left(x, v), y) != m.act_left(x, m.act_right(v, y))) {
          report.violations.push_back({"bimodule", {al, ml, bl}, "left and right actions do not commute"});
        }
      }
    }
  }
  for (std::size_t j = 0; j < m.dim(); ++j) {
    Combo v{{j, 1}};
    if (m.act_left(a.unit(), v) != v || m.act_right(v, a.unit()) != v) {
      report.violations.push_back({"unit", {m.basis()[j].label}, "unit does not act as identity"});
    }
  }
  return report;
}

inline BlockStructure module_blocks(const GradedBimodule& m, const std::vector<Combo>& idems) {
  BlockStructure bs{idems.size(), {}, {}};
  for (std::size_t b = 0; b < m.dim(); ++b) {
    auto s = detail::unique_block(idems, b, [&](const Combo& e, std::size_t x) { return m.act_left(e, Combo{{x, 1}}); });
    auto t = detail::unique_block(idems, b, [&](const Combo& e, std::size_t x) { return m.act_right(Combo{{x, 1}}, e); });
    if (!s || !t) throw input_error("module basis element '" + m.basis()[b].label + "' does not lie in a single block");
    bs.src.push_back(*s);
    bs.tgt.push_back(*t);
  }
  return bs;
}

}  // namespace fkit
