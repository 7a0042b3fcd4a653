#pragma once

// JSON readers and writers. Exact rationals travel as "p/q" strings (integers are also accepted on
// input). Readers throw input_error with a JSON path on malformed data.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "formalitykit/config_graph.hpp"
#include "formalitykit/configurations.hpp"
#include "formalitykit/errors.hpp"
#include "formalitykit/exact_linalg.hpp"
#include "formalitykit/field.hpp"
#include "formalitykit/formality.hpp"
#include "formalitykit/graded_algebra.hpp"
#include "formalitykit/graded_space.hpp"
#include "formalitykit/hochschild.hpp"
#include "formalitykit/presentation.hpp"

namespace fkit::json_io {

using json = nlohmann::json;

namespace detail {

inline const json& at(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw input_error(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw input_error(path + ": missing key \"" + key + "\"");
  return *it;
}

inline const json& array_at(const json& j, const std::string& key, const std::string& path) {
  const json& a = at(j, key, path);
  if (!a.is_array()) throw input_error(path + "/" + key + ": expected an array");
  return a;
}

inline std::string string_of(const json& j, const std::string& path) {
  if (!j.is_string()) throw input_error(path + ": expected a string");
  return j.get<std::string>();
}

inline long long integer_of(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw input_error(path + ": expected an integer");
  return j.get<long long>();
}

inline int int_of(const json& j, const std::string& path) {
  auto v = integer_of(j, path);
  if (v < -(1LL << 30) || v > (1LL << 30)) throw input_error(path + ": integer out of range");
  return static_cast<int>(v);
}

inline Rational rational_of(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(path + ": " + e.what());
    }
  }
  throw input_error(path + ": expected a rational as \"p/q\" string or integer");
}

inline std::vector<std::pair<std::string, Rational>> terms_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw input_error(path + ": expected an array of {label, coeff}");
  std::vector<std::pair<std::string, Rational>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    out.emplace_back(string_of(at(j[i], "label", p), p + "/label"), rational_of(at(j[i], "coeff", p), p + "/coeff"));
  }
  return out;
}

// Unit element solved from u * b = b * u = b for every basis element b (u in degree 0).
inline Combo solve_unit(const GradedAlgebra& a) {
  std::vector<std::size_t> deg0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree(i) == 0) deg0.push_back(i);
  }
  const std::size_t n = a.dim();
  RationalField f;
  // Rows: for each (side, b, coordinate) an equation sum_c x_c (product)_coord - delta = 0.
  std::vector<Vec<RationalField>> rows;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t b = 0; b < n; ++b) {
      std::map<std::size_t, Vec<RationalField>> eq;
      for (std::size_t c = 0; c < deg0.size(); ++c) {
        const Combo& prod = side == 0 ? a.product(deg0[c], b) : a.product(b, deg0[c]);
        for (const auto& [idx, v] : prod) eq[idx].emplace_back(c, v);
      }
      eq[b].emplace_back(deg0.size(), Rational(-1));
      for (auto& [idx, r] : eq) rows.push_back(normalize(f, std::move(r)));
    }
  }
  ExactMatrix<RationalField> m(f, rows.size(), deg0.size() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  for (const auto& k : kernel_basis(m)) {
    if (k.empty() || k.back().first != deg0.size()) continue;
    Rational last = k.back().second;
    Combo u;
    for (const auto& [c, v] : k) {
      if (c < deg0.size()) u.emplace_back(deg0[c], v / last);
    }
    return u;
  }
  throw input_error("algebra has no unit element");
}

}  // namespace detail

struct LoadedAlgebra {
  std::optional<FieldSpec> field;
  GradedAlgebra algebra;
};

/// {"field", "basis": [{label, degree}], "mult": [{left, right, result: [{label, coeff}]}],
///  "unit" (optional), "idempotents" (optional: list of label lists)}
inline LoadedAlgebra algebra_from_json(const json& j) {
  using namespace detail;
  const std::string root = "";
  std::optional<FieldSpec> field;
  if (j.is_object() && j.contains("field")) {
    try {
      field = parse_field(string_of(j["field"], "/field"));
    } catch (const input_error& e) {
      throw input_error(std::string("/field: ") + e.what());
    }
  }
  AlgebraBuilder b;
  const json& basis = array_at(j, "basis", root);
  if (basis.empty()) throw input_error("/basis: empty basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string p = "/basis/" + std::to_string(i);
    b.add_basis(string_of(at(basis[i], "label", p), p + "/label"), int_of(at(basis[i], "degree", p), p + "/degree"));
  }
  const json& mult = array_at(j, "mult", root);
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const std::string p = "/mult/" + std::to_string(i);
    try {
      b.set_product(string_of(at(mult[i], "left", p), p + "/left"), string_of(at(mult[i], "right", p), p + "/right"),
                    terms_of(at(mult[i], "result", p), p + "/result"));
    } catch (const input_error& e) {
      std::string msg = e.what();
      if (msg.rfind("/", 0) == 0) throw;
      throw input_error(p + ": " + msg);
    }
  }
  bool have_unit = j.contains("unit");
  if (have_unit) b.set_unit(terms_of(j["unit"], "/unit"));
  if (j.contains("idempotents")) {
    const json& ids = j["idempotents"];
    if (!ids.is_array()) throw input_error("/idempotents: expected an array");
    std::vector<std::vector<std::string>> subsets;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::string p = "/idempotents/" + std::to_string(i);
      if (ids[i].is_string()) {
        subsets.push_back({ids[i].get<std::string>()});
      } else if (ids[i].is_array()) {
        std::vector<std::string> s;
        for (std::size_t k = 0; k < ids[i].size(); ++k) s.push_back(string_of(ids[i][k], p + "/" + std::to_string(k)));
        subsets.push_back(std::move(s));
      } else {
        throw input_error(p + ": expected a label or a list of labels");
      }
    }
    b.set_idempotents(subsets);
  }
  GradedAlgebra a = b.build();
  if (!have_unit) {
    auto unit = solve_unit(a);
    std::vector<std::pair<std::string, Rational>> terms;
    for (const auto& [i, c] : unit) terms.emplace_back(a.element(i).label, c);
    b.set_unit(terms);
    a = b.build();
  }
  return {field, std::move(a)};
}

inline json combo_to_json(const GradedAlgebra& a, const Combo& c) {
  json out = json::array();
  for (const auto& [i, v] : c) out.push_back({{"label", a.element(i).label}, {"coeff", format_rational(v)}});
  return out;
}

inline json algebra_to_json(const GradedAlgebra& a, const std::optional<FieldSpec>& field = std::nullopt) {
  json j;
  if (field) j["field"] = field_name(*field);
  j["basis"] = json::array();
  for (const auto& b : a.basis()) j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
  j["mult"] = json::array();
  for (std::size_t x = 0; x < a.dim(); ++x) {
    for (std::size_t y = 0; y < a.dim(); ++y) {
      if (a.product(x, y).empty()) continue;
      j["mult"].push_back({{"left", a.element(x).label}, {"right", a.element(y).label}, {"result", combo_to_json(a, a.product(x, y))}});
    }
  }
  j["unit"] = combo_to_json(a, a.unit());
  if (a.idempotents()) {
    j["idempotents"] = json::array();
    for (const auto& e : *a.idempotents()) {
      json labels = json::array();
      for (const auto& [i, v] : e) labels.push_back(a.element(i).label);
      j["idempotents"].push_back(labels);
    }
  }
  return j;
}

/// {"vertices": m, "generators": [{label, src, tgt, deg}], "relations": [[{word, coeff}]],
///  "truncation": D}; src and tgt are vertex indices 0 .. m-1.
inline TensorPresentation presentation_from_json(const json& j) {
  using namespace detail;
  TensorPresentation p;
  auto m = integer_of(at(j, "vertices", ""), "/vertices");
  if (m < 1) throw input_error("/vertices: need at least one vertex");
  p.vertices = static_cast<std::size_t>(m);
  const json& gens = array_at(j, "generators", "");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "/generators/" + std::to_string(i);
    Generator g;
    g.label = string_of(at(gens[i], "label", path), path + "/label");
    auto src = integer_of(at(gens[i], "src", path), path + "/src");
    auto tgt = integer_of(at(gens[i], "tgt", path), path + "/tgt");
    if (src < 0 || tgt < 0 || src >= m || tgt >= m) throw input_error(path + ": vertex out of range");
    g.src = static_cast<std::size_t>(src);
    g.tgt = static_cast<std::size_t>(tgt);
    g.degree = int_of(at(gens[i], "deg", path), path + "/deg");
    p.generators.push_back(std::move(g));
  }
  const json& rels = array_at(j, "relations", "");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const std::string path = "/relations/" + std::to_string(i);
    if (!rels[i].is_array()) throw input_error(path + ": expected an array of terms");
    Relation r;
    for (std::size_t t = 0; t < rels[i].size(); ++t) {
      const std::string tp = path + "/" + std::to_string(t);
      RelationTerm term;
      const json& w = at(rels[i][t], "word", tp);
      if (!w.is_array()) throw input_error(tp + "/word: expected an array of generator labels");
      for (std::size_t l = 0; l < w.size(); ++l) term.word.push_back(string_of(w[l], tp + "/word/" + std::to_string(l)));
      term.coeff = rels[i][t].contains("coeff") ? rational_of(rels[i][t]["coeff"], tp + "/coeff") : Rational(1);
      r.push_back(std::move(term));
    }
    p.relations.push_back(std::move(r));
  }
  p.truncation = int_of(at(j, "truncation", ""), "/truncation");
  p.validate();
  return p;
}

inline json presentation_to_json(const TensorPresentation& p) {
  json j;
  j["vertices"] = p.vertices;
  j["truncation"] = p.truncation;
  j["generators"] = json::array();
  for (const auto& g : p.generators) j["generators"].push_back({{"label", g.label}, {"src", g.src}, {"tgt", g.tgt}, {"deg", g.degree}});
  j["relations"] = json::array();
  for (const auto& r : p.relations) {
    json terms = json::array();
    for (const auto& t : r) terms.push_back({{"word", t.word}, {"coeff", format_rational(t.coeff)}});
    j["relations"].push_back(terms);
  }
  return j;
}

/// {"vertices": [labels], "edges": [{u, v, a_uv, a_vu, d}]}; u and v are labels or indices.
inline ConfigGraph graph_from_json(const json& j) {
  using namespace detail;
  ConfigGraph g;
  const json& vs = array_at(j, "vertices", "");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    g.vertices.push_back(vs[i].is_number_integer() ? std::to_string(vs[i].get<long>()) : string_of(vs[i], p));
  }
  const json& es = array_at(j, "edges", "");
  auto endpoint = [&](const json& v, const std::string& p) -> std::size_t {
    if (v.is_number_integer()) {
      auto idx = v.get<long long>();
      if (idx < 0 || static_cast<std::size_t>(idx) >= g.size()) throw input_error(p + ": vertex index out of range");
      return static_cast<std::size_t>(idx);
    }
    try {
      return g.index_of(string_of(v, p));
    } catch (const input_error& e) {
      throw input_error(p + ": " + e.what());
    }
  };
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    ConfigEdge e;
    e.u = endpoint(at(es[i], "u", p), p + "/u");
    e.v = endpoint(at(es[i], "v", p), p + "/v");
    if (es[i].contains("a_uv")) e.a_uv = int_of(es[i]["a_uv"], p + "/a_uv");
    if (es[i].contains("a_vu")) e.a_vu = int_of(es[i]["a_vu"], p + "/a_vu");
    if (es[i].contains("d")) e.d = int_of(es[i]["d"], p + "/d");
    g.edges.push_back(e);
  }
  g.validate();
  return g;
}

inline json graph_to_json(const ConfigGraph& g) {
  json j;
  j["vertices"] = g.vertices;
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    json x = {{"u", g.vertices[e.u]}, {"v", g.vertices[e.v]}};
    if (e.a_uv) x["a_uv"] = *e.a_uv;
    if (e.a_vu) x["a_vu"] = *e.a_vu;
    if (e.d) x["d"] = *e.d;
    j["edges"].push_back(x);
  }
  return j;
}

/// {"dims": {"<degree>": dim, ...}} or {"dims": [{degree, dim}]}.
inline PoincarePolynomial poincare_from_json(const json& j) {
  using namespace detail;
  const json& dims = at(j, "dims", "");
  PoincarePolynomial p;
  auto put = [&](int d, long long m, const std::string& path) {
    if (m < 0) throw input_error(path + ": negative dimension");
    if (p.count(d)) throw input_error(path + ": degree listed twice");
    if (m > 0) p[d] = static_cast<long>(m);
  };
  if (dims.is_object()) {
    for (auto it = dims.begin(); it != dims.end(); ++it) {
      int d;
      try {
        std::size_t used = 0;
        d = std::stoi(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw input_error("/dims/" + it.key() + ": degree must be an integer");
      }
      put(d, integer_of(it.value(), "/dims/" + it.key()), "/dims/" + it.key());
    }
  } else if (dims.is_array()) {
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const std::string path = "/dims/" + std::to_string(i);
      put(int_of(at(dims[i], "degree", path), path + "/degree"), integer_of(at(dims[i], "dim", path), path + "/dim"), path);
    }
  } else {
    throw input_error("/dims: expected an object or an array");
  }
  return p;
}

inline json poincare_to_json(const PoincarePolynomial& p) {
  json dims = json::object();
  for (const auto& [d, m] : p) dims[std::to_string(d)] = m;
  return {{"dims", dims}};
}

inline json graded_space_to_json(const GradedVectorSpace& v) {
  json dims = json::object(), basis = json::object();
  for (const auto& [d, labels] : v.components()) {
    dims[std::to_string(d)] = labels.size();
    basis[std::to_string(d)] = labels;
  }
  return {{"dims", dims}, {"basis", basis}, {"total_dim", v.total_dim()}};
}

// ---------------------------------------------------------------------------------------------
// Certificates

inline json affine_to_json(const AffineTerm& t) { return {{"slope", t.slope}, {"intercept", t.intercept}, {"text", t.text}}; }

inline AffineTerm affine_from_json(const json& j, const std::string& path) {
  using namespace detail;
  AffineTerm t;
  t.slope = integer_of(at(j, "slope", path), path + "/slope");
  t.intercept = integer_of(at(j, "intercept", path), path + "/intercept");
  if (j.contains("text")) t.text = string_of(j["text"], path + "/text");
  return t;
}

inline json certificate_to_json(const FormalityCertificate& c) {
  json j;
  j["kind"] = c.kind;
  j["params"] = c.params;
  j["verdict"] = to_string(c.verdict);
  j["failed_hypotheses"] = c.failed_hypotheses;
  j["remarks"] = c.remarks;
  j["experimental"] = c.experimental;
  j["evidence"] = json::array();
  for (const auto& e : c.evidence) {
    json x;
    x["method"] = to_string(e.method);
    x["q_range"] = e.q_range();
    x["parity"] = e.parity;
    x["p_min"] = e.p_min;
    x["p_max"] = e.p_max ? json(*e.p_max) : json(nullptr);
    x["holds"] = e.holds;
    x["rendered"] = render(e);
    if (!e.note.empty()) x["note"] = e.note;
    switch (e.method) {
      case Method::DegreeBound:
        x["maxdeg"] = e.maxdeg;
        x["mu"] = e.mu;
        x["nu"] = e.nu;
        x["mirrored"] = e.mirrored;
        break;
      case Method::PeriodicResolution:
        x["n"] = e.n;
        x["k"] = e.k;
        x["maxdeg"] = e.maxdeg;
        break;
      case Method::GcdDivisibility:
        x["g"] = e.g;
        x["k"] = e.k;
        x["h"] = e.h;
        break;
      case Method::DirectHH:
        x["dim"] = e.dim;
        break;
    }
    x["chain"] = json::array();
    for (const auto& l : e.chain) {
      x["chain"].push_back({{"lhs", affine_to_json(l.lhs)}, {"relation", l.strict ? "<" : "<="}, {"rhs", affine_to_json(l.rhs)},
                            {"at_p_min", {l.lhs.at(e.p_min), l.rhs.at(e.p_min)}}});
    }
    j["evidence"].push_back(x);
  }
  return j;
}

inline FormalityCertificate certificate_from_json(const json& j) {
  using namespace detail;
  FormalityCertificate c;
  c.kind = string_of(at(j, "kind", ""), "/kind");
  const json& params = at(j, "params", "");
  if (!params.is_object()) throw input_error("/params: expected an object");
  for (auto it = params.begin(); it != params.end(); ++it) c.params[it.key()] = integer_of(it.value(), "/params/" + it.key());
  try {
    c.verdict = parse_verdict(string_of(at(j, "verdict", ""), "/verdict"));
  } catch (const input_error& e) {
    throw input_error(std::string("/verdict: ") + e.what());
  }
  if (j.contains("failed_hypotheses")) {
    for (std::size_t i = 0; i < j["failed_hypotheses"].size(); ++i) c.failed_hypotheses.push_back(string_of(j["failed_hypotheses"][i], "/failed_hypotheses"));
  }
  if (j.contains("remarks")) {
    for (std::size_t i = 0; i < j["remarks"].size(); ++i) c.remarks.push_back(string_of(j["remarks"][i], "/remarks"));
  }
  if (j.contains("experimental")) c.experimental = j["experimental"].is_boolean() && j["experimental"].get<bool>();
  const json& ev = array_at(j, "evidence", "");
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const std::string p = "/evidence/" + std::to_string(i);
    const json& x = ev[i];
    EvidenceItem e;
    try {
      e.method = parse_method(string_of(at(x, "method", p), p + "/method"));
    } catch (const input_error& err) {
      throw input_error(p + "/method: " + err.what());
    }
    e.parity = int_of(at(x, "parity", p), p + "/parity");
    e.p_min = integer_of(at(x, "p_min", p), p + "/p_min");
    if (x.contains("p_max") && !x["p_max"].is_null()) e.p_max = integer_of(x["p_max"], p + "/p_max");
    const json& holds = at(x, "holds", p);
    if (!holds.is_boolean()) throw input_error(p + "/holds: expected a boolean");
    e.holds = holds.get<bool>();
    if (x.contains("note")) e.note = string_of(x["note"], p + "/note");
    auto opt_int = [&](const char* key, long& out) {
      if (x.contains(key)) out = integer_of(x[key], p + "/" + key);
    };
    opt_int("maxdeg", e.maxdeg);
    opt_int("mu", e.mu);
    opt_int("nu", e.nu);
    opt_int("n", e.n);
    opt_int("k", e.k);
    opt_int("g", e.g);
    opt_int("h", e.h);
    opt_int("dim", e.dim);
    if (x.contains("mirrored")) e.mirrored = x["mirrored"].is_boolean() && x["mirrored"].get<bool>();
    const json& chain = array_at(x, "chain", p);
    for (std::size_t l = 0; l < chain.size(); ++l) {
      const std::string lp = p + "/chain/" + std::to_string(l);
      Link link;
      link.lhs = affine_from_json(at(chain[l], "lhs", lp), lp + "/lhs");
      link.rhs = affine_from_json(at(chain[l], "rhs", lp), lp + "/rhs");
      auto rel = string_of(at(chain[l], "relation", lp), lp + "/relation");
      if (rel != "<" && rel != "<=") throw input_error(lp + "/relation: expected \"<\" or \"<=\"");
      link.strict = rel == "<";
      e.chain.push_back(std::move(link));
    }
    c.evidence.push_back(std::move(e));
  }
  return c;
}

// ---------------------------------------------------------------------------------------------
// Reports

inline json hh_to_json(const HHResult& r) {
  json j = {{"p", r.p}, {"q", r.q}, {"dim", r.dim}, {"mode", to_string(r.mode)},
            {"slice_dims", {r.slice_dims[0], r.slice_dims[1], r.slice_dims[2]}}};
  if (!r.cocycles.empty()) {
    j["cocycles"] = json::array();
    for (const auto& z : r.cocycles) {
      json terms = json::array();
      for (const auto& t : z) terms.push_back({{"word", t.word}, {"value", t.value}, {"coeff", t.coeff}});
      j["cocycles"].push_back(terms);
    }
  }
  return j;
}

}  // namespace fkit::json_io
