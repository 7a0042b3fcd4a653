// formalitykit command-line front end.
//
// Exit codes: 0 computed result or verdict, 1 certificate failed to recheck, 2 invalid input,
// 3 resource cap hit.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "formalitykit/formalitykit.hpp"
#include "formalitykit/json_io.hpp"

namespace {

using json = nlohmann::json;
using namespace fkit;

enum class Format { json, csv, human };

struct RunConfig {
  std::string field = "rationals";
  std::size_t max_words = 2'000'000;
  std::string format = "json";
};

struct Output {
  json result;
  // CSV rendering: header + rows. Empty header means key,value pairs of the result.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> human;
  int exit_code = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(path + ": malformed JSON: " + e.what());
  }
}

template <class Fn>
auto with_file(const std::string& path, Fn&& fn) {
  try {
    return fn(read_json_file(path));
  } catch (const input_error& e) {
    std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    if (msg.empty() || (msg[0] != '/' && msg[0] != ':')) msg.insert(0, ": ");
    throw input_error(path + msg);
  }
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// "a..b", "a,b,c" or a single integer.
std::vector<long> parse_list(const std::string& text, const std::string& name) {
  std::vector<long> out;
  if (text.empty()) return out;
  auto to_long = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw input_error("--" + name + ": '" + s + "' is not an integer");
    }
  };
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    long a = to_long(text.substr(0, dots)), b = to_long(text.substr(dots + 2));
    for (long v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(to_long(item));
  }
  return out;
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FORMALITYKIT_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

// Runs fn(i) for i in [0, count) on a bounded pool; results are written by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void certificate_output(const FormalityCertificate& c, Output& out) {
  out.result = json_io::certificate_to_json(c);
  out.human.push_back(c.kind + " " + [&] {
    std::string s;
    for (const auto& [k, v] : c.params) s += k + "=" + std::to_string(v) + " ";
    return s;
  }() + "-> " + to_string(c.verdict));
  for (const auto& f : c.failed_hypotheses) out.human.push_back("  failed hypothesis: " + f);
  for (const auto& r : c.remarks) out.human.push_back("  remark: " + r);
  for (const auto& e : c.evidence) out.human.push_back("  " + render(e));
  out.csv_header = {"kind", "verdict", "failed_hypotheses", "evidence_items"};
  std::string failed;
  for (const auto& f : c.failed_hypotheses) failed += (failed.empty() ? "" : ";") + f;
  out.csv_rows.push_back({c.kind, to_string(c.verdict), failed, std::to_string(c.evidence.size())});
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hochschild cohomology, Tor terms and intrinsic-formality certificates"};
  app.require_subcommand(1);
  // --h is a configuration parameter, so help is long-form only.
  app.set_help_flag("--help", "print help and exit");
  app.set_version_flag("--version", std::string(fkit::version));
  RunConfig cfg;
  app.add_option("--field", cfg.field, "rationals or fp:P")->capture_default_str();
  app.add_option("--max-words", cfg.max_words, "word cap per bar slice / tensor space")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json, csv or human")->capture_default_str()->check(CLI::IsMember({"json", "csv", "human"}));

  json input;
  std::function<Output()> action;

  // hh
  std::string algebra_path, mode = "relative";
  int p = 0, q = 0;
  bool cocycles = false;
  auto* hh = app.add_subcommand("hh", "dimension of HH^{p,q}(A, A) from the bar complex");
  hh->add_option("--algebra", algebra_path, "algebra JSON")->required();
  hh->add_option("--p", p, "homological degree")->required();
  hh->add_option("--q", q, "internal degree")->required();
  hh->add_option("--mode", mode, "relative or absolute")->capture_default_str();
  hh->add_flag("--cocycles", cocycles, "include cocycle representatives");
  auto load_algebra = [&](const FieldSpec& cli_field, bool field_given) {
    auto loaded = with_file(algebra_path, [](const json& j) { return json_io::algebra_from_json(j); });
    input["algebra"] = read_json_file(algebra_path);
    FieldSpec f = field_given || !loaded.field ? cli_field : *loaded.field;
    return std::make_pair(std::move(loaded.algebra), f);
  };
  hh->callback([&] {
    action = [&] {
      bool field_given = app.count("--field") > 0;
      auto [a, f] = load_algebra(parse_field(cfg.field), field_given);
      input["p"] = p;
      input["q"] = q;
      input["mode"] = mode;
      HHOptions opts;
      opts.max_words = cfg.max_words;
      opts.want_cocycles = cocycles;
      auto r = hh_bar(f, a, regular_bimodule(a), p, q, parse_bar_mode(mode), opts);
      Output out;
      out.result = json_io::hh_to_json(r);
      out.result["field"] = field_name(f);
      out.human.push_back("HH^{" + std::to_string(p) + "," + std::to_string(q) + "}(A,A) = " + std::to_string(r.dim) + "  (" +
                          to_string(r.mode) + ", slices " + std::to_string(r.slice_dims[0]) + "/" + std::to_string(r.slice_dims[1]) + "/" +
                          std::to_string(r.slice_dims[2]) + ")");
      out.csv_header = {"p", "q", "dim", "mode"};
      out.csv_rows.push_back({std::to_string(p), std::to_string(q), std::to_string(r.dim), to_string(r.mode)});
      return out;
    };
  });

  // scan
  int qmax = 5;
  auto* scan = app.add_subcommand("scan", "dim HH^{q,2-q}(A, A) for 3 <= q <= qmax");
  scan->add_option("--algebra", algebra_path, "algebra JSON")->required();
  scan->add_option("--qmax", qmax, "largest q")->required();
  scan->add_option("--mode", mode, "relative or absolute")->capture_default_str();
  scan->callback([&] {
    action = [&] {
      auto [a, f] = load_algebra(parse_field(cfg.field), app.count("--field") > 0);
      input["qmax"] = qmax;
      input["mode"] = mode;
      HHOptions opts;
      opts.max_words = cfg.max_words;
      const auto bm = parse_bar_mode(mode);
      std::vector<ScanEntry> rows(static_cast<std::size_t>(std::max(0, qmax - 2)));
      auto m = regular_bimodule(a);
      require_valid(a);
      std::vector<std::string> errors(rows.size());
      std::vector<int> kinds(rows.size(), 0);
      parallel_for(rows.size(), [&](std::size_t i) {
        int qq = static_cast<int>(i) + 3;
        try {
          rows[i] = {qq, hh_bar(f, a, m, qq, 2 - qq, bm, opts).dim};
        } catch (const resource_error& e) {
          kinds[i] = 3;
          errors[i] = e.what();
        } catch (const input_error& e) {
          kinds[i] = 2;
          errors[i] = e.what();
        }
      });
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (kinds[i] == 3) throw resource_error(errors[i]);
        if (kinds[i] == 2) throw input_error(errors[i]);
      }
      Output out;
      json table = json::array();
      bool all_zero = true;
      out.csv_header = {"q", "internal_degree", "dim"};
      for (const auto& r : rows) {
        table.push_back({{"q", r.q}, {"internal_degree", 2 - r.q}, {"dim", r.dim}});
        all_zero = all_zero && r.dim == 0;
        out.csv_rows.push_back({std::to_string(r.q), std::to_string(2 - r.q), std::to_string(r.dim)});
        out.human.push_back("HH^{" + std::to_string(r.q) + "," + std::to_string(2 - r.q) + "} = " + std::to_string(r.dim));
      }
      out.result = {{"table", table}, {"all_zero", all_zero}, {"field", field_name(f)}, {"mode", to_string(bm)}};
      return out;
    };
  });

  // tor
  std::string pres_path;
  auto* tor = app.add_subcommand("tor", "graded Tor^A_q(R, R) from a tensor presentation");
  tor->add_option("--pres", pres_path, "presentation JSON")->required();
  tor->add_option("--q", q, "Tor degree")->required();
  tor->callback([&] {
    action = [&] {
      auto pres = with_file(pres_path, [](const json& j) { return json_io::presentation_from_json(j); });
      input["presentation"] = read_json_file(pres_path);
      input["q"] = q;
      Output out;
      TorOptions opts;
      opts.max_words = cfg.max_words;
      try {
        auto t = tor_term(pres, q, parse_field(cfg.field), opts);
        out.result = json_io::graded_space_to_json(t);
        out.result["status"] = "exact";
        out.result["q"] = q;
        out.csv_header = {"degree", "dim"};
        for (const auto& [d, n] : t.dims()) {
          out.csv_rows.push_back({std::to_string(d), std::to_string(n)});
          out.human.push_back("Tor_" + std::to_string(q) + " degree " + std::to_string(d) + ": " + std::to_string(n));
        }
        if (t.is_zero()) out.human.push_back("Tor_" + std::to_string(q) + " = 0");
      } catch (const inconclusive_error& e) {
        out.result = {{"status", "inconclusive"}, {"q", q}, {"message", e.what()}};
        out.human.push_back(std::string("inconclusive: ") + e.what());
        out.csv_header = {"status", "message"};
        out.csv_rows.push_back({"inconclusive", e.what()});
      }
      return out;
    };
  });

  // certify
  long n = 0, k = 0, h = 0, hmin = 0, hmax = 0;
  auto* certify = app.add_subcommand("certify", "intrinsic-formality certificates");
  certify->require_subcommand(1);
  auto* single = certify->add_subcommand("single", "k[t]/t^{n+1} with deg t = k");
  single->add_option("--n", n)->required();
  single->add_option("--k", k)->required();
  single->callback([&] {
    action = [&] {
      input = {{"n", n}, {"k", k}};
      Output out;
      certificate_output(certify_single(n, k), out);
      return out;
    };
  });
  auto* pn = certify->add_subcommand("pn-config", "configurations of P^n[k]-objects");
  pn->add_option("--n", n)->required();
  pn->add_option("--k", k)->required();
  pn->add_option("--h", h)->required();
  pn->callback([&] {
    action = [&] {
      input = {{"n", n}, {"k", k}, {"h", h}};
      Output out;
      certificate_output(certify_config_pn(n, k, h), out);
      return out;
    };
  });
  auto* sph = certify->add_subcommand("spherical", "configurations of spherelike objects");
  sph->add_option("--k", k)->required();
  sph->add_option("--hmin", hmin)->required();
  sph->add_option("--hmax", hmax)->required();
  sph->callback([&] {
    action = [&] {
      input = {{"k", k}, {"hmin", hmin}, {"hmax", hmax}};
      Output out;
      certificate_output(certify_config_spherical(k, hmin, hmax), out);
      return out;
    };
  });

  // recheck
  std::string cert_path;
  auto* re = app.add_subcommand("recheck", "replay a certificate");
  re->add_option("--cert", cert_path, "certificate JSON (a bare certificate or a full report)")->required();
  re->callback([&] {
    action = [&] {
      json j = read_json_file(cert_path);
      input["certificate"] = j;
      if (j.is_object() && j.contains("result") && j["result"].is_object() && j["result"].contains("evidence")) j = j["result"];
      FormalityCertificate c;
      try {
        c = json_io::certificate_from_json(j);
      } catch (const input_error& e) {
        throw input_error(cert_path + ": " + e.what());
      }
      auto r = recheck(c);
      Output out;
      out.result = {{"ok", r.ok}, {"problems", r.problems}, {"verdict", to_string(c.verdict)}};
      out.human.push_back(r.ok ? "certificate rechecks (" + to_string(c.verdict) + ")" : "certificate FAILED to recheck");
      for (const auto& m : r.problems) out.human.push_back("  " + m);
      out.csv_header = {"ok", "verdict", "problems"};
      out.csv_rows.push_back({r.ok ? "true" : "false", to_string(c.verdict), join(r.problems, ";")});
      out.exit_code = r.ok ? 0 : 1;
      return out;
    };
  });

  // normalize
  std::string graph_path;
  long nk = 0;
  auto* norm = app.add_subcommand("normalize", "shift normalization of a configuration graph");
  norm->add_option("--graph", graph_path, "graph JSON")->required();
  norm->add_option("--nk", nk, "Calabi-Yau dimension nk (even)")->required();
  norm->callback([&] {
    action = [&] {
      auto g = with_file(graph_path, [](const json& j) { return json_io::graph_from_json(j); });
      input["graph"] = read_json_file(graph_path);
      input["nk"] = nk;
      auto r = normalize_shifts(g, nk);
      Output out;
      out.result = {{"consistent", r.consistent}, {"h", r.h}, {"extension", g.edges.size() >= g.size()}};
      if (r.consistent) {
        json shifts = json::object();
        for (std::size_t i = 0; i < g.size(); ++i) shifts[g.vertices[i]] = r.shifts[i];
        out.result["shifts"] = shifts;
        json edges = json::array();
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
          edges.push_back({{"u", g.vertices[g.edges[i].u]}, {"v", g.vertices[g.edges[i].v]}, {"a_uv", r.degrees[i].first}, {"a_vu", r.degrees[i].second}});
        }
        out.result["normalized_edges"] = edges;
        out.csv_header = {"vertex", "shift"};
        for (std::size_t i = 0; i < g.size(); ++i) {
          out.csv_rows.push_back({g.vertices[i], std::to_string(r.shifts[i])});
          out.human.push_back("n_" + g.vertices[i] + " = " + std::to_string(r.shifts[i]));
        }
        out.human.push_back("every edge has normalized degree h = " + std::to_string(r.h));
      } else {
        out.result["witness_cycle"] = r.witness_cycle;
        out.csv_header = {"consistent", "witness_cycle"};
        out.csv_rows.push_back({"false", join(r.witness_cycle, "-")});
        out.human.push_back("inconsistent shifts around cycle " + join(r.witness_cycle, " - "));
      }
      return out;
    };
  });

  // signs
  auto* signs = app.add_subcommand("signs", "sign assignment eps_u eps_v = (-1)^d");
  signs->add_option("--graph", graph_path, "graph JSON")->required();
  signs->callback([&] {
    action = [&] {
      auto g = with_file(graph_path, [](const json& j) { return json_io::graph_from_json(j); });
      input["graph"] = read_json_file(graph_path);
      auto r = sign_assignment(g);
      Output out;
      out.result = {{"feasible", r.feasible}, {"extension", g.edges.size() >= g.size()}};
      if (r.feasible) {
        json s = json::object();
        for (std::size_t i = 0; i < g.size(); ++i) s[g.vertices[i]] = r.signs[i];
        out.result["signs"] = s;
        out.csv_header = {"vertex", "sign"};
        for (std::size_t i = 0; i < g.size(); ++i) {
          out.csv_rows.push_back({g.vertices[i], std::to_string(r.signs[i])});
          out.human.push_back("eps_" + g.vertices[i] + " = " + (r.signs[i] > 0 ? "+1" : "-1"));
        }
      } else {
        out.result["witness_cycle"] = r.witness_cycle;
        out.csv_header = {"feasible", "witness_cycle"};
        out.csv_rows.push_back({"false", join(r.witness_cycle, "-")});
        out.human.push_back("infeasible: odd total degree around cycle " + join(r.witness_cycle, " - "));
      }
      return out;
    };
  });

  // kunneth
  std::string poincare_path;
  int power = 0;
  bool same = false, different = false;
  auto* kun = app.add_subcommand("kunneth", "graded Hom between equivariant powers");
  kun->add_option("--poincare", poincare_path, "Poincare JSON")->required();
  kun->add_option("--n", power, "power n")->required();
  auto* same_flag = kun->add_flag("--same", same, "linearizations agree (S^n)");
  auto* diff_flag = kun->add_flag("--different", different, "linearizations differ (exterior power)");
  same_flag->excludes(diff_flag);
  kun->callback([&] {
    if (!same && !different) throw CLI::ValidationError("kunneth", "one of --same or --different is required");
    action = [&] {
      auto poly = with_file(poincare_path, [](const json& j) { return json_io::poincare_from_json(j); });
      input["poincare"] = read_json_file(poincare_path);
      input["n"] = power;
      input["same_linearization"] = same;
      auto f = parse_field(cfg.field);
      auto r = graded_power(poly, power, same ? PowerKind::symmetric : PowerKind::exterior, f);
      Output out;
      out.result = json_io::poincare_to_json(r);
      out.result["operation"] = same ? "symmetric" : "exterior";
      out.csv_header = {"degree", "dim"};
      for (const auto& [d, m] : r) {
        out.csv_rows.push_back({std::to_string(d), std::to_string(m)});
        out.human.push_back("degree " + std::to_string(d) + ": " + std::to_string(m));
      }
      if (r.empty()) out.human.push_back("0");
      return out;
    };
  });

  // build-config
  std::string preset = "orthogonal";
  std::size_t chain = 0, cycle = 0;
  int truncation = -1;
  bool as_presentation = false;
  auto* bc = app.add_subcommand("build-config", "configuration algebra (or presentation) as JSON");
  bc->add_option("--graph", graph_path, "graph JSON");
  bc->add_option("--chain", chain, "A_m chain with m vertices");
  bc->add_option("--cycle", cycle, "cycle with m vertices");
  bc->add_option("--n", n)->required();
  bc->add_option("--k", k)->required();
  bc->add_option("--h", h)->required();
  bc->add_option("--preset", preset, "orthogonal or zigzag")->capture_default_str();
  bc->add_flag("--presentation", as_presentation, "emit a tensor presentation instead");
  bc->add_option("--truncation", truncation, "truncation degree for --presentation");
  bc->callback([&] {
    action = [&] {
      ConfigGraph g;
      int sources = !graph_path.empty() + (chain > 0) + (cycle > 0);
      if (sources != 1) throw input_error("build-config needs exactly one of --graph, --chain, --cycle");
      if (!graph_path.empty()) {
        g = with_file(graph_path, [](const json& j) { return json_io::graph_from_json(j); });
        input["graph"] = read_json_file(graph_path);
      } else if (chain > 0) {
        g = chain_graph(chain);
        input["chain"] = chain;
      } else {
        g = cycle_graph(cycle);
        input["cycle"] = cycle;
      }
      input["n"] = n;
      input["k"] = k;
      input["h"] = h;
      input["preset"] = preset;
      auto ps = parse_preset(preset);
      Output out;
      if (as_presentation) {
        int D = truncation >= 0 ? truncation : static_cast<int>(4 * std::max(n * k, h));
        input["truncation"] = D;
        out.result = json_io::presentation_to_json(configuration_presentation(g, static_cast<int>(n), static_cast<int>(k), static_cast<int>(h), ps, D));
      } else {
        auto a = build_configuration_algebra(g, static_cast<int>(n), static_cast<int>(k), static_cast<int>(h), ps);
        out.result = json_io::algebra_to_json(a, parse_field(cfg.field));
        out.human.push_back("configuration algebra of dimension " + std::to_string(a.dim()));
      }
      out.csv_header = {"key", "value"};
      out.csv_rows.push_back({"json", out.result.dump()});
      if (out.human.empty()) out.human.push_back(out.result.dump(2));
      return out;
    };
  });

  // sweep
  std::string kind = "pn", n_list, k_list, h_list = "cy", hmin_list, hmax_list;
  auto* sweep = app.add_subcommand("sweep", "certificate verdicts over a parameter grid");
  sweep->add_option("--kind", kind, "pn, spherical or single")->capture_default_str()->check(CLI::IsMember({"pn", "spherical", "single"}));
  sweep->add_option("--n", n_list, "values of n: a..b or a,b,c");
  sweep->add_option("--k", k_list, "values of k");
  sweep->add_option("--h", h_list, "values of h, or cy for h = nk/2")->capture_default_str();
  sweep->add_option("--hmin", hmin_list, "values of h_min (default floor(k/2))");
  sweep->add_option("--hmax", hmax_list, "values of h_max (default k)");
  sweep->callback([&] {
    action = [&] {
      input = {{"kind", kind}, {"n", n_list}, {"k", k_list}, {"h", h_list}, {"hmin", hmin_list}, {"hmax", hmax_list}};
      struct Point {
        std::map<std::string, long> params;
        std::string error;
      };
      std::vector<Point> grid;
      auto ns = parse_list(n_list, "n"), ks = parse_list(k_list, "k");
      if (kind == "spherical") {
        auto los = parse_list(hmin_list, "hmin"), his = parse_list(hmax_list, "hmax");
        for (long kv : ks) {
          std::vector<long> lo = los.empty() ? std::vector<long>{kv / 2} : los;
          std::vector<long> hi = his.empty() ? std::vector<long>{kv} : his;
          for (long a : lo) {
            for (long b : hi) grid.push_back({{{"k", kv}, {"h_min", a}, {"h_max", b}}, {}});
          }
        }
      } else {
        for (long nv : ns) {
          for (long kv : ks) {
            if (kind == "single") {
              grid.push_back({{{"n", nv}, {"k", kv}}, {}});
            } else if (h_list == "cy") {
              if ((nv * kv) % 2 != 0) {
                grid.push_back({{{"n", nv}, {"k", kv}}, "nk even"});
              } else {
                grid.push_back({{{"n", nv}, {"k", kv}, {"h", nv * kv / 2}}, {}});
              }
            } else {
              for (long hv : parse_list(h_list, "h")) grid.push_back({{{"n", nv}, {"k", kv}, {"h", hv}}, {}});
            }
          }
        }
      }
      std::vector<FormalityCertificate> certs(grid.size());
      parallel_for(grid.size(), [&](std::size_t i) {
        const auto& pt = grid[i].params;
        if (!grid[i].error.empty()) {
          certs[i].kind = "pn-config";
          certs[i].params = pt;
          certs[i].verdict = Verdict::CriterionInapplicable;
          certs[i].failed_hypotheses = {grid[i].error};
        } else if (kind == "single") {
          certs[i] = certify_single(pt.at("n"), pt.at("k"));
        } else if (kind == "pn") {
          certs[i] = certify_config_pn(pt.at("n"), pt.at("k"), pt.at("h"));
        } else {
          certs[i] = certify_config_spherical(pt.at("k"), pt.at("h_min"), pt.at("h_max"));
        }
      });
      Output out;
      std::vector<std::string> keys = kind == "spherical" ? std::vector<std::string>{"k", "h_min", "h_max"}
                                      : kind == "single"  ? std::vector<std::string>{"n", "k"}
                                                          : std::vector<std::string>{"n", "k", "h"};
      out.csv_header = keys;
      out.csv_header.insert(out.csv_header.end(), {"verdict", "failed_hypotheses", "gcd_ok", "rechecks"});
      json rows = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& c = certs[i];
        json row;
        std::vector<std::string> csv;
        for (const auto& key : keys) {
          auto it = c.params.find(key);
          row[key] = it == c.params.end() ? json(nullptr) : json(it->second);
          csv.push_back(it == c.params.end() ? "" : std::to_string(it->second));
        }
        row["verdict"] = to_string(c.verdict);
        row["failed_hypotheses"] = c.failed_hypotheses;
        json gcd_ok = nullptr;
        if (kind == "pn" && c.params.count("h")) gcd_ok = std::gcd(c.params.at("k"), c.params.at("h")) > 1;
        row["gcd_ok"] = gcd_ok;
        bool ok = grid[i].error.empty() ? recheck(c).ok : true;
        row["rechecks"] = ok;
        rows.push_back(row);
        csv.insert(csv.end(), {to_string(c.verdict), join(c.failed_hypotheses, ";"), cell(gcd_ok), ok ? "true" : "false"});
        out.csv_rows.push_back(csv);
        std::string line;
        for (std::size_t j = 0; j < keys.size(); ++j) line += keys[j] + "=" + csv[j] + " ";
        line += to_string(c.verdict);
        if (!c.failed_hypotheses.empty()) line += " (" + join(c.failed_hypotheses, "; ") + ")";
        out.human.push_back(line);
      }
      out.result = {{"rows", rows}, {"count", grid.size()}};
      return out;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Output out;
  try {
    parse_field(cfg.field);
    out = action();
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const inconclusive_error& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 0;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "certify") command += " " + app.get_subcommands().front()->get_subcommands().front()->get_name();
  if (cfg.format == "json") {
    json report = {{"tool", "formalitykit"}, {"version", fkit::version}, {"command", command}, {"input", input},
                   {"field", cfg.field}, {"max_words", cfg.max_words}, {"result", out.result}};
    std::cout << report.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::vector<std::string> header;
    for (const auto& hname : out.csv_header) header.push_back(csv_escape(hname));
    std::cout << join(header, ",") << "\n";
    for (const auto& row : out.csv_rows) {
      std::vector<std::string> cells;
      for (const auto& c : row) cells.push_back(csv_escape(c));
      std::cout << join(cells, ",") << "\n";
    }
  } else {
    std::cout << "formalitykit " << fkit::version << " " << command << "\n";
    for (const auto& line : out.human) std::cout << line << "\n";
  }
  return out.exit_code;
}
