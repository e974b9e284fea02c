#include "flowcat/io.hpp"

#include <fstream>
#include <sstream>

#include "flowcat/error.hpp"

namespace flowcat {
namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

Json parse_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(where, e.what());
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_error(where, "expected a string");
  return j.get<std::string>();
}

std::size_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    parse_error(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

// A JSON value for an arbitrary precision integer: a number when it fits.
Json big(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

void split_values(const Json& j, const DirectedGraph& g, const std::string& where,
                  std::map<std::string, std::size_t>& verts,
                  std::map<std::string, std::size_t>& edges, bool want_vertices) {
  if (!j.is_object()) parse_error(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool is_v = g.find_vertex(k).has_value(), is_e = g.find_edge(k).has_value();
    if (is_v && is_e)
      parse_error(where, "\"" + k + "\" names both a vertex and an edge; use separate maps");
    if (!is_v && !is_e) parse_error(where, "unknown vertex or edge \"" + k + "\"");
    if (is_v && !want_vertices) parse_error(where, "vertex values are derived here; drop \"" + k + "\"");
    (is_v ? verts : edges)[k] = natural(v, where + "." + k);
  }
}

void read_map(const Json& j, const char* key, const std::string& where,
              std::map<std::string, std::size_t>& out) {
  if (!j.contains(key)) return;
  const Json& m = j.at(key);
  if (!m.is_object()) parse_error(where + "." + key, "expected an object");
  for (const auto& [k, v] : m.items()) out[k] = natural(v, where + "." + key + "." + k);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) { return parse_text(text, what); }

// ---- files ----

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

// ---- graphs ----

DirectedGraph graph_from_json(const Json& j, bool check) {
  std::vector<std::string> vs;
  std::vector<Edge> es;
  std::vector<Bundle> bs;
  const Json& jv = field(j, "vertices", "graph");
  if (!jv.is_array()) parse_error("graph.vertices", "expected an array");
  for (std::size_t i = 0; i < jv.size(); ++i)
    vs.push_back(str(jv[i], "graph.vertices[" + std::to_string(i) + "]"));
  if (j.contains("edges")) {
    const Json& je = j.at("edges");
    if (!je.is_array()) parse_error("graph.edges", "expected an array");
    for (std::size_t i = 0; i < je.size(); ++i) {
      std::string w = "graph.edges[" + std::to_string(i) + "]";
      es.push_back({str(field(je[i], "id", w), w + ".id"), str(field(je[i], "src", w), w + ".src"),
                    str(field(je[i], "tgt", w), w + ".tgt")});
    }
  }
  if (j.contains("infinite_bundles")) {
    const Json& jb = j.at("infinite_bundles");
    if (!jb.is_array()) parse_error("graph.infinite_bundles", "expected an array");
    for (std::size_t i = 0; i < jb.size(); ++i) {
      std::string w = "graph.infinite_bundles[" + std::to_string(i) + "]";
      bs.push_back({str(field(jb[i], "src", w), w + ".src"), str(field(jb[i], "tgt", w), w + ".tgt")});
    }
  }
  DirectedGraph g(vs, es, bs);
  if (check) {
    auto problems = validate(g);
    if (!problems.empty()) parse_error("graph", problems.front());
  }
  return g;
}

DirectedGraph graph_from_text(const std::string& text) {
  return graph_from_json(parse_text(text, "graph"));
}

DirectedGraph load_graph(const std::string& path) { return graph_from_text(read_file(path)); }

Json graph_to_json(const DirectedGraph& g) {
  Json j;
  j["vertices"] = g.vertices();
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
  if (g.has_bundles()) {
    j["infinite_bundles"] = Json::array();
    for (const auto& b : g.bundles())
      j["infinite_bundles"].push_back({{"src", b.src}, {"tgt", b.tgt}});
  }
  return j;
}

// ---- moves ----

MoveSpec move_spec_from_json(const Json& j, const DirectedGraph& g) {
  MoveSpec s;
  s.move = str(field(j, "move", "move spec"), "move spec.move");
  const std::string w = "move spec";
  if (s.move == "remove_sink") {
    s.vertex = str(field(j, "vertex", w), w + ".vertex");
  } else if (s.move == "add_heads" || s.move == "add_tails") {
    s.depth = natural(field(j, "depth", w), w + ".depth");
  } else if (s.move == "out_delay") {
    if (j.contains("d")) split_values(j.at("d"), g, w + ".d", s.out_delay.d_vertices,
                                      s.out_delay.d_edges, true);
    read_map(j, "d_vertices", w, s.out_delay.d_vertices);
    read_map(j, "d_edges", w, s.out_delay.d_edges);
  } else if (s.move == "in_delay") {
    std::map<std::string, std::size_t> unused;
    if (j.contains("d")) split_values(j.at("d"), g, w + ".d", unused, s.in_delay.d_edges, false);
    read_map(j, "d_edges", w, s.in_delay.d_edges);
  } else if (s.move == "out_split" || s.move == "in_split") {
    if (j.contains("p"))
      split_values(j.at("p"), g, w + ".p", s.split.p_vertices, s.split.p_edges, true);
    read_map(j, "p_vertices", w, s.split.p_vertices);
    read_map(j, "p_edges", w, s.split.p_edges);
  } else {
    parse_error(w + ".move", "unknown move \"" + s.move + "\"");
  }
  return s;
}

MoveSpec load_move_spec(const std::string& path, const DirectedGraph& g) {
  return move_spec_from_json(parse_text(read_file(path), "move spec"), g);
}

MoveResult apply_move(const DirectedGraph& g, const MoveSpec& s) {
  if (s.move == "remove_sink") return {remove_sink(g, s.vertex), false};
  if (s.move == "out_delay") return {out_delay(g, s.out_delay), false};
  if (s.move == "in_delay") return {in_delay(g, s.in_delay), false};
  if (s.move == "out_split") return {out_split(g, s.split), false};
  if (s.move == "in_split") return {in_split(g, s.split), false};
  TruncatedGraph t = s.move == "add_heads" ? add_heads_truncated(g, s.depth)
                                           : add_tails_truncated(g, s.depth);
  return {t.graph, t.approximation};
}

FunctorPairPtr make_functor_pair(CategoryPtr cat, GraphPtr g, const MoveSpec& s) {
  if (s.move == "remove_sink") return sink_removal_pair(cat, g, s.vertex);
  if (s.move == "out_delay") return out_delay_pair(cat, g, s.out_delay);
  if (s.move == "in_delay") return in_delay_pair(cat, g, s.in_delay);
  if (s.move == "out_split") return out_split_pair(cat, g, s.split);
  if (s.move == "in_split") return in_split_pair(cat, g, s.split);
  throw Error(ErrorKind::Unsupported, s.move + " produces an infinite graph; no functor pair");
}

// ---- diagrams ----

Diagram diagram_from_json(const Json& j, const MatCategory& cat, GraphPtr gp) {
  const DirectedGraph& g = *gp;
  const int q = cat.field();
  Diagram d{gp, std::vector<int>(g.vertex_count(), 0), {}};
  const Json& dims = field(j, "dims", "diagram");
  if (!dims.is_object()) parse_error("diagram.dims", "expected an object");
  for (const auto& [k, v] : dims.items()) {
    auto idx = g.find_vertex(k);
    if (!idx) parse_error("diagram.dims", "unknown vertex \"" + k + "\"");
    d.obj[*idx] = static_cast<int>(natural(v, "diagram.dims." + k));
    if (!cat.has_object(d.obj[*idx]))
      parse_error("diagram.dims." + k, "dimension above " + cat.spec());
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!dims.contains(g.vertices()[v]))
      parse_error("diagram.dims", "no dimension for \"" + g.vertices()[v] + "\"");
  Json maps = j.contains("maps") ? j.at("maps") : Json::object();
  if (!maps.is_object()) parse_error("diagram.maps", "expected an object");
  for (const auto& [k, v] : maps.items())
    if (!g.find_edge(k)) parse_error("diagram.maps", "unknown edge \"" + k + "\"");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& id = g.edges()[e].id;
    const std::size_t rows = static_cast<std::size_t>(d.obj[g.tgt_index(e)]);
    const std::size_t cols = static_cast<std::size_t>(d.obj[g.src_index(e)]);
    FqMatrix m(q, rows, cols);
    const std::string w = "diagram.maps." + id;
    if (maps.contains(id)) {
      const Json& a = maps.at(id);
      if (!a.is_array() || a.size() != rows) parse_error(w, "expected " + std::to_string(rows) + " rows");
      for (std::size_t r = 0; r < rows; ++r) {
        if (!a[r].is_array() || a[r].size() != cols)
          parse_error(w, "row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
          if (!a[r][c].is_number_integer()) parse_error(w, "entries are integers");
          m.set(r, c, a[r][c].get<long>());
        }
      }
    } else if (rows && cols) {
      parse_error(w, "missing map");
    }
    d.mor.push_back(cat.morphism(m));
  }
  return d;
}

Json diagram_to_json(const FiniteCategory& cat, const Diagram& d) {
  const DirectedGraph& g = *d.graph;
  Json j;
  j["objects"] = Json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    j["objects"][g.vertices()[v]] = cat.object_name(d.obj[v]);
  if (!cat.is_poset()) {
    j["maps"] = Json::object();
    for (std::size_t e = 0; e < g.edge_count(); ++e) j["maps"][g.edges()[e].id] = d.mor[e].data;
  }
  return j;
}

// ---- reports ----

Json invariants_json(const DirectedGraph& g) {
  Json j;
  j["cohereditary_irreducible_count"] = cohereditary_irreducible_subsets(g).size();
  j["irreducible"] = is_irreducible(g);
  if (g.has_bundles()) {
    j["ps"] = nullptr;
    j["bf"] = nullptr;
    j["nontrivial"] = nullptr;
    return j;
  }
  j["nontrivial"] = is_nontrivial(g);
  j["ps"] = big(parry_sullivan(g));
  auto bf = bowen_franks(g);
  Json torsion = Json::array();
  for (const auto& t : bf.torsion) torsion.push_back(big(t));
  j["bf"] = {{"free_rank", bf.free_rank}, {"torsion", torsion}};
  return j;
}

Json franks_json(const FranksVerdict& v) {
  return {{"verdict", to_string(v.kind)}, {"reason", v.reason}};
}

Json report_json(const EquivalenceReport& r) {
  auto check = [](const CheckResult& c) { return Json{{"pass", c.pass}, {"tested", c.tested}}; };
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) ce.push_back({{"check", c.check}, {"detail", c.detail}});
  return {{"move", r.move},
          {"category", r.category},
          {"seed", r.seed},
          {"samples", r.samples},
          {"node_cap", r.node_cap},
          {"source_diagrams", r.source_diagrams},
          {"target_diagrams", r.target_diagrams},
          {"source_exhaustive", r.source_exhaustive},
          {"target_exhaustive", r.target_exhaustive},
          {"coproduct_condition", check(r.coproduct)},
          {"functorial", check(r.functorial)},
          {"round_trip", check(r.round_trip)},
          {"hom_bijective", check(r.hom_bijective)},
          {"hom_exhaustive", r.hom_exhaustive},
          {"hom_skips", r.hom_skips},
          {"bound_skips", r.bound_skips},
          {"sourced_input", r.sourced_input},
          {"inconclusive", r.inconclusive},
          {"inconclusive_reason", r.inconclusive_reason},
          {"counterexamples", ce},
          {"passed", r.passed()}};
}

Json case_json(const CaseReport& r) {
  Json qs = Json::array();
  for (const auto& q : r.quantities) {
    Json x{{"name", q.name}, {"computed", q.computed}};
    if (!q.expected.empty()) x["expected"] = q.expected;
    if (!q.basis.empty()) x["basis"] = q.basis;
    qs.push_back(x);
  }
  return {{"case", r.name}, {"quantities", qs}, {"verdict", r.verdict}, {"notes", r.notes}};
}

std::string case_text(const CaseReport& r) {
  std::ostringstream os;
  os << "case " << r.name << "\n";
  for (const auto& q : r.quantities) {
    os << "  " << q.name << ": " << q.computed;
    if (!q.expected.empty()) os << " (expected " << q.expected << (q.basis.empty() ? "" : ", " + q.basis) << ")";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  os << "verdict: " << r.verdict << "\n";
  return os.str();
}

Json relations_json(const std::vector<RelationCheck>& rel, bool unital) {
  Json rs = Json::array();
  bool all = unital;
  for (const auto& c : rel) {
    rs.push_back({{"relation", c.relation}, {"pass", c.pass}, {"checked", c.checked},
                  {"failures", c.failures}});
    all = all && c.pass;
  }
  return {{"relations", rs}, {"unital", unital}, {"passed", all}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- DOT ----

namespace {
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string to_dot(const DirectedGraph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const auto& v : g.vertices()) os << "  " << quoted(v) << ";\n";
  for (const auto& e : g.edges())
    os << "  " << quoted(e.src) << " -> " << quoted(e.tgt) << " [label=" << quoted(e.id) << "];\n";
  for (const auto& b : g.bundles())
    os << "  " << quoted(b.src) << " -> " << quoted(b.tgt) << " [label=\"∞\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace flowcat
