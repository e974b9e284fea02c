#include "flowcat/moves.hpp"

#include <algorithm>

namespace flowcat {

std::string pair_name(const std::string& x, std::size_t n) {
  return "(" + x + "," + std::to_string(n) + ")";
}

std::string chain_edge_name(const std::string& v, std::size_t n) {
  return "e_{" + v + "," + std::to_string(n) + "}";
}

namespace {

[[noreturn]] void bad_spec(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, msg);
}

// Looks up a value that the spec must define; rejects keys the graph lacks.
std::vector<std::size_t> vertex_values(const DirectedGraph& g,
                                       const std::map<std::string, std::size_t>& m,
                                       const char* what) {
  for (const auto& [k, _] : m)
    if (!g.find_vertex(k)) bad_spec(std::string(what) + " names unknown vertex " + k);
  std::vector<std::size_t> out(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto it = m.find(g.vertices()[v]);
    if (it == m.end()) bad_spec(std::string(what) + " missing value for vertex " + g.vertices()[v]);
    out[v] = it->second;
  }
  return out;
}

std::vector<std::size_t> edge_values(const DirectedGraph& g,
                                     const std::map<std::string, std::size_t>& m,
                                     const char* what) {
  for (const auto& [k, _] : m)
    if (!g.find_edge(k)) bad_spec(std::string(what) + " names unknown edge " + k);
  std::vector<std::size_t> out(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto it = m.find(g.edges()[e].id);
    if (it == m.end()) bad_spec(std::string(what) + " missing value for edge " + g.edges()[e].id);
    out[e] = it->second;
  }
  return out;
}

bool is_source(const DirectedGraph& g, std::size_t v) { return classify_vertex(g, v).is_source; }

}  // namespace

DirectedGraph remove_sink(const DirectedGraph& g, const std::string& w) {
  g.require_well_formed();
  const std::size_t wi = g.vertex_index(w);
  auto cls = classify_vertex(g, wi);
  if (!cls.is_sink) bad_spec(w + " is not a sink");
  if (cls.is_source) bad_spec(w + " is a source as well as a sink");
  if (g.vertex_count() == 1) bad_spec("removing " + w + " would leave no vertices");

  std::vector<std::string> vs;
  for (const auto& v : g.vertices())
    if (v != w) vs.push_back(v);
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    if (e.tgt != w) es.push_back(e);
  std::vector<Bundle> bs;
  for (const auto& b : g.bundles())
    if (b.tgt != w) bs.push_back(b);
  return DirectedGraph(std::move(vs), std::move(es), std::move(bs));
}

void check_out_delay_spec(const DirectedGraph& g, const OutDelaySpec& spec) {
  g.require_finite("out_delay");
  auto dv = vertex_values(g, spec.d_vertices, "out-delay");
  auto de = edge_values(g, spec.d_edges, "out-delay");
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (de[e] > dv[g.src_index(e)])
      bad_spec("out-delay needs d(e) <= d(s(e)) but d(" + g.edges()[e].id + ") = " +
               std::to_string(de[e]) + " > " + std::to_string(dv[g.src_index(e)]));
}

DirectedGraph out_delay(const DirectedGraph& g, const OutDelaySpec& spec) {
  check_out_delay_spec(g, spec);
  auto dv = vertex_values(g, spec.d_vertices, "out-delay");
  auto de = edge_values(g, spec.d_edges, "out-delay");

  std::vector<std::string> vs;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t n = 0; n <= dv[v]; ++n) vs.push_back(pair_name(g.vertices()[v], n));
  std::vector<Edge> es;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& orig = g.edges()[e];
    es.push_back({orig.id, pair_name(orig.src, de[e]), pair_name(orig.tgt, 0)});
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& name = g.vertices()[v];
    for (std::size_t n = 1; n <= dv[v]; ++n)
      es.push_back({chain_edge_name(name, n), pair_name(name, n - 1), pair_name(name, n)});
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

std::vector<std::size_t> in_delay_vertex_values(const DirectedGraph& g,
                                                const InDelaySpec& spec) {
  auto de = edge_values(g, spec.d_edges, "in-delay");
  std::vector<std::size_t> dv(g.vertex_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    dv[g.tgt_index(e)] = std::max(dv[g.tgt_index(e)], de[e]);
  return dv;
}

void check_in_delay_spec(const DirectedGraph& g, const InDelaySpec& spec) {
  g.require_well_formed();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (classify_vertex(g, v).is_infinite_receiver)
      bad_spec("in-delay needs a graph without infinite receivers; " + g.vertices()[v] +
               " is one");
  edge_values(g, spec.d_edges, "in-delay");
}

DirectedGraph in_delay(const DirectedGraph& g, const InDelaySpec& spec) {
  check_in_delay_spec(g, spec);
  auto de = edge_values(g, spec.d_edges, "in-delay");
  auto dv = in_delay_vertex_values(g, spec);

  std::vector<std::string> vs;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t n = 0; n <= dv[v]; ++n) vs.push_back(pair_name(g.vertices()[v], n));
  std::vector<Edge> es;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& orig = g.edges()[e];
    es.push_back({orig.id, pair_name(orig.src, 0), pair_name(orig.tgt, de[e])});
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& name = g.vertices()[v];
    for (std::size_t n = 1; n <= dv[v]; ++n)
      es.push_back({chain_edge_name(name, n), pair_name(name, n), pair_name(name, n - 1)});
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

void check_out_split_spec(const DirectedGraph& g, const OutSplitSpec& spec) {
  g.require_finite("out_split");
  auto pv = vertex_values(g, spec.p_vertices, "out-split");
  auto pe = edge_values(g, spec.p_edges, "out-split");
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (pe[e] > pv[g.src_index(e)])
      bad_spec("out-split needs p(e) <= p(s(e)) but p(" + g.edges()[e].id + ") = " +
               std::to_string(pe[e]) + " > " + std::to_string(pv[g.src_index(e)]));
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (is_source(g, v) && pv[v] != 0)
      bad_spec("out-split needs p(v) = 0 at the source " + g.vertices()[v]);
}

DirectedGraph out_split(const DirectedGraph& g, const OutSplitSpec& spec) {
  check_out_split_spec(g, spec);
  auto pv = vertex_values(g, spec.p_vertices, "out-split");
  auto pe = edge_values(g, spec.p_edges, "out-split");

  std::vector<std::string> vs;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t n = 0; n <= pv[v]; ++n) vs.push_back(pair_name(g.vertices()[v], n));
  std::vector<Edge> es;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& orig = g.edges()[e];
    for (std::size_t n = 0; n <= pv[g.tgt_index(e)]; ++n)
      es.push_back({pair_name(orig.id, n), pair_name(orig.src, pe[e]), pair_name(orig.tgt, n)});
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

void check_in_split_spec(const DirectedGraph& g, const InSplitSpec& spec) {
  g.require_well_formed();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (classify_vertex(g, v).is_infinite_receiver)
      bad_spec("in-split needs a graph without infinite receivers; " + g.vertices()[v] +
               " is one");
  g.require_finite("in_split");
  auto pv = vertex_values(g, spec.p_vertices, "in-split");
  auto pe = edge_values(g, spec.p_edges, "in-split");
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (pe[e] > pv[g.tgt_index(e)])
      bad_spec("in-split needs p(e) <= p(t(e)) but p(" + g.edges()[e].id + ") = " +
               std::to_string(pe[e]) + " > " + std::to_string(pv[g.tgt_index(e)]));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (is_source(g, v)) {
      if (pv[v] != 0) bad_spec("in-split needs p(v) = 0 at the source " + g.vertices()[v]);
      continue;
    }
    std::vector<bool> hit(pv[v] + 1, false);
    for (auto e : g.in_edges(v)) hit[pe[e]] = true;
    for (std::size_t n = 0; n <= pv[v]; ++n)
      if (!hit[n])
        bad_spec("in-split values at " + g.vertices()[v] + " miss " + std::to_string(n) +
                 " (p restricted to incoming edges must be surjective)");
  }
}

DirectedGraph in_split(const DirectedGraph& g, const InSplitSpec& spec) {
  check_in_split_spec(g, spec);
  auto pv = vertex_values(g, spec.p_vertices, "in-split");
  auto pe = edge_values(g, spec.p_edges, "in-split");

  std::vector<std::string> vs;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::size_t n = 0; n <= pv[v]; ++n) vs.push_back(pair_name(g.vertices()[v], n));
  std::vector<Edge> es;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& orig = g.edges()[e];
    for (std::size_t n = 0; n <= pv[g.src_index(e)]; ++n)
      es.push_back({pair_name(orig.id, n), pair_name(orig.src, n), pair_name(orig.tgt, pe[e])});
  }
  return DirectedGraph(std::move(vs), std::move(es));
}

TruncatedGraph add_heads_truncated(const DirectedGraph& g, std::size_t depth) {
  g.require_well_formed();
  if (depth == 0) bad_spec("head depth must be at least 1");
  auto vs = g.vertices();
  auto es = g.edges();
  bool added = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_source(g, v)) continue;
    added = true;
    const auto& name = g.vertices()[v];
    for (std::size_t n = 1; n <= depth; ++n) {
      vs.push_back(pair_name(name, n));
      es.push_back({chain_edge_name(name, n), pair_name(name, n),
                    n == 1 ? name : pair_name(name, n - 1)});
    }
  }
  if (!added) return {g, depth, false};
  return {DirectedGraph(std::move(vs), std::move(es), g.bundles()), depth, true};
}

TruncatedGraph add_tails_truncated(const DirectedGraph& g, std::size_t depth) {
  g.require_well_formed();
  if (depth == 0) bad_spec("tail depth must be at least 1");
  auto vs = g.vertices();
  auto es = g.edges();
  bool added = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!classify_vertex(g, v).is_sink) continue;
    added = true;
    const auto& name = g.vertices()[v];
    for (std::size_t n = 1; n <= depth; ++n) {
      vs.push_back(pair_name(name, n));
      es.push_back({chain_edge_name(name, n), n == 1 ? name : pair_name(name, n - 1),
                    pair_name(name, n)});
    }
  }
  if (!added) return {g, depth, false};
  return {DirectedGraph(std::move(vs), std::move(es), g.bundles()), depth, true};
}

}  // namespace flowcat
