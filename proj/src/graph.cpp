#include "flowcat/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "flowcat/int_matrix.hpp"

namespace flowcat {

DirectedGraph::DirectedGraph(std::vector<std::string> vertices,
                             std::vector<Edge> edges,
                             std::vector<Bundle> bundles)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      bundles_(std::move(bundles)) {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) vertex_pos_.emplace(vertices_[i], i);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_pos_.emplace(edges_[i].id, i);

  in_.resize(n);
  out_.resize(n);
  in_b_.resize(n);
  out_b_.resize(n);
  edge_src_.assign(edges_.size(), n);
  edge_tgt_.assign(edges_.size(), n);
  bundle_src_.assign(bundles_.size(), n);
  bundle_tgt_.assign(bundles_.size(), n);

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto s = find_vertex(edges_[i].src);
    auto t = find_vertex(edges_[i].tgt);
    if (!s || !t) continue;
    edge_src_[i] = *s;
    edge_tgt_[i] = *t;
    out_[*s].push_back(i);
    in_[*t].push_back(i);
  }
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    auto s = find_vertex(bundles_[i].src);
    auto t = find_vertex(bundles_[i].tgt);
    if (!s || !t) continue;
    bundle_src_[i] = *s;
    bundle_tgt_[i] = *t;
    out_b_[*s].push_back(i);
    in_b_[*t].push_back(i);
  }
  well_formed_ = validate(*this).empty();
}

std::optional<std::size_t> DirectedGraph::find_vertex(const std::string& name) const {
  auto it = vertex_pos_.find(name);
  if (it == vertex_pos_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedGraph::find_edge(const std::string& id) const {
  auto it = edge_pos_.find(id);
  if (it == edge_pos_.end()) return std::nullopt;
  return it->second;
}

std::size_t DirectedGraph::vertex_index(const std::string& name) const {
  if (auto i = find_vertex(name)) return *i;
  throw Error(ErrorKind::UnknownVertex, "unknown vertex " + name);
}

std::size_t DirectedGraph::edge_index(const std::string& id) const {
  if (auto i = find_edge(id)) return *i;
  throw Error(ErrorKind::UnknownEdge, "unknown edge " + id);
}

void DirectedGraph::require_well_formed() const {
  if (well_formed_) return;
  throw Error(ErrorKind::InvalidArgument,
              "malformed graph: " + validate(*this).front());
}

void DirectedGraph::require_finite(const char* operation) const {
  require_well_formed();
  if (has_bundles())
    throw Error(ErrorKind::Unsupported,
                std::string(operation) + " requires a graph without infinite bundles");
}

std::vector<std::string> validate(const DirectedGraph& g) {
  std::vector<std::string> out;
  if (g.vertices().empty()) out.push_back("empty vertex set");

  std::set<std::string> seen;
  for (const auto& v : g.vertices())
    if (!seen.insert(v).second) out.push_back("duplicate vertex " + v);

  auto known = [&](const std::string& v) { return g.find_vertex(v).has_value(); };
  std::set<std::string> ids;
  for (const auto& e : g.edges()) {
    if (!ids.insert(e.id).second) out.push_back("duplicate id " + e.id);
    if (!known(e.src)) out.push_back("dangling endpoint " + e.src);
    if (!known(e.tgt)) out.push_back("dangling endpoint " + e.tgt);
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& b : g.bundles()) {
    if (!known(b.src)) out.push_back("dangling endpoint " + b.src);
    if (!known(b.tgt)) out.push_back("dangling endpoint " + b.tgt);
    if (!pairs.insert({b.src, b.tgt}).second)
      out.push_back("duplicate bundle " + b.src + "->" + b.tgt);
  }
  return out;
}

VertexClass classify_vertex(const DirectedGraph& g, std::size_t v) {
  VertexClass c;
  c.is_infinite_receiver = !g.in_bundles(v).empty();
  c.is_source = g.in_edges(v).empty() && !c.is_infinite_receiver;
  c.is_sink = g.out_edges(v).empty() && g.out_bundles(v).empty();
  return c;
}

VertexClass classify_vertex(const DirectedGraph& g, const std::string& v) {
  return classify_vertex(g, g.vertex_index(v));
}

std::vector<std::vector<bool>> reachability(const DirectedGraph& g) {
  g.require_well_formed();
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    succ[g.src_index(e)].push_back(g.tgt_index(e));
  for (std::size_t b = 0; b < g.bundles().size(); ++b)
    succ[g.bundle_src_index(b)].push_back(g.bundle_tgt_index(b));

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack(succ[s].begin(), succ[s].end());
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (reach[s][v]) continue;
      reach[s][v] = true;
      for (auto w : succ[v])
        if (!reach[s][w]) stack.push_back(w);
    }
  }
  return reach;
}

bool path_exists(const DirectedGraph& g, const std::string& v, const std::string& w) {
  auto reach = reachability(g);
  return reach[g.vertex_index(v)][g.vertex_index(w)];
}

bool is_acyclic(const DirectedGraph& g) {
  auto reach = reachability(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (reach[v][v]) return false;
  return true;
}

bool is_irreducible(const DirectedGraph& g) {
  auto reach = reachability(g);
  const std::size_t n = g.vertex_count();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (v != w && !reach[v][w]) return false;
  return true;
}

bool is_nontrivial(const DirectedGraph& g) {
  g.require_finite("is_nontrivial");
  const std::size_t n = g.vertex_count();
  std::vector<int> row_count(n, 0), col_count(n, 0);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    ++a[g.src_index(e)][g.tgt_index(e)];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] > 1) return true;
      row_count[i] += a[i][j];
      col_count[j] += a[i][j];
    }
  for (std::size_t i = 0; i < n; ++i)
    if (row_count[i] != 1 || col_count[i] != 1) return true;
  return false;
}

Condensation condensation(const DirectedGraph& g) {
  auto reach = reachability(g);
  const std::size_t n = g.vertex_count();
  const std::size_t none = n;
  std::vector<std::size_t> comp(n, none);
  Condensation c;
  // Vertices are scanned in order, so components come out ordered by their
  // first vertex and each component is already sorted.
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] != none) continue;
    const std::size_t id = c.components.size();
    c.components.emplace_back();
    for (std::size_t w = v; w < n; ++w) {
      if (w == v || (reach[v][w] && reach[w][v])) {
        comp[w] = id;
        c.components.back().push_back(g.vertices()[w]);
      }
    }
  }
  c.component_of = comp;

  std::vector<std::string> qv;
  for (std::size_t i = 0; i < c.components.size(); ++i) qv.push_back("X" + std::to_string(i));
  std::set<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    links.insert({comp[g.src_index(e)], comp[g.tgt_index(e)]});
  for (std::size_t b = 0; b < g.bundles().size(); ++b)
    links.insert({comp[g.bundle_src_index(b)], comp[g.bundle_tgt_index(b)]});
  std::vector<Edge> qe;
  for (auto [a, b] : links) {
    if (a == b) continue;
    qe.push_back({qv[a] + "->" + qv[b], qv[a], qv[b]});
  }
  c.quotient_graph = DirectedGraph(std::move(qv), std::move(qe));
  return c;
}

std::vector<std::vector<std::string>> cohereditary_irreducible_subsets(
    const DirectedGraph& g) {
  auto c = condensation(g);
  std::vector<std::vector<std::string>> out;
  const auto& q = c.quotient_graph;
  for (std::size_t i = 0; i < c.components.size(); ++i)
    if (q.in_edges(i).empty()) out.push_back(c.components[i]);
  return out;
}

DirectedGraph plus_construction(const DirectedGraph& g) {
  g.require_well_formed();
  const std::size_t n = g.vertex_count();
  std::vector<bool> inf(n, false);
  bool any = false;
  for (std::size_t v = 0; v < n; ++v) {
    // A receiver that already has its v+ was augmented by an earlier pass.
    inf[v] = !g.in_bundles(v).empty() && !g.find_vertex(g.vertices()[v] + "+");
    any = any || inf[v];
  }
  if (!any) return g;

  auto vertices = g.vertices();
  auto edges = g.edges();
  auto bundles = g.bundles();
  for (std::size_t v = 0; v < n; ++v)
    if (inf[v]) vertices.push_back(g.vertices()[v] + "+");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!inf[g.src_index(e)]) continue;
    const auto& orig = g.edges()[e];
    edges.push_back({orig.id + "+", orig.src + "+", orig.tgt});
  }
  for (std::size_t b = 0; b < g.bundles().size(); ++b) {
    if (!inf[g.bundle_src_index(b)]) continue;
    const auto& orig = g.bundles()[b];
    bundles.push_back({orig.src + "+", orig.tgt});
  }
  return DirectedGraph(std::move(vertices), std::move(edges), std::move(bundles));
}

IntMatrix adjacency_matrix(const DirectedGraph& g,
                           const std::vector<std::string>& ordering) {
  g.require_finite("adjacency_matrix");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> pos(n);
  if (ordering.empty()) {
    for (std::size_t i = 0; i < n; ++i) pos[i] = i;
  } else {
    if (ordering.size() != n)
      throw Error(ErrorKind::InvalidArgument, "ordering must list every vertex once");
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = g.vertex_index(ordering[i]);
      if (hit[v]) throw Error(ErrorKind::InvalidArgument, "ordering repeats " + ordering[i]);
      hit[v] = true;
      pos[v] = i;
    }
  }
  IntMatrix a(n, n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) a(pos[g.src_index(e)], pos[g.tgt_index(e)]) += 1;
  return a;
}

}  // namespace flowcat
