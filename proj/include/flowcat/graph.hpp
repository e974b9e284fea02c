#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flowcat/error.hpp"

namespace flowcat {

class IntMatrix;

struct Edge {
  std::string id;
  std::string src;
  std::string tgt;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Countably many parallel edges src -> tgt, kept as a single marker.
struct Bundle {
  std::string src;
  std::string tgt;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

/// Finite directed multigraph with named edges and optional infinite bundles.
///
/// A DirectedGraph is an immutable value. It may be constructed from
/// inconsistent data (dangling endpoints, duplicate ids); `validate` reports
/// those problems and every other operation rejects such graphs with an Error.
/// Vertex order is the order of construction and is the canonical order used
/// by enumeration, adjacency matrices and serialisation.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges,
                std::vector<Bundle> bundles = {});

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_bundles() const { return !bundles_.empty(); }

  std::optional<std::size_t> find_vertex(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;
  /// Throws UnknownVertex / UnknownEdge.
  std::size_t vertex_index(const std::string& name) const;
  std::size_t edge_index(const std::string& id) const;

  // Index-based structure. Only meaningful for well-formed graphs; entries
  // referring to unknown vertices are dropped.
  std::size_t src_index(std::size_t edge) const { return edge_src_[edge]; }
  std::size_t tgt_index(std::size_t edge) const { return edge_tgt_[edge]; }
  /// Edge indices e with t(e) = v, in edge order.
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  /// Bundle indices targeting / leaving v.
  const std::vector<std::size_t>& in_bundles(std::size_t v) const { return in_b_[v]; }
  const std::vector<std::size_t>& out_bundles(std::size_t v) const { return out_b_[v]; }
  std::size_t bundle_src_index(std::size_t b) const { return bundle_src_[b]; }
  std::size_t bundle_tgt_index(std::size_t b) const { return bundle_tgt_[b]; }

  bool is_well_formed() const { return well_formed_; }
  /// Throws InvalidArgument listing the first violation.
  void require_well_formed() const;
  /// Throws Unsupported when infinite bundles are present.
  void require_finite(const char* operation) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.bundles_ == b.bundles_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Bundle> bundles_;

  std::unordered_map<std::string, std::size_t> vertex_pos_;
  std::unordered_map<std::string, std::size_t> edge_pos_;
  std::vector<std::size_t> edge_src_, edge_tgt_;
  std::vector<std::size_t> bundle_src_, bundle_tgt_;
  std::vector<std::vector<std::size_t>> in_, out_, in_b_, out_b_;
  bool well_formed_ = false;
};

struct VertexClass {
  bool is_source = false;
  bool is_sink = false;
  bool is_infinite_receiver = false;

  friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

struct Condensation {
  /// Strongly connected components, each sorted by vertex order; components
  /// are ordered by their first vertex.
  std::vector<std::vector<std::string>> components;
  /// For each vertex (by index), the index of its component.
  std::vector<std::size_t> component_of;
  /// One vertex "X<i>" per component, one edge "X<i>->X<j>" per linked pair.
  DirectedGraph quotient_graph;
};

std::vector<std::string> validate(const DirectedGraph& g);

VertexClass classify_vertex(const DirectedGraph& g, const std::string& v);
VertexClass classify_vertex(const DirectedGraph& g, std::size_t v);

bool is_irreducible(const DirectedGraph& g);
/// Adjacency matrix is not a permutation matrix. Rejects bundles.
bool is_nontrivial(const DirectedGraph& g);

Condensation condensation(const DirectedGraph& g);
std::vector<std::vector<std::string>> cohereditary_irreducible_subsets(
    const DirectedGraph& g);

/// Adds v+ for every infinite receiver v and e+ : s(e)+ -> t(e) for every
/// edge or bundle leaving an infinite receiver. Receivers that already have a
/// vertex named v+ are left alone, so a second application changes nothing.
DirectedGraph plus_construction(const DirectedGraph& g);

/// A[i][j] = number of edges from ordering[i] to ordering[j]. An empty
/// ordering means vertex order. Rejects bundles.
IntMatrix adjacency_matrix(const DirectedGraph& g,
                           const std::vector<std::string>& ordering = {});
/// Nonempty directed path from v to w (edges and bundles both count).
bool path_exists(const DirectedGraph& g, const std::string& v,
                 const std::string& w);
bool is_acyclic(const DirectedGraph& g);

/// reach[v][w] == nonempty path v -> w, by vertex index.
std::vector<std::vector<bool>> reachability(const DirectedGraph& g);

}  // namespace flowcat
