#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "flowcat/graph.hpp"

namespace flowcat {

// Canonical names for derived vertices and edges.
std::string pair_name(const std::string& x, std::size_t n);          // "(x,n)"
std::string chain_edge_name(const std::string& v, std::size_t n);    // "e_{v,n}"

/// Finite out-delay data: a value for every vertex and every edge, with
/// d(e) <= d(s(e)).
struct OutDelaySpec {
  std::map<std::string, std::size_t> d_vertices;
  std::map<std::string, std::size_t> d_edges;
};

/// In-delay data. Vertex values are derived: d(v) = max over incoming edges,
/// 0 at sources.
struct InDelaySpec {
  std::map<std::string, std::size_t> d_edges;
};

struct SplitSpec {
  std::map<std::string, std::size_t> p_vertices;
  std::map<std::string, std::size_t> p_edges;
};
using OutSplitSpec = SplitSpec;
using InSplitSpec = SplitSpec;

/// Result of the head/tail constructions, which are infinite in general and
/// truncated here at a fixed depth.
struct TruncatedGraph {
  DirectedGraph graph;
  std::size_t depth = 0;
  bool approximation = false;  // false when nothing was added
};

DirectedGraph remove_sink(const DirectedGraph& g, const std::string& w);
DirectedGraph out_delay(const DirectedGraph& g, const OutDelaySpec& spec);
DirectedGraph in_delay(const DirectedGraph& g, const InDelaySpec& spec);
DirectedGraph out_split(const DirectedGraph& g, const OutSplitSpec& spec);
DirectedGraph in_split(const DirectedGraph& g, const InSplitSpec& spec);
TruncatedGraph add_heads_truncated(const DirectedGraph& g, std::size_t depth);
TruncatedGraph add_tails_truncated(const DirectedGraph& g, std::size_t depth);

// Spec validation (throws InvalidArgument with a readable message).
void check_out_delay_spec(const DirectedGraph& g, const OutDelaySpec& spec);
void check_in_delay_spec(const DirectedGraph& g, const InDelaySpec& spec);
void check_out_split_spec(const DirectedGraph& g, const OutSplitSpec& spec);
void check_in_split_spec(const DirectedGraph& g, const InSplitSpec& spec);

/// d(v) = max{d(e) : t(e) = v}, 0 at sources; indexed by vertex.
std::vector<std::size_t> in_delay_vertex_values(const DirectedGraph& g,
                                                const InDelaySpec& spec);

}  // namespace flowcat
