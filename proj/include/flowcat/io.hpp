#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "flowcat/casework.hpp"
#include "flowcat/equivalence.hpp"
#include "flowcat/functors.hpp"
#include "flowcat/invariants.hpp"
#include "flowcat/lpa.hpp"
#include "flowcat/moves.hpp"

namespace flowcat {

using Json = nlohmann::json;

// All parse failures throw Error(ErrorKind::Parse) with the JSON path.

/// With `check`, structural problems (dangling endpoints, duplicate ids) are
/// parse errors too.
DirectedGraph graph_from_json(const Json& j, bool check = true);
Json parse_json(const std::string& text, const std::string& what);
DirectedGraph graph_from_text(const std::string& text);
DirectedGraph load_graph(const std::string& path);
Json graph_to_json(const DirectedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct MoveSpec {
  std::string move;  // remove_sink, out_delay, in_delay, out_split, in_split, add_heads, add_tails
  std::string vertex;
  std::size_t depth = 0;
  OutDelaySpec out_delay;
  InDelaySpec in_delay;
  SplitSpec split;
};

/// The graph is needed to tell vertex keys from edge keys in a combined
/// "d" or "p" map.
MoveSpec move_spec_from_json(const Json& j, const DirectedGraph& g);
MoveSpec load_move_spec(const std::string& path, const DirectedGraph& g);

struct MoveResult {
  DirectedGraph graph;
  bool approximation = false;  // truncated heads or tails
};
MoveResult apply_move(const DirectedGraph& g, const MoveSpec& spec);
/// Heads and tails have no functor pair (their graphs are infinite).
FunctorPairPtr make_functor_pair(CategoryPtr cat, GraphPtr g, const MoveSpec& spec);

/// {"dims": {vertex: n}, "maps": {edge: [[row], ...]}} with entries mod q.
/// Edge maps default to zero when the source or target has dimension 0.
Diagram diagram_from_json(const Json& j, const MatCategory& cat, GraphPtr g);
Json diagram_to_json(const FiniteCategory& cat, const Diagram& d);

Json invariants_json(const DirectedGraph& g);
Json franks_json(const FranksVerdict& v);
Json report_json(const EquivalenceReport& r);
Json case_json(const CaseReport& r);
std::string case_text(const CaseReport& r);
Json relations_json(const std::vector<RelationCheck>& rel, bool unital);

/// Canonical dump: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

/// Graphviz text; infinite bundles are drawn as a single edge labelled "∞".
std::string to_dot(const DirectedGraph& g);

}  // namespace flowcat
