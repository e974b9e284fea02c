#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "fixtures.hpp"
#include "flowcat/int_matrix.hpp"
#include "flowcat/moves.hpp"
#include "random_specs.hpp"

using namespace flowcat;

namespace {

using EdgeSet = std::set<std::tuple<std::string, std::string, std::string>>;

std::set<std::string> vertex_set(const DirectedGraph& g) {
  return {g.vertices().begin(), g.vertices().end()};
}

EdgeSet edge_set(const DirectedGraph& g) {
  EdgeSet out;
  for (const auto& e : g.edges()) out.insert({e.id, e.src, e.tgt});
  return out;
}

// Renames v -> (v,0) and e -> e or (e,0).
DirectedGraph zero_renamed(const DirectedGraph& g, bool pair_edges) {
  std::vector<std::string> vs;
  for (const auto& v : g.vertices()) vs.push_back(pair_name(v, 0));
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    es.push_back({pair_edges ? pair_name(e.id, 0) : e.id, pair_name(e.src, 0), pair_name(e.tgt, 0)});
  return DirectedGraph(vs, es);
}

}  // namespace

TEST_CASE("remove_sink") {
  auto r = remove_sink(fixtures::acyclic2(), "c");
  CHECK(vertex_set(r) == std::set<std::string>{"a", "b"});
  CHECK(r.edge_count() == 0);
  CHECK_THROWS_AS(remove_sink(fixtures::vw(), "w"), Error);
  DirectedGraph chain({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}});
  auto rc = remove_sink(chain, "c");
  CHECK(edge_set(rc) == EdgeSet{{"x", "a", "b"}});
  CHECK_THROWS_AS(remove_sink(DirectedGraph({"a", "b"}, {}), "a"), Error);
  CHECK_THROWS_AS(remove_sink(chain, "zz"), Error);
}

TEST_CASE("out_delay") {
  OutDelaySpec s{{{"v", 1}, {"w", 0}}, {{"e", 1}, {"f", 0}, {"g", 0}}};
  auto h = out_delay(fixtures::vw(), s);
  CHECK(vertex_set(h) == std::set<std::string>{"(v,0)", "(v,1)", "(w,0)"});
  CHECK(edge_set(h) == EdgeSet{{"e", "(v,1)", "(w,0)"},
                               {"f", "(w,0)", "(v,0)"},
                               {"g", "(w,0)", "(w,0)"},
                               {"e_{v,1}", "(v,0)", "(v,1)"}});
  OutDelaySpec bad{{{"v", 0}, {"w", 0}}, {{"e", 1}, {"f", 0}, {"g", 0}}};
  CHECK_THROWS_AS(out_delay(fixtures::vw(), bad), Error);
  OutDelaySpec missing{{{"v", 0}}, {{"e", 0}, {"f", 0}, {"g", 0}}};
  CHECK_THROWS_AS(out_delay(fixtures::vw(), missing), Error);
  OutDelaySpec zero{{{"v", 0}, {"w", 0}}, {{"e", 0}, {"f", 0}, {"g", 0}}};
  CHECK(out_delay(fixtures::vw(), zero) == zero_renamed(fixtures::vw(), false));
  CHECK_THROWS_AS(out_delay(fixtures::h_graph(), OutDelaySpec{}), Error);
}

TEST_CASE("in_delay on vw gives the expected graph") {
  InDelaySpec s{{{"e", 1}, {"f", 0}, {"g", 2}}};
  auto h = in_delay(fixtures::vw(), s);
  CHECK(vertex_set(h) == std::set<std::string>{"(v,0)", "(w,0)", "(w,1)", "(w,2)"});
  CHECK(edge_set(h) == EdgeSet{{"e", "(v,0)", "(w,1)"},
                               {"f", "(w,0)", "(v,0)"},
                               {"g", "(w,0)", "(w,2)"},
                               {"e_{w,1}", "(w,1)", "(w,0)"},
                               {"e_{w,2}", "(w,2)", "(w,1)"}});
  InDelaySpec zero{{{"e", 0}, {"f", 0}, {"g", 0}}};
  CHECK(in_delay(fixtures::vw(), zero) == zero_renamed(fixtures::vw(), false));
  CHECK_THROWS_AS(in_delay(fixtures::h_graph(), InDelaySpec{}), Error);
}

TEST_CASE("out_split on vw gives the expected graph") {
  SplitSpec s{{{"v", 0}, {"w", 1}}, {{"e", 0}, {"f", 1}, {"g", 0}}};
  auto h = out_split(fixtures::vw(), s);
  CHECK(vertex_set(h) == std::set<std::string>{"(v,0)", "(w,0)", "(w,1)"});
  CHECK(edge_set(h) == EdgeSet{{"(e,0)", "(v,0)", "(w,0)"},
                               {"(e,1)", "(v,0)", "(w,1)"},
                               {"(f,0)", "(w,1)", "(v,0)"},
                               {"(g,0)", "(w,0)", "(w,0)"},
                               {"(g,1)", "(w,0)", "(w,1)"}});
  SplitSpec zero{{{"v", 0}, {"w", 0}}, {{"e", 0}, {"f", 0}, {"g", 0}}};
  CHECK(out_split(fixtures::vw(), zero) == zero_renamed(fixtures::vw(), true));

  SplitSpec l{{{"u", 1}}, {{"l1", 0}, {"l2", 1}}};
  auto two = out_split(fixtures::loop2(), l);
  CHECK(two.vertex_count() == 2);
  CHECK(two.edge_count() == 4);
  CHECK(adjacency_matrix(two) == IntMatrix{{1, 1}, {1, 1}});

  SplitSpec source_split{{{"a", 1}, {"b", 0}, {"c", 0}}, {{"e", 0}, {"f", 0}}};
  CHECK_THROWS_AS(out_split(fixtures::acyclic2(), source_split), Error);
  SplitSpec over{{{"v", 0}, {"w", 0}}, {{"e", 1}, {"f", 0}, {"g", 0}}};
  CHECK_THROWS_AS(out_split(fixtures::vw(), over), Error);
}

TEST_CASE("in_split on vw gives the expected graph") {
  SplitSpec s{{{"v", 0}, {"w", 1}}, {{"e", 1}, {"f", 0}, {"g", 0}}};
  auto h = in_split(fixtures::vw(), s);
  CHECK(vertex_set(h) == std::set<std::string>{"(v,0)", "(w,0)", "(w,1)"});
  CHECK(edge_set(h) == EdgeSet{{"(e,0)", "(v,0)", "(w,1)"},
                               {"(f,0)", "(w,0)", "(v,0)"},
                               {"(f,1)", "(w,1)", "(v,0)"},
                               {"(g,0)", "(w,0)", "(w,0)"},
                               {"(g,1)", "(w,1)", "(w,0)"}});
  SplitSpec zero{{{"v", 0}, {"w", 0}}, {{"e", 0}, {"f", 0}, {"g", 0}}};
  CHECK(in_split(fixtures::vw(), zero) == zero_renamed(fixtures::vw(), true));

  SplitSpec miss{{{"v", 0}, {"w", 1}}, {{"e", 1}, {"f", 0}, {"g", 1}}};
  try {
    in_split(fixtures::vw(), miss);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("miss 0") != std::string::npos);
  }
  CHECK_THROWS_AS(in_split(fixtures::h_graph(), SplitSpec{}), Error);
}

TEST_CASE("heads and tails") {
  auto none = add_heads_truncated(fixtures::vw(), 3);
  CHECK(none.graph == fixtures::vw());
  CHECK_FALSE(none.approximation);

  auto heads = add_heads_truncated(fixtures::single_edge(), 2);
  CHECK(heads.approximation);
  CHECK(vertex_set(heads.graph) == std::set<std::string>{"v", "w", "(v,1)", "(v,2)"});
  CHECK(edge_set(heads.graph) == EdgeSet{{"e", "v", "w"},
                                         {"e_{v,1}", "(v,1)", "v"},
                                         {"e_{v,2}", "(v,2)", "(v,1)"}});

  auto tails = add_tails_truncated(DirectedGraph({"s"}, {}), 1);
  CHECK(tails.graph.vertex_count() == 2);
  CHECK(edge_set(tails.graph) == EdgeSet{{"e_{s,1}", "s", "(s,1)"}});
  CHECK_THROWS_AS(add_heads_truncated(fixtures::vw(), 0), Error);
}

TEST_CASE("move sizes match closed forms") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = fixtures::random_graph(rng, 1 + trial % 8, 2, 0.3);
    auto od = fixtures::random_out_delay(rng, g);
    auto h = out_delay(g, od);
    std::size_t nv = 0;
    for (const auto& [v, d] : od.d_vertices) nv += d + 1;
    CHECK(h.vertex_count() == nv);
    CHECK(validate(h).empty());

    auto os = fixtures::random_out_split(rng, g);
    auto hs = out_split(g, os);
    std::size_t ne = 0;
    for (const auto& e : g.edges()) ne += os.p_vertices[e.tgt] + 1;
    CHECK(hs.edge_count() == ne);
    CHECK(validate(hs).empty());

    auto is = fixtures::random_in_split(rng, g);
    auto hi = in_split(g, is);
    ne = 0;
    for (const auto& e : g.edges()) ne += is.p_vertices[e.src] + 1;
    CHECK(hi.edge_count() == ne);
    CHECK(validate(hi).empty());

    auto id = fixtures::random_in_delay(rng, g);
    auto hd = in_delay(g, id);
    auto dv = in_delay_vertex_values(g, id);
    nv = 0;
    for (auto d : dv) nv += d + 1;
    CHECK(hd.vertex_count() == nv);
    CHECK(validate(hd).empty());
  }
}
