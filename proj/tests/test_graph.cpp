#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "flowcat/int_matrix.hpp"

using namespace flowcat;

namespace {

// Transitive closure by repeated squaring of a boolean matrix; independent of
// the DFS used in the library.
std::vector<std::vector<bool>> closure_oracle(const DirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) r[*g.find_vertex(e.src)][*g.find_vertex(e.tgt)] = true;
  for (const auto& b : g.bundles()) r[*g.find_vertex(b.src)][*g.find_vertex(b.tgt)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

std::set<std::set<std::string>> as_sets(const std::vector<std::vector<std::string>>& xs) {
  std::set<std::set<std::string>> out;
  for (const auto& x : xs) out.insert(std::set<std::string>(x.begin(), x.end()));
  return out;
}

std::set<std::set<std::string>> brute_cohereditary_irreducible(const DirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  auto reach = closure_oracle(g);
  std::set<std::set<std::string>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (i != j && (mask >> i & 1) && (mask >> j & 1) && !reach[i][j]) ok = false;
    auto in = [&](const std::string& v) { return mask >> *g.find_vertex(v) & 1; };
    for (const auto& e : g.edges())
      if (in(e.tgt) && !in(e.src)) ok = false;
    for (const auto& b : g.bundles())
      if (in(b.tgt) && !in(b.src)) ok = false;
    if (!ok) continue;
    std::set<std::string> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(g.vertices()[i]);
    out.insert(s);
  }
  return out;
}

DirectedGraph random_with_bundles(std::mt19937_64& rng, int n) {
  auto g = fixtures::random_graph(rng, n, 2, 0.25);
  std::vector<Bundle> bs;
  std::bernoulli_distribution coin(0.1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(rng)) bs.push_back({g.vertices()[i], g.vertices()[j]});
  return DirectedGraph(g.vertices(), g.edges(), bs);
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(fixtures::loop1()).empty());
  DirectedGraph dangling({"u"}, {{"e", "x", "u"}});
  CHECK(validate(dangling) == std::vector<std::string>{"dangling endpoint x"});
  DirectedGraph dup({"u"}, {{"e", "u", "u"}, {"e", "u", "u"}});
  CHECK(validate(dup) == std::vector<std::string>{"duplicate id e"});
  CHECK_FALSE(validate(DirectedGraph({}, {})).empty());
  DirectedGraph dup_bundle({"a", "b"}, {}, {{"a", "b"}, {"a", "b"}});
  CHECK_FALSE(validate(dup_bundle).empty());
  CHECK_THROWS(is_irreducible(dangling));
}

TEST_CASE("classify_vertex") {
  CHECK(classify_vertex(fixtures::vw(), "v") == VertexClass{false, false, false});
  CHECK(classify_vertex(fixtures::edgeless(1), "p0") == VertexClass{true, true, false});
  CHECK(classify_vertex(fixtures::h_graph(), "hi") == VertexClass{false, true, true});
  CHECK(classify_vertex(fixtures::h_graph(), "lo") == VertexClass{true, false, false});
  CHECK_THROWS_AS(classify_vertex(fixtures::vw(), "zz"), Error);
}

TEST_CASE("irreducible and nontrivial") {
  CHECK(is_irreducible(fixtures::loop2()));
  CHECK(is_nontrivial(fixtures::loop2()));
  CHECK(is_irreducible(fixtures::loop1()));
  CHECK_FALSE(is_nontrivial(fixtures::loop1()));
  CHECK_FALSE(is_irreducible(fixtures::acyclic2()));
  CHECK(is_irreducible(fixtures::edgeless(1)));
  CHECK_THROWS(is_nontrivial(fixtures::h_graph()));
  DirectedGraph cycle3({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"z", "c", "a"}});
  CHECK(is_irreducible(cycle3));
  CHECK_FALSE(is_nontrivial(cycle3));
}

TEST_CASE("condensation") {
  auto c = condensation(fixtures::vw());
  CHECK(c.components.size() == 1);
  CHECK(c.quotient_graph.vertex_count() == 1);
  CHECK(c.quotient_graph.edge_count() == 0);

  auto a = condensation(fixtures::acyclic2());
  CHECK(a.components == std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}});
  CHECK(a.quotient_graph.edge_count() == 2);
  CHECK(condensation(fixtures::cuntz_h()).components.size() == 1);
}

TEST_CASE("condensation matches a closure oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_with_bundles(rng, 1 + trial % 7);
    auto reach = closure_oracle(g);
    auto c = condensation(g);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
      for (std::size_t j = 0; j < g.vertex_count(); ++j) {
        bool same = i == j || (reach[i][j] && reach[j][i]);
        CHECK((c.component_of[i] == c.component_of[j]) == same);
      }
    CHECK(is_acyclic(c.quotient_graph));
    std::size_t total = 0;
    for (const auto& comp : c.components) total += comp.size();
    CHECK(total == g.vertex_count());
  }
}

TEST_CASE("cohereditary irreducible subsets") {
  CHECK(as_sets(cohereditary_irreducible_subsets(fixtures::vw())) ==
        std::set<std::set<std::string>>{{"v", "w"}});
  CHECK(as_sets(cohereditary_irreducible_subsets(fixtures::acyclic2())) ==
        std::set<std::set<std::string>>{{"a"}, {"b"}});
  auto hp = plus_construction(fixtures::h_graph());
  CHECK(as_sets(cohereditary_irreducible_subsets(hp)) ==
        std::set<std::set<std::string>>{{"lo"}, {"hi+"}});
}

TEST_CASE("cohereditary irreducible subsets agree with brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = random_with_bundles(rng, 1 + trial % 7);
    CHECK(as_sets(cohereditary_irreducible_subsets(g)) == brute_cohereditary_irreducible(g));
  }
}

TEST_CASE("plus construction") {
  CHECK(plus_construction(fixtures::vw()) == fixtures::vw());
  auto hp = plus_construction(fixtures::h_graph());
  CHECK(hp.vertices() == std::vector<std::string>{"lo", "hi", "hi+"});
  CHECK(hp.edges().empty());
  CHECK(hp.bundles() == std::vector<Bundle>{{"lo", "hi"}});
  CHECK(classify_vertex(hp, "hi+").is_source);

  DirectedGraph g({"a", "b", "c"}, {{"e", "b", "c"}}, {{"a", "b"}});
  auto gp = plus_construction(g);
  CHECK(gp.find_vertex("b+"));
  CHECK(gp.find_edge("e+"));
  CHECK(gp.edges()[gp.edge_index("e+")] == Edge{"e+", "b+", "c"});

  DirectedGraph chained({"a", "b", "c"}, {}, {{"a", "b"}, {"b", "c"}});
  auto cp = plus_construction(chained);
  // The bundle leaving b is copied as a bundle from b+.
  CHECK(std::count(cp.bundles().begin(), cp.bundles().end(), Bundle{"b+", "c"}) == 1);
  CHECK(plus_construction(cp) == cp);
}

TEST_CASE("plus construction applied twice adds nothing new") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_with_bundles(rng, 1 + trial % 6);
    auto once = plus_construction(g);
    CHECK(validate(once).empty());
    for (const auto& v : once.vertices())
      if (!g.find_vertex(v)) CHECK(classify_vertex(once, v).is_source);
    CHECK(plus_construction(once) == once);
  }
}

TEST_CASE("adjacency and paths") {
  CHECK(adjacency_matrix(fixtures::loop2()) == IntMatrix{{2}});
  CHECK(adjacency_matrix(fixtures::vw(), {"v", "w"}) == IntMatrix{{0, 1}, {1, 1}});
  CHECK(adjacency_matrix(fixtures::cuntz_h(), {"v1", "v2", "v3"}) ==
        IntMatrix{{2, 1, 0}, {1, 1, 1}, {0, 1, 1}});
  CHECK_THROWS(adjacency_matrix(fixtures::h_graph()));
  CHECK(path_exists(fixtures::acyclic2(), "a", "c"));
  CHECK_FALSE(path_exists(fixtures::acyclic2(), "c", "a"));
  CHECK_FALSE(path_exists(fixtures::acyclic2(), "a", "a"));
  CHECK(is_acyclic(fixtures::acyclic2()));
  CHECK_FALSE(is_acyclic(fixtures::loop1()));
}

TEST_CASE("every vertex is a source or has incoming edges, not both") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_with_bundles(rng, 1 + trial % 6);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      bool incoming = !g.in_edges(v).empty() || !g.in_bundles(v).empty();
      CHECK(classify_vertex(g, v).is_source != incoming);
    }
  }
}
