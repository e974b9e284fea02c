#include <doctest.h>

#include <memory>
#include <random>

#include "fixtures.hpp"
#include "flowcat/error.hpp"
#include "flowcat/lpa.hpp"
#include "random_specs.hpp"

using namespace flowcat;

namespace {

GraphPtr share(DirectedGraph g) { return std::make_shared<DirectedGraph>(std::move(g)); }

bool all_pass(const std::vector<RelationCheck>& r) {
  for (const auto& c : r)
    if (!c.pass) return false;
  return true;
}

// Matrix with ones at the listed positions.
FqMatrix ones_at(int q, std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> at) {
  FqMatrix m(q, n, n);
  for (auto [i, j] : at) m.set(i, j, 1);
  return m;
}

}  // namespace

TEST_CASE("one loop, one dimension") {
  MatCategory c(2, 1);
  Diagram d{share(fixtures::loop1()), {1}, {c.identity(1)}};
  auto ops = build_module_operators(c, d);
  CHECK(ops.total_dim == 1);
  FqMatrix one = FqMatrix::identity(2, 1);
  CHECK(ops.P[0] == one);
  CHECK(ops.A[0] == one);
  CHECK(ops.A_star[0] == one);
  CHECK(all_pass(check_leavitt_relations(ops)));
  CHECK(check_unital_action(ops));

  auto bad = ops;
  bad.A_star[0] = FqMatrix(2, 1, 1);
  auto r = check_leavitt_relations(bad);
  CHECK(r[0].pass);
  CHECK(r[1].pass);
  CHECK(r[2].pass);
  CHECK_FALSE(r[3].pass);
  CHECK_FALSE(r[4].pass);

  auto missing = ops;
  missing.P[0] = FqMatrix(2, 1, 1);
  CHECK_FALSE(check_unital_action(missing));
}

TEST_CASE("two sources into one vertex, written out by hand") {
  MatCategory c(2, 3);
  auto g = share(fixtures::acyclic2());
  auto cp = *c.coproduct({1, 2});
  Diagram d{g, {1, 2, 3}, {cp.injections[0], cp.injections[1]}};
  auto ops = build_module_operators(c, d);
  REQUIRE(ops.total_dim == 6);
  // Blocks: a = {0}, b = {1, 2}, c = {3, 4, 5}.
  CHECK(ops.P[0] == ones_at(2, 6, {{0, 0}}));
  CHECK(ops.P[1] == ones_at(2, 6, {{1, 1}, {2, 2}}));
  CHECK(ops.P[2] == ones_at(2, 6, {{3, 3}, {4, 4}, {5, 5}}));
  CHECK(ops.A[0] == ones_at(2, 6, {{3, 0}}));
  CHECK(ops.A[1] == ones_at(2, 6, {{4, 1}, {5, 2}}));
  CHECK(ops.A_star[0] == ones_at(2, 6, {{0, 3}}));
  CHECK(ops.A_star[1] == ones_at(2, 6, {{1, 4}, {2, 5}}));
  CHECK(ops.A_star[0] * ops.A[1] == FqMatrix(2, 6, 6));
  CHECK(ops.A[0] * ops.A_star[0] + ops.A[1] * ops.A_star[1] == ops.P[2]);

  auto r = check_leavitt_relations(ops);
  CHECK(all_pass(r));
  CHECK(r[4].checked == 1);
  CHECK(check_unital_action(ops));
}

TEST_CASE("only the zero diagram exists on vw") {
  for (int q : {2, 3, 5, 7}) {
    MatCategory c(q, 3);
    auto g = share(fixtures::vw());
    auto all = enumerate_diagrams(c, g);
    REQUIRE(all.size() == 1);
    auto ops = build_module_operators(c, all[0]);
    CHECK(ops.total_dim == 0);
    CHECK(all_pass(check_leavitt_relations(ops)));
    CHECK(check_unital_action(ops));
  }
}

TEST_CASE("diagrams failing the coproduct condition are rejected") {
  MatCategory c(2, 2);
  Diagram d{share(fixtures::loop1()), {1}, {Morphism{1, 1, {0}}}};
  CHECK_THROWS_AS(build_module_operators(c, d), Error);
  CHECK_THROWS_AS(build_module_operators(c, Diagram{share(fixtures::h_graph()), {0, 0}, {}}),
                  Error);
}

TEST_CASE("relations hold for random diagrams over F2 and F3") {
  std::mt19937_64 rng(23);
  int tested = 0, nonzero = 0;
  for (int q : {2, 3}) {
    MatCategory c(q, 3);
    for (int trial = 0; trial < 150; ++trial) {
      int n = fixtures::pick(rng, 1, 5);
      auto g = share(fixtures::random_graph(rng, n, 2, 0.35));
      auto dims = solve_dimension_vectors(*g, 3);
      std::uniform_int_distribution<std::size_t> u(0, dims.size() - 1);
      Diagram d = random_diagram(c, g, dims[u(rng)], rng);
      auto ops = build_module_operators(c, d);
      auto r = check_leavitt_relations(ops);
      for (const auto& rc : r) {
        CAPTURE(rc.relation);
        CHECK(rc.pass);
      }
      CHECK(check_unital_action(ops));
      // Distinct edges into the same vertex are orthogonal.
      for (std::size_t e = 0; e < g->edge_count(); ++e)
        for (std::size_t f = 0; f < g->edge_count(); ++f)
          if (e != f && g->tgt_index(e) == g->tgt_index(f))
            CHECK((ops.A_star[e] * ops.A[f]).is_zero());
      ++tested;
      nonzero += ops.total_dim > 0;
    }
  }
  CHECK(tested == 300);
  CHECK(nonzero > 100);
}

TEST_CASE("diagram morphisms commute with the generators") {
  std::mt19937_64 rng(31);
  int checked = 0, caught = 0;
  for (int q : {2, 3}) {
    MatCategory c(q, 2);
    for (int trial = 0; trial < 80; ++trial) {
      auto g = share(fixtures::random_graph(rng, fixtures::pick(rng, 1, 4), 2, 0.35));
      auto dims = solve_dimension_vectors(*g, 2);
      std::uniform_int_distribution<std::size_t> u(0, dims.size() - 1);
      Diagram d = random_diagram(c, g, dims[u(rng)], rng);
      Diagram e = random_diagram(c, g, dims[u(rng)], rng);
      auto t = random_diagram_morphism(c, d, e, rng);
      if (!t) continue;
      auto od = build_module_operators(c, d);
      auto oe = build_module_operators(c, e);
      CHECK(noncommuting_generators(c, od, oe, *t).empty());
      ++checked;
      // A vertexwise family that is not natural must be caught somewhere.
      DiagramMorphism junk = *t;
      for (std::size_t v = 0; v < junk.components.size(); ++v)
        if (auto p = c.perturb(junk.components[v])) {
          junk.components[v] = *p;
          if (!check_diagram_morphism(c, d, e, junk)) {
            CHECK_FALSE(noncommuting_generators(c, od, oe, junk).empty());
            ++caught;
          }
          break;
        }
    }
  }
  CHECK(checked > 100);
  CHECK(caught > 0);
}
