#include <doctest.h>

#include <functional>
#include <random>

#include "flowcat/category.hpp"
#include "flowcat/error.hpp"

using namespace flowcat;

namespace {

// Every family of up to `max_len` objects.
void for_each_family(int objects, int max_len, const std::function<void(std::vector<int>)>& f) {
  std::vector<int> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty()) f(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int x = 0; x < objects; ++x) {
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

// All cones (f_i : X_i -> y) over the family.
void for_each_cone(const FiniteCategory& cat, const std::vector<int>& fam, int y,
                   const std::function<void(const std::vector<Morphism>&)>& f) {
  std::vector<std::vector<Morphism>> homs;
  for (int x : fam) homs.push_back(cat.hom(x, y));
  std::vector<Morphism> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == fam.size()) {
      f(cur);
      return;
    }
    for (const auto& h : homs[k]) {
      cur.push_back(h);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

void audit_universal_property(const FiniteCategory& cat, int max_len) {
  for_each_family(cat.object_count(), max_len, [&](std::vector<int> fam) {
    auto c = cat.coproduct(fam);
    if (!c) return;
    REQUIRE(c->injections.size() == fam.size());
    for (int y = 0; y < cat.object_count(); ++y)
      for_each_cone(cat, fam, y, [&](const std::vector<Morphism>& cone) {
        int mediating = 0;
        for (const auto& h : cat.hom(c->apex, y)) {
          bool ok = true;
          for (std::size_t i = 0; i < fam.size(); ++i)
            ok = ok && cat.compose(h, c->injections[i]) == cone[i];
          mediating += ok;
        }
        CHECK(mediating == 1);
        auto h = cat.cotuple(*c, cone, y);
        for (std::size_t i = 0; i < fam.size(); ++i)
          CHECK(cat.compose(h, c->injections[i]) == cone[i]);
      });
  });
}

PosetCategory random_poset(std::mt19937_64& rng, int n) {
  // Random DAG on 0..n-1 (edges upward), then transitive closure.
  std::bernoulli_distribution coin(0.4);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    leq[i][i] = true;
    for (int j = i + 1; j < n; ++j) leq[i][j] = coin(rng);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return {"poset:random", names, leq};
}

void audit_category_laws(const FiniteCategory& cat) {
  const int n = cat.object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& f : cat.hom(a, b)) {
        CHECK(cat.is_valid(f));
        CHECK(cat.compose(cat.identity(b), f) == f);
        CHECK(cat.compose(f, cat.identity(a)) == f);
      }
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> obj(0, n - 1);
  for (int trial = 0; trial < 200; ++trial) {
    int a = obj(rng), b = obj(rng), c = obj(rng), d = obj(rng);
    auto f = cat.hom(a, b), g = cat.hom(b, c), h = cat.hom(c, d);
    if (f.empty() || g.empty() || h.empty()) continue;
    auto pick = [&](const std::vector<Morphism>& xs) {
      return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
    };
    auto ff = pick(f), gg = pick(g), hh = pick(h);
    CHECK(cat.compose(hh, cat.compose(gg, ff)) == cat.compose(cat.compose(hh, gg), ff));
  }
}

}  // namespace

TEST_CASE("finset coproducts satisfy the universal property") {
  for (int m = 0; m <= 4; ++m) audit_universal_property(FinSetSkeleton(m), 3);
  CHECK_FALSE(FinSetSkeleton(4).coproduct({3, 2}));
  CHECK(FinSetSkeleton(4).coproduct({1, 3})->apex == 4);
}

TEST_CASE("poset coproducts satisfy the universal property") {
  audit_universal_property(PosetCategory::chain(3), 3);
  audit_universal_property(PosetCategory::diamond(), 3);
  audit_universal_property(PosetCategory::vee(), 3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial)
    audit_universal_property(random_poset(rng, 1 + trial % 5), 3);
  CHECK_FALSE(PosetCategory::vee().coproduct({}));
  CHECK(PosetCategory::diamond().coproduct({1, 2})->apex == 3);
}

TEST_CASE("matrix coproducts satisfy the universal property") {
  audit_universal_property(MatCategory(2, 2), 2);
  CHECK_FALSE(MatCategory(2, 3).coproduct({2, 2}));
}

TEST_CASE("category laws") {
  audit_category_laws(PosetCategory::diamond());
  audit_category_laws(FinSetSkeleton(3));
  audit_category_laws(MatCategory(2, 2));
  audit_category_laws(MatCategory(3, 1));
}

TEST_CASE("isomorphisms") {
  FinSetSkeleton fs(4);
  CHECK(fs.isos(3, 3).size() == 6);
  CHECK(fs.isos(2, 3).empty());
  MatCategory m(2, 3);
  CHECK(m.isos(2, 2).size() == 6);
  CHECK(m.isos(3, 3).size() == 168);
  CHECK(MatCategory(3, 2).isos(2, 2).size() == 48);
  for (const auto& f : m.isos(2, 2)) CHECK(m.compose(*m.inverse(f), f) == m.identity(2));
  CHECK(fs.perturb(fs.identity(2)).has_value());
  CHECK_FALSE(fs.perturb(fs.identity(1)).has_value());
  CHECK(m.perturb(m.identity(1)) == Morphism{1, 1, {0}});
}

TEST_CASE("hom-set caps") {
  CHECK_THROWS_AS(MatCategory(3, 4).hom(4, 4, 1000), Error);
  CHECK(FinSetSkeleton(3).hom(3, 0).empty());
  CHECK(FinSetSkeleton(3).hom(0, 0).size() == 1);
}

TEST_CASE("category spec strings") {
  CHECK(parse_category("poset:chain2")->object_count() == 2);
  CHECK(parse_category("poset:chain3")->spec() == "poset:chain3");
  CHECK(parse_category("poset:diamond")->object_count() == 4);
  CHECK(parse_category("finset:4")->object_count() == 5);
  CHECK(parse_category("mat:2:3")->spec() == "mat:2:3");
  CHECK_THROWS_AS(parse_category("mat:4:3"), Error);
  CHECK_THROWS_AS(parse_category("bogus"), Error);
  CHECK_THROWS_AS(parse_category("poset:/nonexistent.json"), Error);
  auto p = poset_from_json_text("poset:x", R"({"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]})");
  CHECK(p.leq(0, 2));
  CHECK(p.has_finite_suprema());
  CHECK_THROWS_AS(
      poset_from_json_text("poset:x", R"({"elements":["a","b"],"leq":[["a","b"],["b","a"]]})"),
      Error);
}
