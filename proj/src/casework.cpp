#include "flowcat/casework.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "flowcat/diagram.hpp"
#include "flowcat/error.hpp"
#include "flowcat/invariants.hpp"

namespace flowcat {
namespace {

std::string num(std::uint64_t x) { return std::to_string(x); }

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t count_sources(const DirectedGraph& g) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) n += classify_vertex(g, v).is_source;
  return n;
}

bool pointwise_leq(const PosetCategory& p, const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!p.leq(a[i], b[i])) return false;
  return true;
}

// Choices of sizes at the sources for which the sums forced downstream all
// fit in the category. Without a bound this would be |objects|^sources.
std::uint64_t fitting_source_sizes(const FiniteCategory& cat, const DirectedGraph& g) {
  const int max = cat.object_count() - 1;
  std::vector<std::size_t> sources, order;
  std::vector<std::size_t> indeg(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    indeg[v] = g.in_edges(v).size();
    if (!indeg[v]) sources.push_back(v);
  }
  // Kahn order; the graph is acyclic.
  std::vector<std::size_t> queue = sources;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    order.push_back(queue[i]);
    for (auto e : g.out_edges(queue[i]))
      if (--indeg[g.tgt_index(e)] == 0) queue.push_back(g.tgt_index(e));
  }
  std::uint64_t count = 0;
  std::vector<int> pick(sources.size(), 0);
  while (true) {
    std::vector<int> size(g.vertex_count(), 0);
    for (std::size_t i = 0; i < sources.size(); ++i) size[sources[i]] = pick[i];
    bool fits = true;
    for (auto v : order) {
      if (g.in_edges(v).empty()) continue;
      for (auto e : g.in_edges(v)) size[v] += size[g.src_index(e)];
      fits = fits && size[v] <= max;
    }
    count += fits;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] > max) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return count;
}

bool has_binary_suprema(const PosetCategory& p) {
  for (int x = 0; x < p.object_count(); ++x)
    for (int y = 0; y < p.object_count(); ++y)
      if (!p.supremum({x, y})) return false;
  return true;
}

std::uint64_t arrow_count(const PosetCategory& p) {
  std::uint64_t n = 0;
  for (int x = 0; x < p.object_count(); ++x)
    for (int y = 0; y < p.object_count(); ++y) n += p.leq(x, y);
  return n;
}

}  // namespace

bool CaseReport::all_match() const {
  return std::all_of(quantities.begin(), quantities.end(),
                     [](const CaseQuantity& q) { return q.matches(); });
}

CaseReport verify_acyclic_corollary(const FiniteCategory& cat, const DirectedGraph& g) {
  if (!is_acyclic(g)) throw Error(ErrorKind::InvalidArgument, "graph is not acyclic");
  CaseReport r;
  r.name = "acyclic";
  auto gp = std::make_shared<const DirectedGraph>(g);
  const std::size_t n = count_sources(g);
  auto all = enumerate_diagrams(cat, gp);
  r.quantities.push_back({"sources", num(n), "", "vertices without incoming edges"});
  if (cat.is_poset()) {
    r.quantities.push_back({"diagrams", num(all.size()),
                            num(ipow(static_cast<std::uint64_t>(cat.object_count()), n)),
                            "|objects|^sources"});
  } else {
    // Isomorphic diagrams share sizes, so classes are found within each size group.
    std::map<std::vector<int>, std::vector<const Diagram*>> reps;
    std::size_t classes = 0;
    for (const auto& d : all) {
      auto& rs = reps[d.obj];
      bool known = std::any_of(rs.begin(), rs.end(), [&](const Diagram* x) {
        return diagram_isomorphic(cat, *x, d).has_value();
      });
      if (!known) {
        rs.push_back(&d);
        ++classes;
      }
    }
    r.quantities.push_back({"diagrams", num(all.size()), "", "all diagrams, not up to iso"});
    r.quantities.push_back({"isomorphism classes", num(classes), num(fitting_source_sizes(cat, g)),
                            "source sizes whose forced sizes stay within the bound"});
  }
  r.verdict = r.all_match() ? "pass" : "fail";
  return r;
}

CaseReport verify_poset_corollary(const DirectedGraph& g, const PosetCategory& p) {
  if (!p.has_finite_suprema())
    throw Error(ErrorKind::InvalidArgument, p.spec() + " does not have finite suprema");
  CaseReport r;
  r.name = "poset";
  auto gp = std::make_shared<const DirectedGraph>(g);
  auto comps = cohereditary_irreducible_subsets(g);
  const std::size_t m = comps.size();
  auto all = enumerate_diagrams(p, gp);
  const std::uint64_t expected = ipow(static_cast<std::uint64_t>(p.object_count()), m);
  r.quantities.push_back({"m", num(m), "", "cohereditary irreducible subsets"});
  r.quantities.push_back({"diagrams", num(all.size()), num(expected), "|P|^m"});

  // Restriction to the first vertex of each source component.
  std::vector<std::size_t> reps;
  for (const auto& c : comps) reps.push_back(g.vertex_index(c.front()));
  std::vector<std::vector<int>> image;
  for (const auto& d : all) {
    std::vector<int> x;
    for (auto v : reps) x.push_back(d.obj[v]);
    image.push_back(x);
  }
  auto sorted = image;
  std::sort(sorted.begin(), sorted.end());
  const bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  const bool surjective = injective && sorted.size() == expected;
  bool monotone = true, reflects = true;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      bool dl = pointwise_leq(p, all[i].obj, all[j].obj);
      bool il = pointwise_leq(p, image[i], image[j]);
      if (dl && !il) monotone = false;
      if (il && !dl) reflects = false;
    }
  auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
  r.quantities.push_back({"restriction injective", yes(injective), "yes", ""});
  r.quantities.push_back({"restriction surjective", yes(surjective), "yes", ""});
  r.quantities.push_back({"restriction monotone", yes(monotone), "yes", ""});
  r.quantities.push_back({"inverse monotone", yes(reflects), "yes", ""});
  r.verdict = r.all_match() ? "pass" : "fail";
  if (!r.all_match() && all.size() > expected) {
    // Typical cause: a component with a cycle that is fed from outside.
    auto cond = condensation(g);
    for (const auto& c : cond.components) {
      bool fed = false, cyclic = c.size() > 1;
      for (const auto& v : c) {
        std::size_t vi = g.vertex_index(v);
        for (auto e : g.in_edges(vi)) {
          const auto& s = g.vertices()[g.src_index(e)];
          if (std::find(c.begin(), c.end(), s) == c.end()) fed = true;
          else cyclic = true;
        }
      }
      if (fed && cyclic)
        r.notes.push_back("component {" + [&] {
          std::string s;
          for (const auto& v : c) s += (s.empty() ? "" : ",") + v;
          return s;
        }() + "} has a cycle and incoming edges from outside, so its objects are not "
              "determined by the source components");
    }
  }
  return r;
}

CaseReport desingularisation_counterexample(const PosetCategory& p) {
  // Every family met here is nonempty, so a bottom element is not needed.
  if (!has_binary_suprema(p))
    throw Error(ErrorKind::InvalidArgument, p.spec() + " does not have binary suprema");
  CaseReport r;
  r.name = "desing";
  DirectedGraph h({"lo", "hi"}, {}, {{"lo", "hi"}});
  auto hp = std::make_shared<const DirectedGraph>(plus_construction(h));
  auto all = enumerate_diagrams(p, hp);
  const auto size = static_cast<std::uint64_t>(p.object_count());
  const std::uint64_t arrows = arrow_count(p);
  r.quantities.push_back({"|Diag_P(H+)|", num(all.size()), num(size * size), "|P|^2"});
  r.quantities.push_back({"|Arr(P)|", num(arrows), "", "pairs x <= y (closed form)"});
  if (!r.all_match()) {
    r.verdict = "fail";
  } else if (arrows != size * size) {
    r.verdict = "categories not equivalent";
  } else {
    r.verdict = "inconclusive";
    r.notes.push_back("|P|^2 = |Arr(P)|, so counting does not separate the two sides");
  }
  r.notes.push_back(
      "the diagram category of the infinite tail graph is taken to be Arr(P); that graph "
      "is never built, and finite truncations of it are not used since each of them "
      "collapses to P");
  r.notes.push_back(
      "at the algebra level the two graphs are related by desingularisation, which gives "
      "Morita equivalent Leavitt path algebras, so the diagram categories separate what "
      "the algebras do not");
  return r;
}

DirectedGraph two_loop_graph() { return DirectedGraph({"u"}, {{"l1", "u", "u"}, {"l2", "u", "u"}}); }

DirectedGraph cuntz_splice_graph() {
  return DirectedGraph({"v1", "v2", "v3"}, {{"a1", "v1", "v1"},
                                            {"a2", "v1", "v1"},
                                            {"b", "v1", "v2"},
                                            {"c", "v2", "v1"},
                                            {"d", "v2", "v2"},
                                            {"x", "v2", "v3"},
                                            {"y", "v3", "v2"},
                                            {"z", "v3", "v3"}});
}

CaseReport cuntz_splice_report() {
  CaseReport r;
  r.name = "cuntz";
  const DirectedGraph g = two_loop_graph(), h = cuntz_splice_graph();
  auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
  r.quantities.push_back({"PS(E2)", parry_sullivan(g).get_str(), "", "det(I - A)"});
  r.quantities.push_back({"PS(E2 spliced)", parry_sullivan(h).get_str(), "", "det(I - A)"});
  r.quantities.push_back({"BF(E2)", bowen_franks(g).to_string(), "", "coker(I - A)"});
  r.quantities.push_back({"BF(E2 spliced)", bowen_franks(h).to_string(), "", "coker(I - A)"});
  r.quantities.push_back({"irreducible, nontrivial (E2)",
                          yes(is_irreducible(g) && is_nontrivial(g)), "", ""});
  r.quantities.push_back({"irreducible, nontrivial (E2 spliced)",
                          yes(is_irreducible(h) && is_nontrivial(h)), "", ""});
  auto chain2 = PosetCategory::chain(2);
  r.quantities.push_back(
      {"chain2 diagrams (E2)",
       num(enumerate_diagrams(chain2, std::make_shared<const DirectedGraph>(g)).size()), "", ""});
  r.quantities.push_back(
      {"chain2 diagrams (E2 spliced)",
       num(enumerate_diagrams(chain2, std::make_shared<const DirectedGraph>(h)).size()), "", ""});
  r.notes.push_back("the Parry-Sullivan numbers differ and the Bowen-Franks groups agree");
  r.notes.push_back("both diagram categories over a poset with suprema are equivalent to P");
  r.verdict = "open question — not decided by this tool";
  return r;
}

}  // namespace flowcat
