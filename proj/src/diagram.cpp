#include "flowcat/diagram.hpp"

#include <algorithm>
#include <exception>

#include "flowcat/error.hpp"
#include "flowcat/fq.hpp"

namespace flowcat {

namespace {

const PosetCategory* as_poset(const FiniteCategory& cat) {
  return dynamic_cast<const PosetCategory*>(&cat);
}
const MatCategory* as_mat(const FiniteCategory& cat) {
  return dynamic_cast<const MatCategory*>(&cat);
}

void charge(NodeBudget* b, std::uint64_t n = 1) {
  if (b) b->charge(n);
}

bool is_non_source(const DirectedGraph& g, std::size_t v) {
  return !g.in_edges(v).empty() || !g.in_bundles(v).empty();
}

// Source vertex of every incoming edge, then of every incoming bundle.
std::vector<std::size_t> in_sources(const DirectedGraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (auto e : g.in_edges(v)) out.push_back(g.src_index(e));
  for (auto b : g.in_bundles(v)) out.push_back(g.bundle_src_index(b));
  return out;
}

}  // namespace

bool CoproductReport::ok() const {
  return std::all_of(vertices.begin(), vertices.end(), [](const VertexCheck& c) { return c.pass; });
}

std::optional<VertexCheck> CoproductReport::first_failure() const {
  for (const auto& c : vertices)
    if (!c.pass) return c;
  return std::nullopt;
}

void check_well_typed(const FiniteCategory& cat, const Diagram& d) {
  if (!d.graph) throw Error(ErrorKind::IllTyped, "diagram has no shape graph");
  const auto& g = *d.graph;
  g.require_well_formed();
  if (g.has_bundles() && !cat.is_poset())
    throw Error(ErrorKind::Unsupported,
                "infinite bundles are only supported for poset categories");
  if (d.obj.size() != g.vertex_count() || d.mor.size() != g.edge_count())
    throw Error(ErrorKind::IllTyped, "diagram does not match the size of its shape graph");
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!cat.has_object(d.obj[v]))
      throw Error(ErrorKind::IllTyped, "object at " + g.vertices()[v] + " is not in " + cat.spec());
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    cat.require(d.mor[e], d.obj[g.src_index(e)], d.obj[g.tgt_index(e)],
                "morphism at edge " + g.edges()[e].id);
  if (const auto* p = as_poset(cat))
    for (std::size_t b = 0; b < g.bundles().size(); ++b)
      if (!p->leq(d.obj[g.bundle_src_index(b)], d.obj[g.bundle_tgt_index(b)]))
        throw Error(ErrorKind::IllTyped, "bundle " + g.bundles()[b].src + "->" +
                                             g.bundles()[b].tgt + " violates the order");
}

CoproductReport check_coproduct_condition(const FiniteCategory& cat, const Diagram& d) {
  check_well_typed(cat, d);
  const auto& g = *d.graph;
  CoproductReport rep;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_non_source(g, v)) continue;
    VertexCheck chk{g.vertices()[v], true, ""};
    std::vector<int> family;
    std::vector<Morphism> maps;
    for (auto e : g.in_edges(v)) {
      family.push_back(d.obj[g.src_index(e)]);
      maps.push_back(d.mor[e]);
    }
    for (auto b : g.in_bundles(v)) {
      family.push_back(d.obj[g.bundle_src_index(b)]);
      maps.push_back({family.back(), d.obj[v], {}});
    }
    auto c = cat.coproduct(family);
    if (!c) {
      chk.pass = false;
      chk.reason = "no_coproduct";
    } else if (!cat.is_iso(cat.cotuple(*c, maps, d.obj[v]))) {
      chk.pass = false;
      chk.reason = "not_iso";
    }
    rep.vertices.push_back(std::move(chk));
  }
  return rep;
}

bool satisfies_coproduct_condition(const FiniteCategory& cat, const Diagram& d) {
  return check_coproduct_condition(cat, d).ok();
}

Diagram poset_diagram(const PosetCategory& cat, GraphPtr g, std::vector<int> obj) {
  Diagram d{std::move(g), std::move(obj), {}};
  if (d.obj.size() != d.graph->vertex_count())
    throw Error(ErrorKind::IllTyped, "diagram does not match the size of its shape graph");
  for (std::size_t e = 0; e < d.graph->edge_count(); ++e)
    d.mor.push_back({d.obj[d.graph->src_index(e)], d.obj[d.graph->tgt_index(e)], {}});
  (void)cat;
  return d;
}

// ---- dimension vectors ----

namespace {

// For each vertex index k, the non-source vertices whose constraint becomes
// checkable once vertices 0..k are assigned.
std::vector<std::vector<std::size_t>> constraint_schedule(const DirectedGraph& g) {
  std::vector<std::vector<std::size_t>> at(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_non_source(g, v)) continue;
    std::size_t last = v;
    for (auto s : in_sources(g, v)) last = std::max(last, s);
    at[last].push_back(v);
  }
  return at;
}

}  // namespace

std::vector<std::vector<int>> solve_dimension_vectors(const DirectedGraph& g, int bound,
                                                      NodeBudget* budget) {
  g.require_finite("solve_dimension_vectors");
  if (bound < 0) throw Error(ErrorKind::InvalidArgument, "bound must be nonnegative");
  const std::size_t n = g.vertex_count();
  auto at = constraint_schedule(g);
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= bound; ++x) {
      charge(budget);
      cur[k] = x;
      bool ok = true;
      for (auto v : at[k]) {
        int sum = 0;
        for (auto e : g.in_edges(v)) sum += cur[g.src_index(e)];
        if (sum != cur[v]) {
          ok = false;
          break;
        }
      }
      if (ok) rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// ---- enumeration ----

namespace {

std::vector<Diagram> enumerate_poset(const PosetCategory& cat, GraphPtr gp,
                                     std::optional<int> first, NodeBudget* budget) {
  const auto& g = *gp;
  const std::size_t n = g.vertex_count();
  auto at = constraint_schedule(g);
  // Order constraints (edges and bundles) checked at max(src, tgt).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> order_at(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto s = g.src_index(e), t = g.tgt_index(e);
    order_at[std::max(s, t)].push_back({s, t});
  }
  for (std::size_t b = 0; b < g.bundles().size(); ++b) {
    auto s = g.bundle_src_index(b), t = g.bundle_tgt_index(b);
    order_at[std::max(s, t)].push_back({s, t});
  }
  std::vector<Diagram> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      out.push_back(poset_diagram(cat, gp, cur));
      return;
    }
    int lo = 0, hi = cat.object_count() - 1;
    if (k == 0 && first) lo = hi = *first;
    for (int x = lo; x <= hi; ++x) {
      charge(budget);
      cur[k] = x;
      bool ok = true;
      for (auto [s, t] : order_at[k])
        if (!cat.leq(cur[s], cur[t])) {
          ok = false;
          break;
        }
      for (std::size_t i = 0; ok && i < at[k].size(); ++i) {
        auto v = at[k][i];
        std::vector<int> fam;
        for (auto s : in_sources(g, v)) fam.push_back(cur[s]);
        auto sup = cat.supremum(fam);
        ok = sup && *sup == cur[v];
      }
      if (ok) rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// Splits an automorphism of the apex at v into the incoming edge maps.
void split_into_edges(const FiniteCategory& cat, const DirectedGraph& g, std::size_t v,
                      const std::vector<int>& sizes, const Morphism& iso,
                      std::vector<Morphism>& mor) {
  std::vector<int> fam;
  for (auto e : g.in_edges(v)) fam.push_back(sizes[g.src_index(e)]);
  auto c = cat.coproduct(fam);
  if (!c) throw Error(ErrorKind::NoCoproduct, "no coproduct at " + g.vertices()[v]);
  const auto& ins = g.in_edges(v);
  for (std::size_t i = 0; i < ins.size(); ++i) mor[ins[i]] = cat.compose(iso, c->injections[i]);
}

std::vector<Diagram> enumerate_sized(const FiniteCategory& cat, GraphPtr gp,
                                     const std::vector<int>& sizes, NodeBudget* budget) {
  const auto& g = *gp;
  std::vector<std::size_t> targets;
  std::vector<std::vector<Morphism>> choices;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_non_source(g, v)) continue;
    targets.push_back(v);
    choices.push_back(cat.isos(sizes[v], sizes[v]));
  }
  std::vector<Diagram> out;
  Diagram d{gp, sizes, std::vector<Morphism>(g.edge_count())};
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == targets.size()) {
      out.push_back(d);
      return;
    }
    for (const auto& iso : choices[k]) {
      charge(budget);
      split_into_edges(cat, g, targets[k], sizes, iso, d.mor);
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

int effective_bound(const FiniteCategory& cat, const EnumerateOptions& opts) {
  int top = cat.object_count() - 1;
  if (opts.bound < 0) return top;
  return std::min(opts.bound, top);
}

std::vector<Diagram> enumerate_core(const FiniteCategory& cat, GraphPtr g,
                                    const EnumerateOptions& opts, std::optional<int> first) {
  g->require_well_formed();
  if (const auto* p = as_poset(cat)) return enumerate_poset(*p, g, first, opts.budget);
  g->require_finite("diagram enumeration outside posets");
  std::vector<Diagram> out;
  for (const auto& sizes : solve_dimension_vectors(*g, effective_bound(cat, opts), opts.budget)) {
    if (first && sizes[0] != *first) continue;
    auto part = enumerate_sized(cat, g, sizes, opts.budget);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace

std::vector<Diagram> enumerate_diagrams_serial(const FiniteCategory& cat, GraphPtr g,
                                               const EnumerateOptions& opts) {
  return enumerate_core(cat, std::move(g), opts, std::nullopt);
}

std::vector<Diagram> enumerate_diagrams(const FiniteCategory& cat, GraphPtr g,
                                        const EnumerateOptions& opts) {
  if (!opts.parallel) return enumerate_diagrams_serial(cat, std::move(g), opts);
  const int choices = cat.is_poset() ? cat.object_count() : effective_bound(cat, opts) + 1;
  std::vector<std::vector<Diagram>> parts(choices);
  std::vector<std::exception_ptr> errors(choices);
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < choices; ++x) {
    try {
      parts[x] = enumerate_core(cat, g, opts, x);
    } catch (...) {
      errors[x] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Diagram> out;
  for (auto& p : parts)
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

std::uint64_t count_diagrams_with_sizes(const FiniteCategory& cat, const DirectedGraph& g,
                                        const std::vector<int>& sizes) {
  if (cat.is_poset()) throw Error(ErrorKind::Unsupported, "size vectors do not apply to posets");
  std::uint64_t total = 1;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!is_non_source(g, v)) continue;
    int sum = 0;
    for (auto e : g.in_edges(v)) sum += sizes[g.src_index(e)];
    if (sum != sizes[v]) return 0;
    std::uint64_t k = 1;
    if (const auto* m = as_mat(cat)) {
      // |GL(n, q)| = prod (q^n - q^i)
      std::uint64_t qn = 1;
      for (int i = 0; i < sizes[v]; ++i) qn *= m->field();
      std::uint64_t qi = 1;
      for (int i = 0; i < sizes[v]; ++i, qi *= m->field()) k *= qn - qi;
    } else {
      for (int i = 2; i <= sizes[v]; ++i) k *= i;
    }
    total *= k;
  }
  return total;
}

// ---- morphisms of diagrams ----

std::optional<std::string> naturality_failure(const FiniteCategory& cat, const Diagram& d,
                                              const Diagram& e, const DiagramMorphism& t) {
  const auto& g = *d.graph;
  if (!(g == *e.graph)) throw Error(ErrorKind::IllTyped, "diagrams have different shapes");
  if (t.components.size() != g.vertex_count())
    throw Error(ErrorKind::IllTyped, "morphism has the wrong number of components");
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    cat.require(t.components[v], d.obj[v], e.obj[v], "component at " + g.vertices()[v]);
  if (cat.is_poset()) return std::nullopt;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    auto s = g.src_index(k), tg = g.tgt_index(k);
    if (cat.compose(t.components[tg], d.mor[k]) != cat.compose(e.mor[k], t.components[s]))
      return g.edges()[k].id;
  }
  return std::nullopt;
}

bool check_diagram_morphism(const FiniteCategory& cat, const Diagram& d, const Diagram& e,
                            const DiagramMorphism& t) {
  return !naturality_failure(cat, d, e, t).has_value();
}

DiagramMorphism identity_morphism(const FiniteCategory& cat, const Diagram& d) {
  DiagramMorphism t;
  for (int x : d.obj) t.components.push_back(cat.identity(x));
  return t;
}

DiagramMorphism compose(const FiniteCategory& cat, const DiagramMorphism& s,
                        const DiagramMorphism& t) {
  if (s.components.size() != t.components.size())
    throw Error(ErrorKind::IllTyped, "composing diagram morphisms of different shapes");
  DiagramMorphism out;
  for (std::size_t v = 0; v < s.components.size(); ++v)
    out.components.push_back(cat.compose(s.components[v], t.components[v]));
  return out;
}

bool is_iso(const FiniteCategory& cat, const DiagramMorphism& t) {
  return std::all_of(t.components.begin(), t.components.end(),
                     [&](const Morphism& f) { return cat.is_iso(f); });
}

std::optional<DiagramMorphism> inverse(const FiniteCategory& cat, const DiagramMorphism& t) {
  DiagramMorphism out;
  for (const auto& f : t.components) {
    auto inv = cat.inverse(f);
    if (!inv) return std::nullopt;
    out.components.push_back(*inv);
  }
  return out;
}

namespace {

// Naturality is linear in the components, so Hom(d, e) in a matrix category is
// the null space of one linear system.
struct LinearHoms {
  std::vector<std::size_t> offset;  // start of each component's unknowns
  std::vector<std::vector<int>> basis;
};

LinearHoms linear_homs(const MatCategory& cat, const Diagram& d, const Diagram& e) {
  const auto& g = *d.graph;
  const int q = cat.field();
  LinearHoms lh;
  std::size_t unknowns = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    lh.offset.push_back(unknowns);
    unknowns += static_cast<std::size_t>(e.obj[v]) * d.obj[v];
  }
  std::size_t eqs = 0;
  for (std::size_t k = 0; k < g.edge_count(); ++k)
    eqs += static_cast<std::size_t>(e.obj[g.tgt_index(k)]) * d.obj[g.src_index(k)];
  FqMatrix sys(q, eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    auto s = g.src_index(k), t = g.tgt_index(k);
    auto de = cat.matrix(d.mor[k]);  // d_t x d_s
    auto ee = cat.matrix(e.mor[k]);  // e_t x e_s
    const std::size_t ds = d.obj[s], dt = d.obj[t], es = e.obj[s], et = e.obj[t];
    // (T_t D_e - E_e T_s)_{ij} for i < e_t, j < d_s
    for (std::size_t i = 0; i < et; ++i)
      for (std::size_t j = 0; j < ds; ++j, ++row) {
        for (std::size_t k2 = 0; k2 < dt; ++k2) {
          std::size_t col = lh.offset[t] + i * dt + k2;
          sys.set(row, col, sys(row, col) + de(k2, j));
        }
        for (std::size_t k2 = 0; k2 < es; ++k2) {
          std::size_t col = lh.offset[s] + k2 * ds + j;
          sys.set(row, col, sys(row, col) - ee(i, k2));
        }
      }
  }
  lh.basis = null_space(sys);
  return lh;
}

DiagramMorphism from_vector(const Diagram& d, const Diagram& e, const LinearHoms& lh,
                            const std::vector<int>& x) {
  DiagramMorphism t;
  for (std::size_t v = 0; v < d.obj.size(); ++v) {
    Morphism m{d.obj[v], e.obj[v], {}};
    const std::size_t len = static_cast<std::size_t>(e.obj[v]) * d.obj[v];
    m.data.assign(x.begin() + lh.offset[v], x.begin() + lh.offset[v] + len);
    t.components.push_back(std::move(m));
  }
  return t;
}

void mat_homs(const MatCategory& cat, const Diagram& d, const Diagram& e, bool isos_only,
              const std::function<bool(const DiagramMorphism&)>& visit, NodeBudget* budget) {
  if (isos_only && d.obj != e.obj) return;
  auto lh = linear_homs(cat, d, e);
  const int q = cat.field();
  std::size_t len = lh.offset.empty() ? 0 : lh.offset.back() +
                    static_cast<std::size_t>(e.obj.back()) * d.obj.back();
  const std::size_t k = lh.basis.size();
  std::vector<int> coeff(k, 0);
  while (true) {
    charge(budget);
    std::vector<int> x(len, 0);
    for (std::size_t b = 0; b < k; ++b)
      if (coeff[b])
        for (std::size_t i = 0; i < len; ++i) x[i] = (x[i] + coeff[b] * lh.basis[b][i]) % q;
    auto t = from_vector(d, e, lh, x);
    if (!isos_only || is_iso(cat, t))
      if (!visit(t)) return;
    std::size_t i = 0;
    while (i < k && ++coeff[i] == q) coeff[i++] = 0;
    if (i == k) return;
  }
}

// Backtracking over components. A non-source vertex whose incoming sources
// are already fixed has its component forced by the coproduct condition on d.
void search_homs(const FiniteCategory& cat, const Diagram& d, const Diagram& e, bool isos_only,
                 const std::function<bool(const DiagramMorphism&)>& visit, NodeBudget* budget) {
  const auto& g = *d.graph;
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<Morphism>> comp(n);
  std::vector<int> order;

  // Cotuple of d at v, inverted, when d satisfies the condition there.
  std::vector<std::optional<Morphism>> d_cot_inv(n);
  std::vector<std::optional<Coproduct>> d_cop(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.in_edges(v).empty()) continue;
    std::vector<int> fam;
    std::vector<Morphism> maps;
    for (auto k : g.in_edges(v)) {
      fam.push_back(d.obj[g.src_index(k)]);
      maps.push_back(d.mor[k]);
    }
    auto c = cat.coproduct(fam);
    if (!c) continue;
    d_cot_inv[v] = cat.inverse(cat.cotuple(*c, maps, d.obj[v]));
    d_cop[v] = c;
  }

  auto consistent = [&](std::size_t v) {
    for (auto k : g.in_edges(v)) {
      auto s = g.src_index(k);
      if (!comp[s]) continue;
      if (cat.compose(*comp[v], d.mor[k]) != cat.compose(e.mor[k], *comp[s])) return false;
    }
    for (auto k : g.out_edges(v)) {
      auto t = g.tgt_index(k);
      if (!comp[t]) continue;
      if (cat.compose(*comp[t], d.mor[k]) != cat.compose(e.mor[k], *comp[v])) return false;
    }
    return true;
  };

  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t assigned) {
    if (stop) return;
    if (assigned == n) {
      DiagramMorphism t;
      for (auto& c : comp) t.components.push_back(*c);
      if (!visit(t)) stop = true;
      return;
    }
    // Prefer a forced vertex.
    std::optional<std::size_t> pick, forced;
    for (std::size_t v = 0; v < n && !forced; ++v) {
      if (comp[v]) continue;
      if (!pick) pick = v;
      if (!d_cot_inv[v]) continue;
      bool ready = true;
      for (auto k : g.in_edges(v)) ready = ready && comp[g.src_index(k)].has_value();
      if (ready) forced = v;
    }
    const std::size_t v = forced ? *forced : *pick;
    std::vector<Morphism> cands;
    if (forced) {
      std::vector<Morphism> maps;
      for (auto k : g.in_edges(v)) maps.push_back(cat.compose(e.mor[k], *comp[g.src_index(k)]));
      cands.push_back(cat.compose(cat.cotuple(*d_cop[v], maps, e.obj[v]), *d_cot_inv[v]));
      if (isos_only && !cat.is_iso(cands.back())) cands.clear();
    } else {
      cands = isos_only ? cat.isos(d.obj[v], e.obj[v]) : cat.hom(d.obj[v], e.obj[v]);
    }
    for (auto& c : cands) {
      charge(budget);
      comp[v] = std::move(c);
      if (consistent(v)) rec(assigned + 1);
      comp[v].reset();
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace

void for_each_diagram_morphism(const FiniteCategory& cat, const Diagram& d, const Diagram& e,
                               bool isos_only,
                               const std::function<bool(const DiagramMorphism&)>& visit,
                               NodeBudget* budget) {
  if (!(*d.graph == *e.graph)) throw Error(ErrorKind::IllTyped, "diagrams have different shapes");
  check_well_typed(cat, d);
  check_well_typed(cat, e);
  if (const auto* p = as_poset(cat)) {
    charge(budget);
    DiagramMorphism t;
    for (std::size_t v = 0; v < d.obj.size(); ++v) {
      if (isos_only ? d.obj[v] != e.obj[v] : !p->leq(d.obj[v], e.obj[v])) return;
      t.components.push_back({d.obj[v], e.obj[v], {}});
    }
    visit(t);
    return;
  }
  if (const auto* m = as_mat(cat)) return mat_homs(*m, d, e, isos_only, visit, budget);
  search_homs(cat, d, e, isos_only, visit, budget);
}

std::vector<DiagramMorphism> diagram_homs(const FiniteCategory& cat, const Diagram& d,
                                          const Diagram& e, NodeBudget* budget) {
  std::vector<DiagramMorphism> out;
  for_each_diagram_morphism(
      cat, d, e, false, [&](const DiagramMorphism& t) { out.push_back(t); return true; }, budget);
  return out;
}

std::optional<DiagramMorphism> diagram_isomorphic(const FiniteCategory& cat, const Diagram& d,
                                                  const Diagram& e, NodeBudget* budget) {
  if (d == e) return identity_morphism(cat, d);
  if (const auto* m = as_mat(cat)) {
    // Invertible elements are common in the hom space, so a few random draws
    // usually settle it before the exhaustive walk.
    if (d.obj != e.obj) return std::nullopt;
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 64; ++i) {
      auto t = random_diagram_morphism(*m, d, e, rng, budget);
      if (t && is_iso(cat, *t)) return t;
    }
  }
  std::optional<DiagramMorphism> found;
  for_each_diagram_morphism(
      cat, d, e, true, [&](const DiagramMorphism& t) { found = t; return false; }, budget);
  return found;
}

// ---- sampling ----

namespace {

Morphism random_iso(const FiniteCategory& cat, int n, std::mt19937_64& rng) {
  if (const auto* m = as_mat(cat)) {
    std::uniform_int_distribution<int> dist(0, m->field() - 1);
    while (true) {
      Morphism f{n, n, std::vector<int>(static_cast<std::size_t>(n) * n)};
      for (auto& x : f.data) x = dist(rng);
      if (cat.is_iso(f)) return f;
    }
  }
  Morphism f = cat.identity(n);
  std::shuffle(f.data.begin(), f.data.end(), rng);
  return f;
}

}  // namespace

Diagram random_diagram(const FiniteCategory& cat, GraphPtr gp, const std::vector<int>& sizes,
                       std::mt19937_64& rng) {
  if (cat.is_poset()) throw Error(ErrorKind::Unsupported, "random_diagram needs finset or mat");
  const auto& g = *gp;
  g.require_finite("random_diagram");
  if (sizes.size() != g.vertex_count())
    throw Error(ErrorKind::InvalidArgument, "size vector does not match the graph");
  Diagram d{gp, sizes, std::vector<Morphism>(g.edge_count())};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.in_edges(v).empty()) continue;
    int sum = 0;
    for (auto e : g.in_edges(v)) sum += sizes[g.src_index(e)];
    if (sum != sizes[v])
      throw Error(ErrorKind::InvalidArgument, "size vector is not feasible at " + g.vertices()[v]);
    split_into_edges(cat, g, v, sizes, random_iso(cat, sizes[v], rng), d.mor);
  }
  return d;
}

std::optional<DiagramMorphism> random_diagram_morphism(const FiniteCategory& cat,
                                                       const Diagram& d, const Diagram& e,
                                                       std::mt19937_64& rng,
                                                       NodeBudget* budget) {
  if (const auto* m = as_mat(cat)) {
    check_well_typed(cat, d);
    check_well_typed(cat, e);
    auto lh = linear_homs(*m, d, e);
    const int q = m->field();
    std::size_t len = lh.offset.back() + static_cast<std::size_t>(e.obj.back()) * d.obj.back();
    std::uniform_int_distribution<int> dist(0, q - 1);
    std::vector<int> x(len, 0);
    for (const auto& b : lh.basis) {
      int c = dist(rng);
      for (std::size_t i = 0; i < len; ++i) x[i] = (x[i] + c * b[i]) % q;
    }
    return from_vector(d, e, lh, x);
  }
  auto all = diagram_homs(cat, d, e, budget);
  if (all.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

}  // namespace flowcat
