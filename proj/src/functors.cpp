#include "flowcat/functors.hpp"

#include <algorithm>

#include "flowcat/error.hpp"

namespace flowcat {
namespace {

Coproduct need_coproduct(const FiniteCategory& cat, const std::vector<int>& family,
                         const std::string& where) {
  auto c = cat.coproduct(family);
  if (!c) throw Error(ErrorKind::NoCoproduct, "no coproduct in " + cat.spec() + " at " + where);
  return *c;
}

/// The coproduct of maps f_i : X_i -> Y_i, between the canonical coproducts.
Morphism induced(const FiniteCategory& cat, const Coproduct& from, const Coproduct& to,
                 const std::vector<Morphism>& maps) {
  std::vector<Morphism> legs;
  legs.reserve(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i)
    legs.push_back(cat.compose(to.injections[i], maps[i]));
  return cat.cotuple(from, legs, to.apex);
}

/// Composite of edge maps applied left to right.
Morphism along(const FiniteCategory& cat, const Diagram& e, int start,
               const std::vector<std::size_t>& path) {
  Morphism m = cat.identity(start);
  for (std::size_t k : path) m = cat.compose(e.mor[k], m);
  return m;
}

bool is_source(const DirectedGraph& g, std::size_t v) { return g.in_edges(v).empty(); }

void require_finite_graph(const DirectedGraph& g, const std::string& move) {
  if (g.has_bundles())
    throw Error(ErrorKind::Unsupported, move + " functors need a graph without infinite bundles");
  g.require_well_formed();
}

Diagram empty_diagram(GraphPtr g) {
  Diagram d;
  d.obj.assign(g->vertex_count(), 0);
  d.mor.assign(g->edge_count(), {});
  d.graph = std::move(g);
  return d;
}

// ---------------------------------------------------------------- sink removal

class SinkRemoval final : public DiagramFunctorPair {
 public:
  SinkRemoval(CategoryPtr cat, GraphPtr g, const std::string& w)
      : DiagramFunctorPair("remove_sink", std::move(cat), g,
                           std::make_shared<DirectedGraph>(remove_sink(*g, w))),
        w_(g->vertex_index(w)) {
    require_finite_graph(*g_, move_);
    for (std::size_t v = 0; v < h_->vertex_count(); ++v)
      vmap_.push_back(g_->vertex_index(h_->vertices()[v]));
    for (std::size_t k = 0; k < h_->edge_count(); ++k)
      emap_.push_back(g_->edge_index(h_->edges()[k].id));
  }

  Diagram forward(const Diagram& d) const override {
    Diagram r = empty_diagram(h_);
    for (std::size_t v = 0; v < vmap_.size(); ++v) r.obj[v] = d.obj[vmap_[v]];
    for (std::size_t k = 0; k < emap_.size(); ++k) r.mor[k] = d.mor[emap_[k]];
    return r;
  }

  DiagramMorphism forward(const Diagram&, const Diagram&,
                          const DiagramMorphism& t) const override {
    DiagramMorphism r;
    for (std::size_t v : vmap_) r.components.push_back(t.components[v]);
    return r;
  }

  Diagram backward(const Diagram& e) const override {
    const FiniteCategory& cat = *cat_;
    Diagram r = empty_diagram(g_);
    for (std::size_t v = 0; v < vmap_.size(); ++v) r.obj[vmap_[v]] = e.obj[v];
    for (std::size_t k = 0; k < emap_.size(); ++k) r.mor[emap_[k]] = e.mor[k];
    Coproduct c = need_coproduct(cat, family(r), g_->vertices()[w_]);
    r.obj[w_] = c.apex;
    const auto& in = g_->in_edges(w_);
    for (std::size_t i = 0; i < in.size(); ++i) r.mor[in[i]] = c.injections[i];
    return r;
  }

  DiagramMorphism backward(const Diagram& d, const Diagram& e,
                           const DiagramMorphism& t) const override {
    const FiniteCategory& cat = *cat_;
    Diagram bd = backward(d), be = backward(e);
    DiagramMorphism r;
    r.components.assign(g_->vertex_count(), {});
    for (std::size_t v = 0; v < vmap_.size(); ++v) r.components[vmap_[v]] = t.components[v];
    std::vector<Morphism> legs;
    for (std::size_t k : g_->in_edges(w_)) legs.push_back(r.components[g_->src_index(k)]);
    Coproduct from = need_coproduct(cat, family(bd), g_->vertices()[w_]);
    Coproduct to = need_coproduct(cat, family(be), g_->vertices()[w_]);
    r.components[w_] = induced(cat, from, to, legs);
    return r;
  }

  DiagramMorphism counit(const Diagram& e) const override { return identity_morphism(*cat_, e); }

 private:
  std::vector<int> family(const Diagram& d) const {
    std::vector<int> f;
    for (std::size_t k : g_->in_edges(w_)) f.push_back(d.obj[g_->src_index(k)]);
    return f;
  }

  std::size_t w_;
  std::vector<std::size_t> vmap_, emap_;  // h index -> g index
};

// ------------------------------------------------------------------ out-delay

class OutDelay final : public DiagramFunctorPair {
 public:
  OutDelay(CategoryPtr cat, GraphPtr g, const OutDelaySpec& spec)
      : DiagramFunctorPair("out_delay", std::move(cat), g,
                           std::make_shared<DirectedGraph>(out_delay(*g, spec))) {
    require_finite_graph(*g_, move_);
    const auto& vs = g_->vertices();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::size_t dv = spec.d_vertices.at(vs[v]);
      std::vector<std::size_t> level, chain;
      for (std::size_t n = 0; n <= dv; ++n) {
        level.push_back(h_->vertex_index(pair_name(vs[v], n)));
        if (n > 0) chain.push_back(h_->edge_index(chain_edge_name(vs[v], n)));
      }
      level_.push_back(level);
      chain_.push_back(chain);
    }
    for (const Edge& e : g_->edges()) {
      edge_.push_back(h_->edge_index(e.id));
      delay_.push_back(spec.d_edges.at(e.id));
    }
  }

  Diagram forward(const Diagram& d) const override {
    Diagram r = empty_diagram(h_);
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t x : level_[v]) r.obj[x] = d.obj[v];
      for (std::size_t k : chain_[v]) r.mor[k] = cat_->identity(d.obj[v]);
    }
    for (std::size_t k = 0; k < edge_.size(); ++k) r.mor[edge_[k]] = d.mor[k];
    return r;
  }

  DiagramMorphism forward(const Diagram&, const Diagram&,
                          const DiagramMorphism& t) const override {
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t x : level_[v]) r.components[x] = t.components[v];
    return r;
  }

  Diagram backward(const Diagram& e) const override {
    Diagram r = empty_diagram(g_);
    for (std::size_t v = 0; v < level_.size(); ++v) r.obj[v] = e.obj[level_[v][0]];
    for (std::size_t k = 0; k < edge_.size(); ++k) {
      std::size_t s = g_->src_index(k);
      std::vector<std::size_t> path(chain_[s].begin(), chain_[s].begin() + delay_[k]);
      path.push_back(edge_[k]);
      r.mor[k] = along(*cat_, e, r.obj[s], path);
    }
    return r;
  }

  DiagramMorphism backward(const Diagram&, const Diagram&,
                           const DiagramMorphism& t) const override {
    DiagramMorphism r;
    for (const auto& level : level_) r.components.push_back(t.components[level[0]]);
    return r;
  }

  DiagramMorphism counit(const Diagram& e) const override {
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v) {
      int base = e.obj[level_[v][0]];
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        std::vector<std::size_t> path(chain_[v].begin(), chain_[v].begin() + n);
        r.components[level_[v][n]] = along(*cat_, e, base, path);
      }
    }
    return r;
  }

 private:
  std::vector<std::vector<std::size_t>> level_;  // (v,n) indices in h
  std::vector<std::vector<std::size_t>> chain_;  // e_{v,n}, n = 1..d(v)
  std::vector<std::size_t> edge_, delay_;
};

// ------------------------------------------------------------------- in-delay

// (v,n) is the coproduct over the edges into v with d(e) >= n. A source has
// no such edges and keeps D_v at (v,0).
class InDelay final : public DiagramFunctorPair {
 public:
  InDelay(CategoryPtr cat, GraphPtr g, const InDelaySpec& spec)
      : DiagramFunctorPair("in_delay", std::move(cat), g,
                           std::make_shared<DirectedGraph>(in_delay(*g, spec))) {
    require_finite_graph(*g_, move_);
    const auto dv = in_delay_vertex_values(*g_, spec);
    const auto& vs = g_->vertices();
    for (const Edge& e : g_->edges()) {
      edge_.push_back(h_->edge_index(e.id));
      delay_.push_back(spec.d_edges.at(e.id));
    }
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::vector<std::size_t> level, chain;
      std::vector<std::vector<std::size_t>> fam;
      for (std::size_t n = 0; n <= dv[v]; ++n) {
        level.push_back(h_->vertex_index(pair_name(vs[v], n)));
        if (n > 0) chain.push_back(h_->edge_index(chain_edge_name(vs[v], n)));
        std::vector<std::size_t> f;
        for (std::size_t k : g_->in_edges(v))
          if (delay_[k] >= n) f.push_back(k);
        fam.push_back(f);
      }
      if (is_source(*g_, v)) sourced_ = true;
      level_.push_back(level);
      chain_.push_back(chain);
      fam_.push_back(fam);
    }
  }

  bool sourced_input() const override { return sourced_; }

  Diagram forward(const Diagram& d) const override {
    const FiniteCategory& cat = *cat_;
    Diagram r = empty_diagram(h_);
    auto cps = coproducts(d);
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t n = 0; n < level_[v].size(); ++n) r.obj[level_[v][n]] = cps[v][n].apex;
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 1; n < level_[v].size(); ++n) {
        // (v,n) -> (v,n-1): each summand goes to its own slot one level down.
        std::vector<Morphism> legs;
        for (std::size_t k : fam_[v][n]) legs.push_back(cps[v][n - 1].injections[slot(v, n - 1, k)]);
        r.mor[chain_[v][n - 1]] = cat.cotuple(cps[v][n], legs, cps[v][n - 1].apex);
      }
    }
    for (std::size_t k = 0; k < edge_.size(); ++k) {
      std::size_t s = g_->src_index(k), t = g_->tgt_index(k);
      const Coproduct& to = cps[t][delay_[k]];
      Morphism inj = to.injections[slot(t, delay_[k], k)];
      if (is_source(*g_, s)) {
        r.mor[edge_[k]] = inj;
        continue;
      }
      std::vector<Morphism> legs;
      for (std::size_t f : fam_[s][0]) legs.push_back(cat.compose(inj, d.mor[f]));
      r.mor[edge_[k]] = cat.cotuple(cps[s][0], legs, to.apex);
    }
    return r;
  }

  DiagramMorphism forward(const Diagram& d, const Diagram& e,
                          const DiagramMorphism& t) const override {
    auto from = coproducts(d), to = coproducts(e);
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        if (is_source(*g_, v)) {
          r.components[level_[v][n]] = t.components[v];
          continue;
        }
        std::vector<Morphism> legs;
        for (std::size_t k : fam_[v][n]) legs.push_back(t.components[g_->src_index(k)]);
        r.components[level_[v][n]] = induced(*cat_, from[v][n], to[v][n], legs);
      }
    }
    return r;
  }

  Diagram backward(const Diagram& e) const override {
    Diagram r = empty_diagram(g_);
    for (std::size_t v = 0; v < level_.size(); ++v) r.obj[v] = e.obj[level_[v][0]];
    for (std::size_t k = 0; k < edge_.size(); ++k)
      r.mor[k] = along(*cat_, e, r.obj[g_->src_index(k)], down(g_->tgt_index(k), k, 0));
    return r;
  }

  DiagramMorphism backward(const Diagram&, const Diagram&,
                           const DiagramMorphism& t) const override {
    DiagramMorphism r;
    for (const auto& level : level_) r.components.push_back(t.components[level[0]]);
    return r;
  }

  DiagramMorphism counit(const Diagram& e) const override {
    const FiniteCategory& cat = *cat_;
    Diagram de = backward(e);
    auto cps = coproducts(de);
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        std::size_t x = level_[v][n];
        if (is_source(*g_, v)) {
          r.components[x] = cat.identity(e.obj[x]);
          continue;
        }
        std::vector<Morphism> legs;
        for (std::size_t k : fam_[v][n])
          legs.push_back(along(cat, e, e.obj[level_[g_->src_index(k)][0]], down(v, k, n)));
        r.components[x] = cat.cotuple(cps[v][n], legs, e.obj[x]);
      }
    }
    return r;
  }

 private:
  // The edge e into v, then down the chain from (v,d(e)) to (v,n).
  std::vector<std::size_t> down(std::size_t v, std::size_t k, std::size_t n) const {
    std::vector<std::size_t> path{edge_[k]};
    for (std::size_t m = delay_[k]; m > n; --m) path.push_back(chain_[v][m - 1]);
    return path;
  }

  std::size_t slot(std::size_t v, std::size_t n, std::size_t k) const {
    const auto& f = fam_[v][n];
    return static_cast<std::size_t>(std::find(f.begin(), f.end(), k) - f.begin());
  }

  std::vector<std::vector<Coproduct>> coproducts(const Diagram& d) const {
    std::vector<std::vector<Coproduct>> out(level_.size());
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        if (is_source(*g_, v)) {
          out[v].push_back(Coproduct{d.obj[v], {cat_->identity(d.obj[v])}});
          continue;
        }
        std::vector<int> f;
        for (std::size_t k : fam_[v][n]) f.push_back(d.obj[g_->src_index(k)]);
        out[v].push_back(need_coproduct(*cat_, f, h_->vertices()[level_[v][n]]));
      }
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> level_, chain_;
  std::vector<std::vector<std::vector<std::size_t>>> fam_;
  std::vector<std::size_t> edge_, delay_;
  bool sourced_ = false;
};

// ------------------------------------------------------------------ out-split

class OutSplit final : public DiagramFunctorPair {
 public:
  OutSplit(CategoryPtr cat, GraphPtr g, const OutSplitSpec& spec)
      : DiagramFunctorPair("out_split", std::move(cat), g,
                           std::make_shared<DirectedGraph>(out_split(*g, spec))) {
    require_finite_graph(*g_, move_);
    const auto& vs = g_->vertices();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::vector<std::size_t> level;
      for (std::size_t n = 0; n <= spec.p_vertices.at(vs[v]); ++n)
        level.push_back(h_->vertex_index(pair_name(vs[v], n)));
      level_.push_back(level);
    }
    for (std::size_t k = 0; k < g_->edge_count(); ++k) {
      const Edge& e = g_->edges()[k];
      std::vector<std::size_t> copies;
      for (std::size_t n = 0; n < level_[g_->tgt_index(k)].size(); ++n)
        copies.push_back(h_->edge_index(pair_name(e.id, n)));
      copies_.push_back(copies);
      split_.push_back(spec.p_edges.at(e.id));
    }
  }

  Diagram forward(const Diagram& d) const override {
    Diagram r = empty_diagram(h_);
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t x : level_[v]) r.obj[x] = d.obj[v];
    for (std::size_t k = 0; k < copies_.size(); ++k)
      for (std::size_t x : copies_[k]) r.mor[x] = d.mor[k];
    return r;
  }

  DiagramMorphism forward(const Diagram&, const Diagram&,
                          const DiagramMorphism& t) const override {
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t x : level_[v]) r.components[x] = t.components[v];
    return r;
  }

  Diagram backward(const Diagram& e) const override {
    Diagram r = empty_diagram(g_);
    for (std::size_t v = 0; v < level_.size(); ++v) r.obj[v] = e.obj[level_[v][0]];
    for (std::size_t k = 0; k < copies_.size(); ++k) {
      std::size_t s = g_->src_index(k);
      r.mor[k] = cat_->compose(e.mor[copies_[k][0]], transport(e, s, split_[k]));
    }
    return r;
  }

  DiagramMorphism backward(const Diagram&, const Diagram&,
                           const DiagramMorphism& t) const override {
    DiagramMorphism r;
    for (const auto& level : level_) r.components.push_back(t.components[level[0]]);
    return r;
  }

  DiagramMorphism counit(const Diagram& e) const override {
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t n = 0; n < level_[v].size(); ++n)
        r.components[level_[v][n]] = transport(e, v, n);
    return r;
  }

 private:
  // E_(v,0) -> E_(v,n): both are the coproduct of the same summands, reached
  // through the n-th and 0-th copies of the edges into v.
  Morphism transport(const Diagram& e, std::size_t v, std::size_t n) const {
    const FiniteCategory& cat = *cat_;
    if (n == 0 || is_source(*g_, v)) return cat.identity(e.obj[level_[v][0]]);
    std::vector<int> fam;
    std::vector<Morphism> legs0, legsn;
    for (std::size_t k : g_->in_edges(v)) {
      fam.push_back(e.obj[h_->src_index(copies_[k][0])]);
      legs0.push_back(e.mor[copies_[k][0]]);
      legsn.push_back(e.mor[copies_[k][n]]);
    }
    Coproduct c = need_coproduct(cat, fam, g_->vertices()[v]);
    auto inv = cat.inverse(cat.cotuple(c, legs0, e.obj[level_[v][0]]));
    if (!inv)
      throw Error(ErrorKind::InvalidArgument,
                  "coproduct condition fails at " + h_->vertices()[level_[v][0]]);
    return cat.compose(cat.cotuple(c, legsn, e.obj[level_[v][n]]), *inv);
  }

  std::vector<std::vector<std::size_t>> level_, copies_;
  std::vector<std::size_t> split_;
};

// ------------------------------------------------------------------- in-split

// (v,n) is the coproduct over the edges into v with p(e) = n; sources keep D_v.
class InSplit final : public DiagramFunctorPair {
 public:
  InSplit(CategoryPtr cat, GraphPtr g, const InSplitSpec& spec)
      : DiagramFunctorPair("in_split", std::move(cat), g,
                           std::make_shared<DirectedGraph>(in_split(*g, spec))) {
    require_finite_graph(*g_, move_);
    const auto& vs = g_->vertices();
    for (const Edge& e : g_->edges()) split_.push_back(spec.p_edges.at(e.id));
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::size_t pv = spec.p_vertices.at(vs[v]);
      std::vector<std::size_t> level;
      std::vector<std::vector<std::size_t>> fam(pv + 1);
      for (std::size_t n = 0; n <= pv; ++n) level.push_back(h_->vertex_index(pair_name(vs[v], n)));
      for (std::size_t k : g_->in_edges(v)) fam[split_[k]].push_back(k);
      if (is_source(*g_, v)) sourced_ = true;
      level_.push_back(level);
      fam_.push_back(fam);
    }
    for (std::size_t k = 0; k < g_->edge_count(); ++k) {
      std::vector<std::size_t> copies;
      for (std::size_t n = 0; n < level_[g_->src_index(k)].size(); ++n)
        copies.push_back(h_->edge_index(pair_name(g_->edges()[k].id, n)));
      copies_.push_back(copies);
    }
  }

  bool sourced_input() const override { return sourced_; }

  Diagram forward(const Diagram& d) const override {
    const FiniteCategory& cat = *cat_;
    Diagram r = empty_diagram(h_);
    auto cps = coproducts(d);
    for (std::size_t v = 0; v < level_.size(); ++v)
      for (std::size_t n = 0; n < level_[v].size(); ++n) r.obj[level_[v][n]] = cps[v][n].apex;
    for (std::size_t k = 0; k < copies_.size(); ++k) {
      std::size_t s = g_->src_index(k), t = g_->tgt_index(k);
      const Coproduct& to = cps[t][split_[k]];
      Morphism inj = to.injections[slot(t, k)];
      for (std::size_t n = 0; n < copies_[k].size(); ++n) {
        if (is_source(*g_, s)) {
          r.mor[copies_[k][n]] = inj;
          continue;
        }
        std::vector<Morphism> legs;
        for (std::size_t f : fam_[s][n]) legs.push_back(cat.compose(inj, d.mor[f]));
        r.mor[copies_[k][n]] = cat.cotuple(cps[s][n], legs, to.apex);
      }
    }
    return r;
  }

  DiagramMorphism forward(const Diagram& d, const Diagram& e,
                          const DiagramMorphism& t) const override {
    auto from = coproducts(d), to = coproducts(e);
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        if (is_source(*g_, v)) {
          r.components[level_[v][n]] = t.components[v];
          continue;
        }
        std::vector<Morphism> legs;
        for (std::size_t k : fam_[v][n]) legs.push_back(t.components[g_->src_index(k)]);
        r.components[level_[v][n]] = induced(*cat_, from[v][n], to[v][n], legs);
      }
    }
    return r;
  }

  Diagram backward(const Diagram& e) const override {
    const FiniteCategory& cat = *cat_;
    Diagram r = empty_diagram(g_);
    auto glued = glue(e);
    for (std::size_t v = 0; v < level_.size(); ++v) r.obj[v] = glued[v].apex;
    for (std::size_t k = 0; k < copies_.size(); ++k) {
      std::size_t s = g_->src_index(k), t = g_->tgt_index(k);
      std::vector<Morphism> legs;
      for (std::size_t x : copies_[k])
        legs.push_back(cat.compose(glued[t].injections[split_[k]], e.mor[x]));
      r.mor[k] = cat.cotuple(glued[s], legs, glued[t].apex);
    }
    return r;
  }

  DiagramMorphism backward(const Diagram& d, const Diagram& e,
                           const DiagramMorphism& t) const override {
    auto from = glue(d), to = glue(e);
    DiagramMorphism r;
    for (std::size_t v = 0; v < level_.size(); ++v) {
      std::vector<Morphism> legs;
      for (std::size_t x : level_[v]) legs.push_back(t.components[x]);
      r.components.push_back(induced(*cat_, from[v], to[v], legs));
    }
    return r;
  }

  DiagramMorphism counit(const Diagram& e) const override {
    const FiniteCategory& cat = *cat_;
    Diagram de = backward(e);
    auto cps = coproducts(de);
    auto glued = glue(e);
    DiagramMorphism r;
    r.components.assign(h_->vertex_count(), {});
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        std::size_t x = level_[v][n];
        if (is_source(*g_, v)) {
          // The glued object over a single level is that level itself.
          r.components[x] = cat.identity(e.obj[x]);
          continue;
        }
        std::vector<Morphism> legs;
        for (std::size_t k : fam_[v][n]) {
          std::vector<Morphism> inner;
          for (std::size_t c : copies_[k]) inner.push_back(e.mor[c]);
          legs.push_back(cat.cotuple(glued[g_->src_index(k)], inner, e.obj[x]));
        }
        r.components[x] = cat.cotuple(cps[v][n], legs, e.obj[x]);
      }
    }
    return r;
  }

 private:
  std::size_t slot(std::size_t v, std::size_t k) const {
    const auto& f = fam_[v][split_[k]];
    return static_cast<std::size_t>(std::find(f.begin(), f.end(), k) - f.begin());
  }

  std::vector<std::vector<Coproduct>> coproducts(const Diagram& d) const {
    std::vector<std::vector<Coproduct>> out(level_.size());
    for (std::size_t v = 0; v < level_.size(); ++v) {
      for (std::size_t n = 0; n < level_[v].size(); ++n) {
        if (is_source(*g_, v)) {
          out[v].push_back(Coproduct{d.obj[v], {cat_->identity(d.obj[v])}});
          continue;
        }
        std::vector<int> f;
        for (std::size_t k : fam_[v][n]) f.push_back(d.obj[g_->src_index(k)]);
        out[v].push_back(need_coproduct(*cat_, f, h_->vertices()[level_[v][n]]));
      }
    }
    return out;
  }

  // Coproduct of the levels (v,0..p(v)) of a target diagram.
  std::vector<Coproduct> glue(const Diagram& e) const {
    std::vector<Coproduct> out;
    for (std::size_t v = 0; v < level_.size(); ++v) {
      std::vector<int> f;
      for (std::size_t x : level_[v]) f.push_back(e.obj[x]);
      out.push_back(need_coproduct(*cat_, f, g_->vertices()[v]));
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> level_, copies_;
  std::vector<std::vector<std::vector<std::size_t>>> fam_;
  std::vector<std::size_t> split_;
  bool sourced_ = false;
};

// ------------------------------------------------------------------ corrupted

class Corrupted final : public DiagramFunctorPair {
 public:
  explicit Corrupted(FunctorPairPtr inner)
      : DiagramFunctorPair(inner->move() + "(corrupted)", inner->category_ptr(),
                           inner->source_graph(), inner->target_graph()),
        inner_(std::move(inner)) {}

  bool sourced_input() const override { return inner_->sourced_input(); }

  Diagram forward(const Diagram& d) const override {
    Diagram r = inner_->forward(d);
    if (cat_->is_poset()) return corrupt_poset(r);
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < r.mor.size(); ++k) {
      if (!cat_->perturb(r.mor[k])) continue;
      if (!pick) pick = k;
      if (r.mor[k].src == r.mor[k].tgt && r.mor[k] == cat_->identity(r.mor[k].src)) {
        pick = k;
        break;
      }
    }
    if (pick) r.mor[*pick] = *cat_->perturb(r.mor[*pick]);
    return r;
  }

  DiagramMorphism forward(const Diagram& d, const Diagram& e,
                          const DiagramMorphism& t) const override {
    return inner_->forward(d, e, t);
  }
  Diagram backward(const Diagram& e) const override { return inner_->backward(e); }
  DiagramMorphism backward(const Diagram& d, const Diagram& e,
                           const DiagramMorphism& t) const override {
    return inner_->backward(d, e, t);
  }
  DiagramMorphism counit(const Diagram& e) const override { return inner_->counit(e); }

 private:
  // Moves the object at the first non-source vertex where some other value
  // keeps the diagram well typed but breaks the coproduct condition.
  Diagram corrupt_poset(const Diagram& r) const {
    const auto& pc = static_cast<const PosetCategory&>(*cat_);
    const DirectedGraph& h = *h_;
    std::optional<Diagram> fallback;
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
      if (is_source(h, v)) continue;
      for (int x = 0; x < pc.object_count(); ++x) {
        if (x == r.obj[v]) continue;
        auto obj = r.obj;
        obj[v] = x;
        bool typed = true;
        for (std::size_t k = 0; k < h.edge_count(); ++k)
          typed = typed && pc.leq(obj[h.src_index(k)], obj[h.tgt_index(k)]);
        if (!typed) {
          if (!fallback) {
            fallback = r;
            fallback->obj[v] = x;
            for (std::size_t k = 0; k < h.edge_count(); ++k)
              fallback->mor[k] = {obj[h.src_index(k)], obj[h.tgt_index(k)], {}};
          }
          continue;
        }
        Diagram c = poset_diagram(pc, h_, obj);
        if (!satisfies_coproduct_condition(pc, c)) return c;
      }
    }
    return fallback ? *fallback : r;
  }

  FunctorPairPtr inner_;
};

}  // namespace

FunctorPairPtr sink_removal_pair(CategoryPtr cat, GraphPtr g, const std::string& w) {
  return std::make_shared<SinkRemoval>(std::move(cat), std::move(g), w);
}
FunctorPairPtr out_delay_pair(CategoryPtr cat, GraphPtr g, const OutDelaySpec& spec) {
  return std::make_shared<OutDelay>(std::move(cat), std::move(g), spec);
}
FunctorPairPtr in_delay_pair(CategoryPtr cat, GraphPtr g, const InDelaySpec& spec) {
  return std::make_shared<InDelay>(std::move(cat), std::move(g), spec);
}
FunctorPairPtr out_split_pair(CategoryPtr cat, GraphPtr g, const OutSplitSpec& spec) {
  return std::make_shared<OutSplit>(std::move(cat), std::move(g), spec);
}
FunctorPairPtr in_split_pair(CategoryPtr cat, GraphPtr g, const InSplitSpec& spec) {
  return std::make_shared<InSplit>(std::move(cat), std::move(g), spec);
}
FunctorPairPtr corrupted(FunctorPairPtr inner) {
  return std::make_shared<Corrupted>(std::move(inner));
}

}  // namespace flowcat
