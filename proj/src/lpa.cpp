#include "flowcat/lpa.hpp"

#include "flowcat/error.hpp"

namespace flowcat {

LpaOperators build_module_operators(const MatCategory& cat, const Diagram& d) {
  check_well_typed(cat, d);
  const DirectedGraph& g = *d.graph;
  g.require_finite("build_module_operators");
  const int q = cat.field();

  LpaOperators ops;
  ops.q = q;
  ops.graph = d.graph;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto n = static_cast<std::size_t>(d.obj[v]);
    ops.blocks.push_back({ops.total_dim, n, 0});
    ops.total_dim += n;
  }
  const std::size_t N = ops.total_dim;

  for (const auto& b : ops.blocks) {
    FqMatrix p(q, N, N);
    p.set_block(b.offset, b.offset, FqMatrix::identity(q, b.dim));
    ops.P.push_back(p);
  }
  ops.A.assign(g.edge_count(), FqMatrix(q, N, N));
  ops.A_star.assign(g.edge_count(), FqMatrix(q, N, N));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto& s = ops.blocks[g.src_index(k)];
    const auto& t = ops.blocks[g.tgt_index(k)];
    ops.A[k].set_block(t.offset, s.offset, cat.matrix(d.mor[k]));
  }

  // A_e* is the e-th coordinate of the inverse cotuple at t(e).
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& in = g.in_edges(v);
    if (in.empty()) continue;
    std::vector<int> fam;
    std::vector<Morphism> legs;
    for (std::size_t k : in) {
      fam.push_back(d.obj[g.src_index(k)]);
      legs.push_back(d.mor[k]);
    }
    auto c = cat.coproduct(fam);
    if (!c) throw Error(ErrorKind::NoCoproduct, "no coproduct at " + g.vertices()[v]);
    auto inv = cat.inverse(cat.cotuple(*c, legs, d.obj[v]));
    if (!inv)
      throw Error(ErrorKind::InvalidArgument,
                  "the cotuple at " + g.vertices()[v] + " is not invertible");
    FqMatrix phi_inv = cat.matrix(*inv);
    const auto& t = ops.blocks[v];
    std::size_t row = 0;
    for (std::size_t k : in) {
      const auto& s = ops.blocks[g.src_index(k)];
      ops.A_star[k].set_block(s.offset, t.offset, phi_inv.block(row, 0, s.dim, t.dim));
      row += s.dim;
    }
  }
  return ops;
}

std::vector<RelationCheck> check_leavitt_relations(const LpaOperators& ops) {
  const DirectedGraph& g = *ops.graph;
  const std::size_t N = ops.total_dim;
  const FqMatrix zero(ops.q, N, N);
  std::vector<RelationCheck> out(5);
  for (int i = 0; i < 5; ++i) out[i].relation = i + 1;
  auto fail = [&](int rel, std::string what) {
    out[rel - 1].pass = false;
    out[rel - 1].failures.push_back(std::move(what));
  };
  const auto& vs = g.vertices();
  auto eid = [&](std::size_t k) { return g.edges()[k].id; };

  for (std::size_t u = 0; u < vs.size(); ++u)
    for (std::size_t v = 0; v < vs.size(); ++v)
      if (++out[0].checked, ops.P[u] * ops.P[v] != (u == v ? ops.P[v] : zero))
        fail(1, "P_" + vs[u] + " P_" + vs[v]);

  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto& Ps = ops.P[g.src_index(k)];
    const auto& Pt = ops.P[g.tgt_index(k)];
    ++out[1].checked;
    ++out[2].checked;
    if (Pt * ops.A[k] != ops.A[k] || ops.A[k] * Ps != ops.A[k]) fail(2, eid(k));
    if (Ps * ops.A_star[k] != ops.A_star[k] || ops.A_star[k] * Pt != ops.A_star[k])
      fail(3, eid(k));
  }

  for (std::size_t e = 0; e < g.edge_count(); ++e)
    for (std::size_t f = 0; f < g.edge_count(); ++f)
      if (++out[3].checked, ops.A_star[e] * ops.A[f] != (e == f ? ops.P[g.src_index(e)] : zero))
        fail(4, eid(e) + "* " + eid(f));

  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (g.in_edges(v).empty()) continue;
    ++out[4].checked;
    FqMatrix sum = zero;
    for (std::size_t k : g.in_edges(v)) sum = sum + ops.A[k] * ops.A_star[k];
    if (sum != ops.P[v]) fail(5, vs[v]);
  }
  return out;
}

bool check_unital_action(const LpaOperators& ops) {
  FqMatrix sum(ops.q, ops.total_dim, ops.total_dim);
  for (const auto& p : ops.P) sum = sum + p;
  return sum == FqMatrix::identity(ops.q, ops.total_dim);
}

FqMatrix module_map(const MatCategory& cat, const LpaOperators& from, const LpaOperators& to,
                    const DiagramMorphism& t) {
  FqMatrix m(from.q, to.total_dim, from.total_dim);
  for (std::size_t v = 0; v < from.blocks.size(); ++v)
    m.set_block(to.blocks[v].offset, from.blocks[v].offset, cat.matrix(t.components[v]));
  return m;
}

std::vector<std::string> noncommuting_generators(const MatCategory& cat,
                                                 const LpaOperators& from,
                                                 const LpaOperators& to,
                                                 const DiagramMorphism& t) {
  const DirectedGraph& g = *from.graph;
  FqMatrix m = module_map(cat, from, to, t);
  std::vector<std::string> bad;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (m * from.P[v] != to.P[v] * m) bad.push_back("P_" + g.vertices()[v]);
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (m * from.A[k] != to.A[k] * m) bad.push_back("A_" + g.edges()[k].id);
    if (m * from.A_star[k] != to.A_star[k] * m) bad.push_back("A_" + g.edges()[k].id + "*");
  }
  return bad;
}

}  // namespace flowcat
