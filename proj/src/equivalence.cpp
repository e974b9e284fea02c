#include "flowcat/equivalence.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "flowcat/error.hpp"

namespace flowcat {
namespace {

constexpr std::size_t kMaxCounterexamples = 8;

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

struct Side {
  std::vector<Diagram> diagrams;
  bool exhaustive = false;
};

Side sample_side(const FiniteCategory& cat, GraphPtr g, const EquivalenceOptions& opts,
                 std::uint64_t salt) {
  Side side;
  EnumerateOptions eo;
  eo.bound = opts.bound;
  eo.parallel = opts.parallel;
  NodeBudget budget(opts.node_cap);
  eo.budget = &budget;
  if (cat.is_poset()) {
    side.diagrams = enumerate_diagrams(cat, g, eo);
    side.exhaustive = true;
  } else {
    int bound = opts.bound < 0 ? cat.object_count() - 1 : opts.bound;
    auto dims = solve_dimension_vectors(*g, bound, &budget);
    std::uint64_t total = 0;
    for (const auto& n : dims) {
      total += count_diagrams_with_sizes(cat, *g, n);
      if (total > opts.exhaustive_limit) break;
    }
    if (total <= opts.exhaustive_limit) {
      side.diagrams = enumerate_diagrams(cat, g, eo);
      side.exhaustive = true;
      return side;
    }
    for (int i = 0; i < opts.samples; ++i) {
      auto rng = trial_rng(opts.seed, salt, static_cast<std::uint64_t>(i));
      std::uniform_int_distribution<std::size_t> pick(0, dims.size() - 1);
      side.diagrams.push_back(random_diagram(cat, g, dims[pick(rng)], rng));
    }
    return side;
  }
  if (side.diagrams.size() > opts.exhaustive_limit) {
    auto rng = trial_rng(opts.seed, salt, 0);
    std::shuffle(side.diagrams.begin(), side.diagrams.end(), rng);
    side.diagrams.resize(static_cast<std::size_t>(opts.samples));
    side.exhaustive = false;
  }
  return side;
}

std::vector<int> key(const DiagramMorphism& t) {
  std::vector<int> k;
  for (const auto& m : t.components) {
    k.push_back(m.src);
    k.push_back(m.tgt);
    k.insert(k.end(), m.data.begin(), m.data.end());
    k.push_back(-1);
  }
  return k;
}

struct TrialResult {
  std::vector<Counterexample> found;
  std::size_t coproduct = 0, functorial = 0, round_trip = 0, hom = 0;
  std::size_t bound_skips = 0, hom_skips = 0;
  std::string cap;
};

class Runner {
 public:
  Runner(const DiagramFunctorPair& pair, const EquivalenceOptions& opts, const Side& src,
         const Side& tgt)
      : pair_(pair), cat_(pair.category()), opts_(opts), src_(src), tgt_(tgt) {}

  // Forward direction, one source diagram per trial.
  void source_trial(std::size_t i, TrialResult& r) const {
    auto rng = trial_rng(opts_.seed, 11, i);
    const Diagram& d = src_.diagrams[i];
    std::optional<Diagram> fd;
    try {
      fd = pair_.forward(d);
      ++r.coproduct;
      check_well_typed(cat_, *fd);
      if (auto bad = check_coproduct_condition(cat_, *fd).first_failure()) {
        fail(r, "coproduct", "forward of " + describe(cat_, d) + " fails at " + bad->vertex +
                                 " (" + bad->reason + ")");
        return;
      }
    } catch (const Error& e) {
      if (!handle_cap(e, r))
        fail(r, "coproduct", "forward of " + describe(cat_, d) + ": " + e.what());
      return;
    }
    try {
      ++r.round_trip;
      Diagram back = pair_.backward(*fd);
      NodeBudget budget(opts_.node_cap);
      if (!diagram_isomorphic(cat_, back, d, &budget))
        fail(r, "round_trip", "backward(forward(" + describe(cat_, d) + ")) = " +
                                  describe(cat_, back) + " is not isomorphic to it");
    } catch (const Error& e) {
      if (!handle_cap(e, r)) fail(r, "round_trip", describe(cat_, d) + ": " + e.what());
    }
    try {
      ++r.functorial;
      functor_laws_forward(d, *fd, rng, r);
    } catch (const Error& e) {
      if (!handle_cap(e, r)) fail(r, "functorial", describe(cat_, d) + ": " + e.what());
    }
    try {
      hom_check(i, rng, r);
    } catch (const Error& e) {
      if (!handle_cap(e, r)) fail(r, "hom_bijective", describe(cat_, d) + ": " + e.what());
    }
  }

  // Backward direction and the counit, one target diagram per trial.
  void target_trial(std::size_t i, TrialResult& r) const {
    auto rng = trial_rng(opts_.seed, 17, i);
    const Diagram& e = tgt_.diagrams[i];
    std::optional<Diagram> be;
    try {
      be = pair_.backward(e);
      ++r.coproduct;
      check_well_typed(cat_, *be);
      if (auto bad = check_coproduct_condition(cat_, *be).first_failure()) {
        fail(r, "coproduct", "backward of " + describe(cat_, e) + " fails at " + bad->vertex +
                                 " (" + bad->reason + ")");
        return;
      }
    } catch (const Error& ex) {
      if (ex.kind() == ErrorKind::NoCoproduct && !cat_.is_poset()) {
        ++r.bound_skips;
      } else if (!handle_cap(ex, r)) {
        fail(r, "coproduct", "backward of " + describe(cat_, e) + ": " + ex.what());
      }
      return;
    }
    try {
      ++r.round_trip;
      Diagram fbe = pair_.forward(*be);
      DiagramMorphism c = pair_.counit(e);
      auto why = naturality_failure(cat_, fbe, e, c);
      if (why)
        fail(r, "round_trip", "counit at " + describe(cat_, e) + " is not natural at " + *why);
      else if (!is_iso(cat_, c))
        fail(r, "round_trip", "counit at " + describe(cat_, e) + " is not invertible");
    } catch (const Error& ex) {
      if (!handle_cap(ex, r)) fail(r, "round_trip", describe(cat_, e) + ": " + ex.what());
    }
    try {
      ++r.functorial;
      functor_laws_backward(e, *be, rng, r);
    } catch (const Error& ex) {
      if (ex.kind() == ErrorKind::NoCoproduct && !cat_.is_poset()) return;
      if (!handle_cap(ex, r)) fail(r, "functorial", describe(cat_, e) + ": " + ex.what());
    }
  }

 private:
  void fail(TrialResult& r, const std::string& check, const std::string& detail) const {
    r.found.push_back({check, detail});
  }

  bool handle_cap(const Error& e, TrialResult& r) const {
    if (e.kind() != ErrorKind::CapExceeded) return false;
    if (r.cap.empty()) r.cap = e.what();
    return true;
  }

  const Diagram& pick(const std::vector<Diagram>& ds, std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> u(0, ds.size() - 1);
    return ds[u(rng)];
  }

  void functor_laws_forward(const Diagram& d, const Diagram& fd, std::mt19937_64& rng,
                            TrialResult& r) const {
    if (pair_.forward(d, d, identity_morphism(cat_, d)) != identity_morphism(cat_, fd)) {
      fail(r, "functorial", "forward does not preserve the identity at " + describe(cat_, d));
      return;
    }
    const Diagram& d2 = pick(src_.diagrams, rng);
    const Diagram& d3 = pick(src_.diagrams, rng);
    NodeBudget budget(opts_.node_cap);
    auto t = random_diagram_morphism(cat_, d, d2, rng, &budget);
    auto s = random_diagram_morphism(cat_, d2, d3, rng, &budget);
    if (!t) return;
    Diagram fd2 = pair_.forward(d2);
    DiagramMorphism ft = pair_.forward(d, d2, *t);
    if (auto why = naturality_failure(cat_, fd, fd2, ft)) {
      fail(r, "functorial", "image of a morphism out of " + describe(cat_, d) +
                                " is not natural at " + *why);
      return;
    }
    if (!s) return;
    DiagramMorphism lhs = pair_.forward(d, d3, compose(cat_, *s, *t));
    DiagramMorphism rhs = compose(cat_, pair_.forward(d2, d3, *s), ft);
    if (lhs != rhs)
      fail(r, "functorial", "forward does not preserve a composite out of " + describe(cat_, d));
  }

  void functor_laws_backward(const Diagram& e, const Diagram& be, std::mt19937_64& rng,
                             TrialResult& r) const {
    if (pair_.backward(e, e, identity_morphism(cat_, e)) != identity_morphism(cat_, be)) {
      fail(r, "functorial", "backward does not preserve the identity at " + describe(cat_, e));
      return;
    }
    const Diagram& e2 = pick(tgt_.diagrams, rng);
    const Diagram& e3 = pick(tgt_.diagrams, rng);
    NodeBudget budget(opts_.node_cap);
    auto t = random_diagram_morphism(cat_, e, e2, rng, &budget);
    if (!t) return;
    Diagram be2 = pair_.backward(e2);
    DiagramMorphism bt = pair_.backward(e, e2, *t);
    if (auto why = naturality_failure(cat_, be, be2, bt)) {
      fail(r, "functorial", "image of a morphism out of " + describe(cat_, e) +
                                " is not natural at " + *why);
      return;
    }
    auto s = random_diagram_morphism(cat_, e2, e3, rng, &budget);
    if (!s) return;
    DiagramMorphism lhs = pair_.backward(e, e3, compose(cat_, *s, *t));
    DiagramMorphism rhs = compose(cat_, pair_.backward(e2, e3, *s), bt);
    if (lhs != rhs)
      fail(r, "functorial", "backward does not preserve a composite out of " + describe(cat_, e));
  }

  // Compares Hom(d, d') with Hom(F d, F d') through F, for every d' when the
  // side is small and for two partners otherwise.
  void hom_check(std::size_t i, std::mt19937_64& rng, TrialResult& r) const {
    const auto& ds = src_.diagrams;
    std::vector<std::size_t> partners;
    if (ds.size() * ds.size() <= opts_.exhaustive_limit) {
      for (std::size_t j = 0; j < ds.size(); ++j) partners.push_back(j);
    } else {
      std::uniform_int_distribution<std::size_t> u(0, ds.size() - 1);
      partners = {i, u(rng)};
    }
    const Diagram& d = ds[i];
    Diagram fd = pair_.forward(d);
    for (std::size_t j : partners) {
      const Diagram& d2 = ds[j];
      Diagram fd2 = pair_.forward(d2);
      NodeBudget local(opts_.hom_node_cap);
      std::vector<DiagramMorphism> homs, images;
      try {
        homs = diagram_homs(cat_, d, d2, &local);
        images = diagram_homs(cat_, fd, fd2, &local);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        ++r.hom_skips;
        continue;
      }
      ++r.hom;
      std::set<std::vector<int>> seen, target;
      for (const auto& m : images) target.insert(key(m));
      bool ok = true;
      for (const auto& t : homs) {
        auto k = key(pair_.forward(d, d2, t));
        if (!target.count(k) || !seen.insert(k).second) ok = false;
      }
      if (!ok || seen.size() != target.size()) {
        std::ostringstream os;
        os << "Hom(" << describe(cat_, d) << ", " << describe(cat_, d2) << ") has "
           << homs.size() << " elements, its image " << seen.size() << ", and the target hom-set "
           << target.size();
        fail(r, "hom_bijective", os.str());
      }
    }
  }

  const DiagramFunctorPair& pair_;
  const FiniteCategory& cat_;
  const EquivalenceOptions& opts_;
  const Side& src_;
  const Side& tgt_;
};

}  // namespace

std::string describe(const FiniteCategory& cat, const Diagram& d) {
  std::ostringstream os;
  os << "{";
  for (std::size_t v = 0; v < d.obj.size(); ++v) {
    if (v) os << ", ";
    os << d.graph->vertices()[v] << ": " << cat.object_name(d.obj[v]);
  }
  os << "}";
  if (!cat.is_poset() && !d.mor.empty()) {
    os << " with ";
    for (std::size_t k = 0; k < d.mor.size(); ++k) {
      if (k) os << ", ";
      os << d.graph->edges()[k].id << " = " << cat.to_string(d.mor[k]);
    }
  }
  return os.str();
}

EquivalenceReport verify_equivalence(const DiagramFunctorPair& pair,
                                     const EquivalenceOptions& opts_in) {
  const EquivalenceOptions& opts = opts_in;

  EquivalenceReport rep;
  rep.move = pair.move();
  rep.category = pair.category().spec();
  rep.seed = opts.seed;
  rep.samples = opts.samples;
  rep.node_cap = opts.node_cap;
  rep.sourced_input = pair.sourced_input();

  Side src, tgt;
  try {
    src = sample_side(pair.category(), pair.source_graph(), opts, 3);
    tgt = sample_side(pair.category(), pair.target_graph(), opts, 5);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    rep.inconclusive = true;
    rep.inconclusive_reason = e.what();
    return rep;
  }
  rep.source_diagrams = src.diagrams.size();
  rep.target_diagrams = tgt.diagrams.size();
  rep.source_exhaustive = src.exhaustive;
  rep.target_exhaustive = tgt.exhaustive;

  Runner runner(pair, opts, src, tgt);
  const std::size_t ns = src.diagrams.size(), nt = tgt.diagrams.size();
  std::vector<TrialResult> results(ns + nt);
  const long long total = static_cast<long long>(ns + nt);
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (long long i = 0; i < total; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      if (k < ns)
        runner.source_trial(k, results[k]);
      else
        runner.target_trial(k - ns, results[k]);
    } catch (const std::exception& e) {
      results[k].found.push_back({"internal", e.what()});
    }
  }

  std::vector<Counterexample> found;
  for (auto& r : results) {
    rep.coproduct.tested += r.coproduct;
    rep.functorial.tested += r.functorial;
    rep.round_trip.tested += r.round_trip;
    rep.hom_bijective.tested += r.hom;
    rep.bound_skips += r.bound_skips;
    rep.hom_skips += r.hom_skips;
    if (!r.cap.empty() && !rep.inconclusive) {
      rep.inconclusive = true;
      rep.inconclusive_reason = r.cap;
    }
    for (auto& c : r.found) {
      if (c.check == "coproduct") rep.coproduct.pass = false;
      else if (c.check == "functorial") rep.functorial.pass = false;
      else if (c.check == "round_trip") rep.round_trip.pass = false;
      else if (c.check == "hom_bijective") rep.hom_bijective.pass = false;
      else {
        rep.inconclusive = true;
        if (rep.inconclusive_reason.empty()) rep.inconclusive_reason = c.detail;
      }
      found.push_back(c);
    }
  }
  // Earlier checks first; within a check, trial order.
  auto rank = [](const Counterexample& c) {
    static const std::vector<std::string> order{"coproduct", "functorial", "round_trip",
                                                "hom_bijective"};
    return std::find(order.begin(), order.end(), c.check) - order.begin();
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
  if (found.size() > kMaxCounterexamples) found.resize(kMaxCounterexamples);
  rep.counterexamples = std::move(found);
  rep.hom_exhaustive = src.exhaustive && rep.hom_skips == 0 && ns * ns <= opts.exhaustive_limit;
  return rep;
}

}  // namespace flowcat
