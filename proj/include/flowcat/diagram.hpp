#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flowcat/category.hpp"
#include "flowcat/graph.hpp"
#include "flowcat/limits.hpp"

namespace flowcat {

using GraphPtr = std::shared_ptr<const DirectedGraph>;

/// Objects by vertex index, morphisms by edge index. In poset categories an
/// infinite bundle carries no morphism of its own and only asks for
/// obj[src] <= obj[tgt]; other categories reject graphs with bundles.
struct Diagram {
  GraphPtr graph;
  std::vector<int> obj;
  std::vector<Morphism> mor;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return *a.graph == *b.graph && a.obj == b.obj && a.mor == b.mor;
  }
};

/// Components by vertex index.
struct DiagramMorphism {
  std::vector<Morphism> components;

  friend bool operator==(const DiagramMorphism&, const DiagramMorphism&) = default;
};

struct VertexCheck {
  std::string vertex;
  bool pass = true;
  std::string reason;  // "", "not_iso" or "no_coproduct"
};

struct CoproductReport {
  std::vector<VertexCheck> vertices;  // one entry per non-source vertex
  bool ok() const;
  /// First failing vertex, if any.
  std::optional<VertexCheck> first_failure() const;
};

/// Throws IllTyped when a morphism has the wrong type, Unsupported for bundles
/// outside posets.
void check_well_typed(const FiniteCategory& cat, const Diagram& d);
CoproductReport check_coproduct_condition(const FiniteCategory& cat, const Diagram& d);
bool satisfies_coproduct_condition(const FiniteCategory& cat, const Diagram& d);

/// Poset diagrams carry no data on edges; this fills them in from the objects.
Diagram poset_diagram(const PosetCategory& cat, GraphPtr g, std::vector<int> obj);

/// All n : V -> {0..bound} with n_v = sum of n_s(e) over t(e) = v at every
/// non-source v, in lexicographic order over vertex order.
std::vector<std::vector<int>> solve_dimension_vectors(const DirectedGraph& g, int bound,
                                                      NodeBudget* budget = nullptr);

struct EnumerateOptions {
  int bound = -1;           // largest object for finset/mat; -1 means the category's
  bool parallel = true;     // split by the first vertex's object
  NodeBudget* budget = nullptr;
};

/// Every diagram satisfying the coproduct condition, in deterministic order.
std::vector<Diagram> enumerate_diagrams(const FiniteCategory& cat, GraphPtr g,
                                        const EnumerateOptions& opts = {});
/// Single-threaded reference with the same output.
std::vector<Diagram> enumerate_diagrams_serial(const FiniteCategory& cat, GraphPtr g,
                                               const EnumerateOptions& opts = {});
/// Number of diagrams per feasible size vector, without materialising them
/// (finset/mat only).
std::uint64_t count_diagrams_with_sizes(const FiniteCategory& cat, const DirectedGraph& g,
                                        const std::vector<int>& sizes);

/// Naturality of T : d -> e. Throws IllTyped on a badly typed component.
bool check_diagram_morphism(const FiniteCategory& cat, const Diagram& d, const Diagram& e,
                            const DiagramMorphism& t);
/// The first edge whose square fails, if any.
std::optional<std::string> naturality_failure(const FiniteCategory& cat, const Diagram& d,
                                              const Diagram& e, const DiagramMorphism& t);

DiagramMorphism identity_morphism(const FiniteCategory& cat, const Diagram& d);
/// s o t
DiagramMorphism compose(const FiniteCategory& cat, const DiagramMorphism& s,
                        const DiagramMorphism& t);
bool is_iso(const FiniteCategory& cat, const DiagramMorphism& t);
std::optional<DiagramMorphism> inverse(const FiniteCategory& cat, const DiagramMorphism& t);

/// Visits every natural transformation d -> e (only isomorphisms when
/// `isos_only`). Stops early when the visitor returns false.
void for_each_diagram_morphism(const FiniteCategory& cat, const Diagram& d, const Diagram& e,
                               bool isos_only,
                               const std::function<bool(const DiagramMorphism&)>& visit,
                               NodeBudget* budget = nullptr);
std::vector<DiagramMorphism> diagram_homs(const FiniteCategory& cat, const Diagram& d,
                                          const Diagram& e, NodeBudget* budget = nullptr);
std::optional<DiagramMorphism> diagram_isomorphic(const FiniteCategory& cat, const Diagram& d,
                                                  const Diagram& e,
                                                  NodeBudget* budget = nullptr);

/// Uniformly random diagram with the given feasible sizes (finset/mat).
Diagram random_diagram(const FiniteCategory& cat, GraphPtr g, const std::vector<int>& sizes,
                       std::mt19937_64& rng);
/// Random element of Hom(d, e) (uniform in mat, from enumeration otherwise).
std::optional<DiagramMorphism> random_diagram_morphism(const FiniteCategory& cat,
                                                       const Diagram& d, const Diagram& e,
                                                       std::mt19937_64& rng,
                                                       NodeBudget* budget = nullptr);

}  // namespace flowcat
