#pragma once

#include <memory>
#include <string>

#include "flowcat/category.hpp"
#include "flowcat/diagram.hpp"
#include "flowcat/moves.hpp"

namespace flowcat {

/// Forward functor Diag(G) -> Diag(move(G)) and its quasi-inverse, acting on
/// diagrams and on diagram morphisms.
///
/// Morphism maps take the domain and codomain diagrams explicitly because the
/// induced maps between coproducts depend on them.
class DiagramFunctorPair {
 public:
  DiagramFunctorPair(std::string move, CategoryPtr cat, GraphPtr source, GraphPtr target)
      : move_(std::move(move)), cat_(std::move(cat)), g_(std::move(source)), h_(std::move(target)) {}
  virtual ~DiagramFunctorPair() = default;

  const std::string& move() const { return move_; }
  const FiniteCategory& category() const { return *cat_; }
  CategoryPtr category_ptr() const { return cat_; }
  GraphPtr source_graph() const { return g_; }
  GraphPtr target_graph() const { return h_; }
  /// True when the move's own construction assumed no sources and sources
  /// were handled by treating each as its own one-edge coproduct.
  virtual bool sourced_input() const { return false; }

  virtual Diagram forward(const Diagram& d) const = 0;
  virtual DiagramMorphism forward(const Diagram& d, const Diagram& e,
                                  const DiagramMorphism& t) const = 0;
  virtual Diagram backward(const Diagram& e) const = 0;
  virtual DiagramMorphism backward(const Diagram& d, const Diagram& e,
                                   const DiagramMorphism& t) const = 0;
  /// The explicit natural isomorphism forward(backward(e)) -> e.
  virtual DiagramMorphism counit(const Diagram& e) const = 0;

 protected:
  std::string move_;
  CategoryPtr cat_;
  GraphPtr g_, h_;
};

using FunctorPairPtr = std::shared_ptr<const DiagramFunctorPair>;

FunctorPairPtr sink_removal_pair(CategoryPtr cat, GraphPtr g, const std::string& w);
FunctorPairPtr out_delay_pair(CategoryPtr cat, GraphPtr g, const OutDelaySpec& spec);
FunctorPairPtr in_delay_pair(CategoryPtr cat, GraphPtr g, const InDelaySpec& spec);
FunctorPairPtr out_split_pair(CategoryPtr cat, GraphPtr g, const OutSplitSpec& spec);
FunctorPairPtr in_split_pair(CategoryPtr cat, GraphPtr g, const InSplitSpec& spec);

/// Negative control: the forward diagram has one edge map replaced (an
/// identity if there is one) or, in posets, one object moved so that the
/// coproduct condition breaks.
FunctorPairPtr corrupted(FunctorPairPtr inner);

}  // namespace flowcat
