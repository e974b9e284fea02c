#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flowcat/category.hpp"
#include "flowcat/diagram.hpp"
#include "flowcat/fq.hpp"

namespace flowcat {

struct VertexBlock {
  std::size_t offset = 0;
  std::size_t dim = 0;
  std::size_t plus_dim = 0;  // the v+ summand; always 0 without infinite receivers
};

/// Generators of the path algebra acting on M = sum over v of D_v, as
/// total_dim x total_dim matrices over F_q. Indexed like the graph.
struct LpaOperators {
  int q = 2;
  std::size_t total_dim = 0;
  GraphPtr graph;
  std::vector<VertexBlock> blocks;
  std::vector<FqMatrix> P;       // by vertex
  std::vector<FqMatrix> A;       // by edge
  std::vector<FqMatrix> A_star;  // by edge
};

/// Needs a finite graph with no infinite receivers and a diagram over
/// mat:q:* that satisfies the coproduct condition. Throws InvalidArgument
/// otherwise, naming the vertex where the cotuple is not invertible.
LpaOperators build_module_operators(const MatCategory& cat, const Diagram& d);

struct RelationCheck {
  int relation = 0;  // 1..5
  bool pass = true;
  std::size_t checked = 0;  // instances of the relation that were tested
  std::vector<std::string> failures;
};

/// One entry per relation (1)..(5), in order.
std::vector<RelationCheck> check_leavitt_relations(const LpaOperators& ops);

/// Sum of the P_v is the identity.
bool check_unital_action(const LpaOperators& ops);

/// The block-diagonal matrix of T : d -> e, from M_d to M_e.
FqMatrix module_map(const MatCategory& cat, const LpaOperators& from, const LpaOperators& to,
                    const DiagramMorphism& t);
/// Generators (as "P_v", "A_e", "A_e*") that fail to commute with module_map(t).
std::vector<std::string> noncommuting_generators(const MatCategory& cat,
                                                 const LpaOperators& from,
                                                 const LpaOperators& to,
                                                 const DiagramMorphism& t);

}  // namespace flowcat
