#pragma once

#include <string>
#include <vector>

#include "flowcat/category.hpp"
#include "flowcat/graph.hpp"

namespace flowcat {

struct CaseQuantity {
  std::string name;
  std::string computed;
  std::string expected;  // empty when the value is informational
  std::string basis;     // how the expected value is obtained
  bool matches() const { return expected.empty() || computed == expected; }
};

struct CaseReport {
  std::string name;
  std::vector<CaseQuantity> quantities;
  std::string verdict;
  std::vector<std::string> notes;

  bool all_match() const;
};

/// Diagram count on an acyclic graph against |objects|^(number of sources).
/// For finset/mat the comparison is on isomorphism classes.
CaseReport verify_acyclic_corollary(const FiniteCategory& cat, const DirectedGraph& g);

/// Diagram count against |P|^m, m the number of cohereditary irreducible
/// subsets, and the restriction to one vertex per source component checked
/// as an order isomorphism Diag -> P^m in both directions.
CaseReport verify_poset_corollary(const DirectedGraph& g, const PosetCategory& p);

/// Bundle lo -> hi: Diag_P(H+) against the arrow category of P.
CaseReport desingularisation_counterexample(const PosetCategory& p);

/// One vertex with two loops against its Cuntz splice.
CaseReport cuntz_splice_report();

DirectedGraph two_loop_graph();
DirectedGraph cuntz_splice_graph();

}  // namespace flowcat
