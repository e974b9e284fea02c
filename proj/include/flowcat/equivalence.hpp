#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowcat/functors.hpp"
#include "flowcat/limits.hpp"

namespace flowcat {

struct EquivalenceOptions {
  int samples = 32;               // diagrams per side when not enumerating everything
  std::uint64_t seed = 0;
  int bound = -1;                 // largest object for finset/mat; -1 means the category's
  std::uint64_t exhaustive_limit = 4096;  // enumerate a side when it has at most this many
  std::uint64_t hom_node_cap = 4096;      // per pair; larger hom-sets are skipped
  bool parallel = true;
  std::uint64_t node_cap = max_nodes_from_env();  // per search, not per run
};

struct Counterexample {
  std::string check;   // "coproduct", "functorial", "round_trip", "hom_bijective"
  std::string detail;
};

struct CheckResult {
  bool pass = true;
  std::size_t tested = 0;
};

struct EquivalenceReport {
  std::string move;
  std::string category;
  std::uint64_t seed = 0;
  int samples = 0;
  std::uint64_t node_cap = 0;
  std::size_t source_diagrams = 0;  // checked on the original graph
  std::size_t target_diagrams = 0;  // checked on the moved graph
  bool source_exhaustive = false;
  bool target_exhaustive = false;
  CheckResult coproduct, functorial, round_trip, hom_bijective;
  bool hom_exhaustive = false;      // every pair of checked source diagrams was compared
  std::size_t hom_skips = 0;
  std::size_t bound_skips = 0;      // target diagrams whose preimage leaves the bound
  bool sourced_input = false;
  bool inconclusive = false;
  std::string inconclusive_reason;
  std::vector<Counterexample> counterexamples;

  bool passed() const {
    return !inconclusive && coproduct.pass && functorial.pass && round_trip.pass &&
           hom_bijective.pass;
  }
};

/// Checks that the pair maps diagrams to diagrams, is functorial, round-trips
/// up to isomorphism (with the counit natural and invertible), and is
/// bijective on hom-sets. Trials are seeded by (seed, index) and merged in
/// index order, so the report does not depend on the thread count.
EquivalenceReport verify_equivalence(const DiagramFunctorPair& pair,
                                     const EquivalenceOptions& opts = {});

std::string describe(const FiniteCategory& cat, const Diagram& d);

}  // namespace flowcat
