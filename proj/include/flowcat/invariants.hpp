#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "flowcat/graph.hpp"
#include "flowcat/int_matrix.hpp"

namespace flowcat {

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntMatrix& m);

/// One unimodular step of a Smith normal form reduction. `Combine` replaces
/// the pair (line i, line j) by (a*i + b*j, c*i + d*j) with ad - bc = +-1;
/// a swap is the combine (0,1,1,0) and a negation of line i is (-1,0,0,1).
struct SnfStep {
  enum class Axis { Row, Col };
  Axis axis;
  std::size_t i, j;
  mpz_class a, b, c, d;
};

struct SmithForm {
  /// d_1 | d_2 | ... with d_k >= 0; length min(rows, cols).
  std::vector<mpz_class> divisors;
  std::vector<SnfStep> steps;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Applies a step log to a matrix. Throws InvalidArgument if a step is not
/// unimodular or indexes out of range.
IntMatrix replay_snf(const IntMatrix& m, const std::vector<SnfStep>& steps);

struct BowenFranksGroup {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // entries > 1, each dividing the next

  friend bool operator==(const BowenFranksGroup&, const BowenFranksGroup&) = default;
  std::string to_string() const;
};

mpz_class parry_sullivan(const DirectedGraph& g);
BowenFranksGroup bowen_franks(const DirectedGraph& g);

struct FranksVerdict {
  enum class Kind { Equivalent, NotEquivalent, OutOfScope };
  Kind kind;
  std::string reason;
};

/// Decides flow equivalence through the Parry-Sullivan number and the
/// Bowen-Franks group. Only irreducible non-trivial finite graphs are in scope.
FranksVerdict franks_equivalent(const DirectedGraph& g, const DirectedGraph& h);

const char* to_string(FranksVerdict::Kind k);

}  // namespace flowcat
