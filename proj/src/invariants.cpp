#include "flowcat/invariants.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "flowcat/error.hpp"

namespace flowcat {

mpz_class determinant(const IntMatrix& input) {
  if (!input.is_square())
    throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

void check_unimodular(const SnfStep& s, std::size_t limit) {
  if (s.i >= limit || s.j >= limit)
    throw Error(ErrorKind::InvalidArgument, "SNF step index out of range");
  if (s.i == s.j) {
    if (abs(s.a) != 1) throw Error(ErrorKind::InvalidArgument, "SNF scaling is not a unit");
    return;
  }
  mpz_class det = s.a * s.d - s.b * s.c;
  if (abs(det) != 1) throw Error(ErrorKind::InvalidArgument, "SNF step is not unimodular");
}

void apply_step(IntMatrix& m, const SnfStep& s) {
  const bool rows = s.axis == SnfStep::Axis::Row;
  check_unimodular(s, rows ? m.rows() : m.cols());
  const std::size_t len = rows ? m.cols() : m.rows();
  auto at = [&](std::size_t line, std::size_t k) -> mpz_class& {
    return rows ? m(line, k) : m(k, line);
  };
  if (s.i == s.j) {
    for (std::size_t k = 0; k < len; ++k) at(s.i, k) *= s.a;
    return;
  }
  for (std::size_t k = 0; k < len; ++k) {
    mpz_class x = at(s.i, k), y = at(s.j, k);
    at(s.i, k) = s.a * x + s.b * y;
    at(s.j, k) = s.c * x + s.d * y;
  }
}

class SnfReducer {
 public:
  explicit SnfReducer(IntMatrix m) : m_(std::move(m)) {}

  SmithForm run() {
    const std::size_t r = m_.rows(), c = m_.cols();
    const std::size_t lim = std::min(r, c);
    for (std::size_t t = 0; t < lim; ++t) {
      if (!place_pivot(t)) break;
      while (true) {
        clear_cross(t);
        auto bad = find_non_multiple(t);
        if (!bad) break;
        step(SnfStep::Axis::Row, t, *bad, 1, 1, 0, 1);  // row t += row bad
      }
      if (m_(t, t) < 0) step(SnfStep::Axis::Row, t, t, -1, 0, 0, 1);
    }
    SmithForm out;
    for (std::size_t k = 0; k < lim; ++k) out.divisors.push_back(m_(k, k));
    out.steps = std::move(steps_);
    return out;
  }

 private:
  void step(SnfStep::Axis axis, std::size_t i, std::size_t j, mpz_class a,
            mpz_class b, mpz_class c, mpz_class d) {
    SnfStep s{axis, i, j, std::move(a), std::move(b), std::move(c), std::move(d)};
    apply_step(m_, s);
    steps_.push_back(std::move(s));
  }

  // Moves a nonzero entry of least magnitude in the trailing block to (t,t).
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < m_.rows(); ++i)
      for (std::size_t j = t; j < m_.cols(); ++j) {
        if (m_(i, j) == 0) continue;
        if (!found || abs(m_(i, j)) < abs(m_(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    if (bi != t) step(SnfStep::Axis::Row, t, bi, 0, 1, 1, 0);
    if (bj != t) step(SnfStep::Axis::Col, t, bj, 0, 1, 1, 0);
    return true;
  }

  // Reduce (a, b) at positions (t, k) along the given axis so that b becomes 0
  // and a becomes gcd(a, b) up to sign.
  void eliminate(SnfStep::Axis axis, std::size_t t, std::size_t k) {
    const mpz_class& a = m_(t, t);
    const mpz_class& b = axis == SnfStep::Axis::Row ? m_(k, t) : m_(t, k);
    if (b == 0) return;
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      mpz_class q = b / a;
      step(axis, t, k, 1, 0, -q, 1);
      return;
    }
    mpz_class g, s, u;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class ag = a / g, bg = b / g;
    step(axis, t, k, s, u, -bg, ag);
  }

  void clear_cross(std::size_t t) {
    bool dirty = true;
    while (dirty) {
      for (std::size_t i = t + 1; i < m_.rows(); ++i) eliminate(SnfStep::Axis::Row, t, i);
      for (std::size_t j = t + 1; j < m_.cols(); ++j) eliminate(SnfStep::Axis::Col, t, j);
      dirty = false;
      for (std::size_t i = t + 1; i < m_.rows(); ++i) dirty = dirty || m_(i, t) != 0;
    }
  }

  std::optional<std::size_t> find_non_multiple(std::size_t t) const {
    for (std::size_t i = t + 1; i < m_.rows(); ++i)
      for (std::size_t j = t + 1; j < m_.cols(); ++j)
        if (!mpz_divisible_p(m_(i, j).get_mpz_t(), m_(t, t).get_mpz_t())) return i;
    return std::nullopt;
  }

  IntMatrix m_;
  std::vector<SnfStep> steps_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) { return SnfReducer(m).run(); }

IntMatrix replay_snf(const IntMatrix& m, const std::vector<SnfStep>& steps) {
  IntMatrix out = m;
  for (const auto& s : steps) apply_step(out, s);
  return out;
}

std::string BowenFranksGroup::to_string() const {
  std::string s = "Z^" + std::to_string(free_rank);
  for (const auto& t : torsion) s += " + Z/" + t.get_str();
  return s;
}

namespace {
IntMatrix identity_minus_adjacency(const DirectedGraph& g) {
  g.require_finite("Parry-Sullivan / Bowen-Franks");
  return IntMatrix::identity(g.vertex_count()) - adjacency_matrix(g);
}
}  // namespace

mpz_class parry_sullivan(const DirectedGraph& g) {
  return determinant(identity_minus_adjacency(g));
}

BowenFranksGroup bowen_franks(const DirectedGraph& g) {
  auto snf = smith_normal_form(identity_minus_adjacency(g));
  BowenFranksGroup bf;
  std::size_t rank = 0;
  for (const auto& d : snf.divisors) {
    if (d != 0) ++rank;
    if (d > 1) bf.torsion.push_back(d);
  }
  bf.free_rank = g.vertex_count() - rank;
  return bf;
}

const char* to_string(FranksVerdict::Kind k) {
  switch (k) {
    case FranksVerdict::Kind::Equivalent: return "equivalent";
    case FranksVerdict::Kind::NotEquivalent: return "not_equivalent";
    case FranksVerdict::Kind::OutOfScope: return "out_of_scope";
  }
  return "?";
}

FranksVerdict franks_equivalent(const DirectedGraph& g, const DirectedGraph& h) {
  using K = FranksVerdict::Kind;
  for (const auto* x : {&g, &h}) {
    if (!x->is_well_formed()) return {K::OutOfScope, "malformed graph"};
    if (x->has_bundles()) return {K::OutOfScope, "graph has infinite bundles"};
    if (!is_irreducible(*x)) return {K::OutOfScope, "graph is not irreducible"};
    if (!is_nontrivial(*x)) return {K::OutOfScope, "graph is trivial (permutation adjacency)"};
  }
  auto ps_g = parry_sullivan(g), ps_h = parry_sullivan(h);
  if (ps_g != ps_h) return {K::NotEquivalent, "PS " + ps_g.get_str() + " != " + ps_h.get_str()};
  auto bf_g = bowen_franks(g), bf_h = bowen_franks(h);
  if (!(bf_g == bf_h))
    return {K::NotEquivalent, "BF " + bf_g.to_string() + " != " + bf_h.to_string()};
  return {K::Equivalent, "PS " + ps_g.get_str() + " and BF " + bf_g.to_string() + " agree"};
}

}  // namespace flowcat
