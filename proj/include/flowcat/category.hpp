#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flowcat/fq.hpp"

namespace flowcat {

/// Concrete morphism handle. Objects are small integers whose meaning depends
/// on the category: a poset element index, a set size, or a dimension.
///
/// `data` is empty in posets, a function table of length src in finite sets,
/// and a tgt x src row-major matrix mod q in matrix categories.
struct Morphism {
  int src = 0;
  int tgt = 0;
  std::vector<int> data;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct Coproduct {
  int apex = 0;
  std::vector<Morphism> injections;
};

class FiniteCategory {
 public:
  virtual ~FiniteCategory() = default;

  /// The spec string this category was built from, e.g. "mat:2:3".
  virtual std::string spec() const = 0;
  virtual bool is_poset() const { return false; }

  virtual int object_count() const = 0;
  virtual std::string object_name(int x) const = 0;
  bool has_object(int x) const { return x >= 0 && x < object_count(); }

  virtual bool is_valid(const Morphism& f) const = 0;
  /// Saturates at UINT64_MAX.
  virtual std::uint64_t hom_size(int a, int b) const = 0;
  /// Throws CapExceeded when hom_size exceeds `limit`.
  virtual std::vector<Morphism> hom(int a, int b, std::uint64_t limit = 1u << 22) const = 0;
  virtual Morphism identity(int a) const = 0;
  /// g o f; throws IllTyped when f.tgt != g.src.
  virtual Morphism compose(const Morphism& g, const Morphism& f) const = 0;

  /// Canonical coproduct of the family, or none when it does not exist here.
  virtual std::optional<Coproduct> coproduct(const std::vector<int>& family) const = 0;
  /// The map out of `c` whose i-th restriction is maps[i]; every maps[i] must
  /// go from the i-th summand to `target`.
  virtual Morphism cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                           int target) const = 0;

  virtual std::optional<Morphism> inverse(const Morphism& f) const = 0;
  bool is_iso(const Morphism& f) const { return inverse(f).has_value(); }
  /// All isomorphisms a -> b.
  virtual std::vector<Morphism> isos(int a, int b, std::uint64_t limit = 1u << 22) const;

  /// A morphism parallel to f but different from it, if there is one.
  virtual std::optional<Morphism> perturb(const Morphism& f) const = 0;

  virtual std::string to_string(const Morphism& f) const;

  /// Throws IllTyped unless f is a valid morphism a -> b.
  void require(const Morphism& f, int a, int b, const std::string& what) const;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

class PosetCategory : public FiniteCategory {
 public:
  /// leq[i][j] == (element i <= element j). Must be a partial order.
  PosetCategory(std::string spec, std::vector<std::string> names,
                std::vector<std::vector<bool>> leq);

  static PosetCategory chain(int k);
  /// Two incomparable atoms between a bottom and a top.
  static PosetCategory diamond();
  /// Two incomparable elements with a common top.
  static PosetCategory vee();

  std::string spec() const override { return spec_; }
  bool is_poset() const override { return true; }
  int object_count() const override { return static_cast<int>(names_.size()); }
  std::string object_name(int x) const override { return names_.at(x); }
  bool leq(int a, int b) const { return leq_[a][b]; }
  /// Least upper bound, if it exists. The empty family asks for a bottom.
  std::optional<int> supremum(const std::vector<int>& family) const;
  bool has_finite_suprema() const;

  bool is_valid(const Morphism& f) const override;
  std::uint64_t hom_size(int a, int b) const override { return leq(a, b) ? 1 : 0; }
  std::vector<Morphism> hom(int a, int b, std::uint64_t limit = 1u << 22) const override;
  Morphism identity(int a) const override { return {a, a, {}}; }
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  std::optional<Coproduct> coproduct(const std::vector<int>& family) const override;
  Morphism cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                   int target) const override;
  std::optional<Morphism> inverse(const Morphism& f) const override;
  std::optional<Morphism> perturb(const Morphism&) const override { return std::nullopt; }
  std::string to_string(const Morphism& f) const override;

 private:
  std::string spec_;
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
};

/// Finite sets {0..n-1} with n <= max_size.
class FinSetSkeleton : public FiniteCategory {
 public:
  explicit FinSetSkeleton(int max_size);

  std::string spec() const override { return "finset:" + std::to_string(max_); }
  int object_count() const override { return max_ + 1; }
  std::string object_name(int x) const override { return std::to_string(x); }

  bool is_valid(const Morphism& f) const override;
  std::uint64_t hom_size(int a, int b) const override;
  std::vector<Morphism> hom(int a, int b, std::uint64_t limit = 1u << 22) const override;
  Morphism identity(int a) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  std::optional<Coproduct> coproduct(const std::vector<int>& family) const override;
  Morphism cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                   int target) const override;
  std::optional<Morphism> inverse(const Morphism& f) const override;
  std::vector<Morphism> isos(int a, int b, std::uint64_t limit = 1u << 22) const override;
  std::optional<Morphism> perturb(const Morphism& f) const override;

 private:
  int max_;
};

/// F_q^n for n <= max_dim, morphisms are matrices.
class MatCategory : public FiniteCategory {
 public:
  MatCategory(int q, int max_dim);

  std::string spec() const override {
    return "mat:" + std::to_string(q_) + ":" + std::to_string(max_);
  }
  int field() const { return q_; }
  int object_count() const override { return max_ + 1; }
  std::string object_name(int x) const override { return std::to_string(x); }

  FqMatrix matrix(const Morphism& f) const;
  Morphism morphism(const FqMatrix& m) const;

  bool is_valid(const Morphism& f) const override;
  std::uint64_t hom_size(int a, int b) const override;
  std::vector<Morphism> hom(int a, int b, std::uint64_t limit = 1u << 22) const override;
  Morphism identity(int a) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  std::optional<Coproduct> coproduct(const std::vector<int>& family) const override;
  Morphism cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                   int target) const override;
  std::optional<Morphism> inverse(const Morphism& f) const override;
  std::optional<Morphism> perturb(const Morphism& f) const override;

 private:
  int q_;
  int max_;
};

/// Parses "poset:chain<k>", "poset:diamond", "poset:vee", "poset:<file.json>",
/// "finset:<max_size>" and "mat:<q>:<max_dim>". Throws Parse on bad input.
CategoryPtr parse_category(const std::string& spec);

/// Reads {"elements": [...], "leq": [[a, b], ...]}; the order is the
/// reflexive-transitive closure of the listed pairs.
PosetCategory poset_from_json_text(const std::string& spec, const std::string& text);

}  // namespace flowcat
