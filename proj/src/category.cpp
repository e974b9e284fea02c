#include "flowcat/category.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "flowcat/error.hpp"

namespace flowcat {

namespace {

[[noreturn]] void ill_typed(const std::string& msg) { throw Error(ErrorKind::IllTyped, msg); }

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void check_limit(std::uint64_t size, std::uint64_t limit, int a, int b) {
  if (size > limit)
    throw Error(ErrorKind::CapExceeded, "hom-set " + std::to_string(a) + " -> " +
                                            std::to_string(b) + " too large to enumerate");
}

}  // namespace

std::vector<Morphism> FiniteCategory::isos(int a, int b, std::uint64_t limit) const {
  std::vector<Morphism> out;
  for (auto& f : hom(a, b, limit))
    if (is_iso(f)) out.push_back(std::move(f));
  return out;
}

std::string FiniteCategory::to_string(const Morphism& f) const {
  std::ostringstream os;
  os << f.src << "->" << f.tgt << " [";
  for (std::size_t k = 0; k < f.data.size(); ++k) os << (k ? "," : "") << f.data[k];
  os << ']';
  return os.str();
}

void FiniteCategory::require(const Morphism& f, int a, int b, const std::string& what) const {
  if (f.src != a || f.tgt != b || !is_valid(f))
    ill_typed(what + " should be a morphism " + object_name(a) + " -> " + object_name(b) +
              " but is " + to_string(f));
}

// ---- posets ----

PosetCategory::PosetCategory(std::string spec, std::vector<std::string> names,
                             std::vector<std::vector<bool>> leq)
    : spec_(std::move(spec)), names_(std::move(names)), leq_(std::move(leq)) {
  const std::size_t n = names_.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "poset must be nonempty");
  if (leq_.size() != n) throw Error(ErrorKind::InvalidArgument, "order relation has wrong size");
  for (const auto& row : leq_)
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "order relation has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq_[i][i]) throw Error(ErrorKind::InvalidArgument, "order is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i][j] && leq_[j][i])
        throw Error(ErrorKind::InvalidArgument,
                    "order is not antisymmetric at " + names_[i] + ", " + names_[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[i][j] && leq_[j][k] && !leq_[i][k])
          throw Error(ErrorKind::InvalidArgument, "order is not transitive");
    }
  }
}

PosetCategory PosetCategory::chain(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "chain needs at least one element");
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq(k, std::vector<bool>(k));
  for (int i = 0; i < k; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < k; ++j) leq[i][j] = i <= j;
  }
  return {"poset:chain" + std::to_string(k), names, leq};
}

PosetCategory PosetCategory::diamond() {
  // bot < a, b < top
  std::vector<std::vector<bool>> leq = {{true, true, true, true},
                                        {false, true, false, true},
                                        {false, false, true, true},
                                        {false, false, false, true}};
  return {"poset:diamond", {"bot", "a", "b", "top"}, leq};
}

PosetCategory PosetCategory::vee() {
  std::vector<std::vector<bool>> leq = {{true, false, true}, {false, true, true},
                                        {false, false, true}};
  return {"poset:vee", {"a", "b", "top"}, leq};
}

std::optional<int> PosetCategory::supremum(const std::vector<int>& family) const {
  const int n = object_count();
  std::vector<int> ub;
  for (int u = 0; u < n; ++u)
    if (std::all_of(family.begin(), family.end(), [&](int x) { return leq(x, u); }))
      ub.push_back(u);
  for (int u : ub)
    if (std::all_of(ub.begin(), ub.end(), [&](int w) { return leq(u, w); })) return u;
  return std::nullopt;
}

bool PosetCategory::has_finite_suprema() const {
  // Binary suprema plus a bottom give all finite ones.
  const int n = object_count();
  if (!supremum({})) return false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!supremum({a, b})) return false;
  return true;
}

bool PosetCategory::is_valid(const Morphism& f) const {
  return has_object(f.src) && has_object(f.tgt) && f.data.empty() && leq(f.src, f.tgt);
}

std::vector<Morphism> PosetCategory::hom(int a, int b, std::uint64_t) const {
  if (leq(a, b)) return {Morphism{a, b, {}}};
  return {};
}

Morphism PosetCategory::compose(const Morphism& g, const Morphism& f) const {
  if (f.tgt != g.src) ill_typed("composing " + to_string(g) + " after " + to_string(f));
  return {f.src, g.tgt, {}};
}

std::optional<Coproduct> PosetCategory::coproduct(const std::vector<int>& family) const {
  auto s = supremum(family);
  if (!s) return std::nullopt;
  Coproduct c{*s, {}};
  for (int x : family) c.injections.push_back({x, *s, {}});
  return c;
}

Morphism PosetCategory::cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                                int target) const {
  if (maps.size() != c.injections.size()) ill_typed("cotuple arity mismatch");
  for (std::size_t i = 0; i < maps.size(); ++i)
    require(maps[i], c.injections[i].src, target, "cotuple component");
  if (!leq(c.apex, target)) ill_typed("no map from the supremum to " + object_name(target));
  return {c.apex, target, {}};
}

std::optional<Morphism> PosetCategory::inverse(const Morphism& f) const {
  if (f.src != f.tgt) return std::nullopt;
  return f;
}

std::string PosetCategory::to_string(const Morphism& f) const {
  return object_name(f.src) + "<=" + object_name(f.tgt);
}

// ---- finite sets ----

FinSetSkeleton::FinSetSkeleton(int max_size) : max_(max_size) {
  if (max_size < 0 || max_size > 8)
    throw Error(ErrorKind::InvalidArgument, "finset max_size must be between 0 and 8");
}

bool FinSetSkeleton::is_valid(const Morphism& f) const {
  if (!has_object(f.src) || !has_object(f.tgt)) return false;
  if (f.data.size() != static_cast<std::size_t>(f.src)) return false;
  return std::all_of(f.data.begin(), f.data.end(), [&](int x) { return x >= 0 && x < f.tgt; });
}

std::uint64_t FinSetSkeleton::hom_size(int a, int b) const { return sat_pow(b, a); }

std::vector<Morphism> FinSetSkeleton::hom(int a, int b, std::uint64_t limit) const {
  check_limit(hom_size(a, b), limit, a, b);
  std::vector<Morphism> out;
  if (a > 0 && b == 0) return out;
  std::vector<int> f(a, 0);
  while (true) {
    out.push_back({a, b, f});
    int k = 0;
    while (k < a && ++f[k] == b) f[k++] = 0;
    if (k == a) break;
  }
  return out;
}

Morphism FinSetSkeleton::identity(int a) const {
  std::vector<int> f(a);
  std::iota(f.begin(), f.end(), 0);
  return {a, a, f};
}

Morphism FinSetSkeleton::compose(const Morphism& g, const Morphism& f) const {
  if (f.tgt != g.src) ill_typed("composing " + to_string(g) + " after " + to_string(f));
  Morphism h{f.src, g.tgt, std::vector<int>(f.src)};
  for (int i = 0; i < f.src; ++i) h.data[i] = g.data[f.data[i]];
  return h;
}

std::optional<Coproduct> FinSetSkeleton::coproduct(const std::vector<int>& family) const {
  int total = 0;
  for (int x : family) total += x;
  if (total > max_) return std::nullopt;
  Coproduct c{total, {}};
  int offset = 0;
  for (int x : family) {
    Morphism inj{x, total, std::vector<int>(x)};
    std::iota(inj.data.begin(), inj.data.end(), offset);
    c.injections.push_back(std::move(inj));
    offset += x;
  }
  return c;
}

Morphism FinSetSkeleton::cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                                 int target) const {
  if (maps.size() != c.injections.size()) ill_typed("cotuple arity mismatch");
  Morphism out{c.apex, target, std::vector<int>(c.apex)};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    require(maps[i], c.injections[i].src, target, "cotuple component");
    for (int k = 0; k < maps[i].src; ++k) out.data[c.injections[i].data[k]] = maps[i].data[k];
  }
  return out;
}

std::optional<Morphism> FinSetSkeleton::inverse(const Morphism& f) const {
  if (f.src != f.tgt) return std::nullopt;
  Morphism g{f.tgt, f.src, std::vector<int>(f.src, -1)};
  for (int i = 0; i < f.src; ++i) {
    if (g.data[f.data[i]] != -1) return std::nullopt;
    g.data[f.data[i]] = i;
  }
  return g;
}

std::vector<Morphism> FinSetSkeleton::isos(int a, int b, std::uint64_t) const {
  if (a != b) return {};
  std::vector<Morphism> out;
  auto id = identity(a);
  do out.push_back(id);
  while (std::next_permutation(id.data.begin(), id.data.end()));
  return out;
}

std::optional<Morphism> FinSetSkeleton::perturb(const Morphism& f) const {
  if (f.src == 0 || f.tgt < 2) return std::nullopt;
  // Prefer a constant map; fall back to moving one point.
  Morphism c{f.src, f.tgt, std::vector<int>(f.src, 0)};
  if (c != f) return c;
  Morphism g = f;
  g.data[0] = 1;
  return g;
}

// ---- matrices ----

MatCategory::MatCategory(int q, int max_dim) : q_(q), max_(max_dim) {
  if (!is_small_prime(q)) throw Error(ErrorKind::InvalidArgument, "mat field must be 2, 3, 5 or 7");
  if (max_dim < 0 || max_dim > 8)
    throw Error(ErrorKind::InvalidArgument, "mat max_dim must be between 0 and 8");
}

FqMatrix MatCategory::matrix(const Morphism& f) const {
  return FqMatrix(q_, f.tgt, f.src, f.data);
}

Morphism MatCategory::morphism(const FqMatrix& m) const {
  return {static_cast<int>(m.cols()), static_cast<int>(m.rows()), m.entries()};
}

bool MatCategory::is_valid(const Morphism& f) const {
  if (!has_object(f.src) || !has_object(f.tgt)) return false;
  if (f.data.size() != static_cast<std::size_t>(f.src * f.tgt)) return false;
  return std::all_of(f.data.begin(), f.data.end(), [&](int x) { return x >= 0 && x < q_; });
}

std::uint64_t MatCategory::hom_size(int a, int b) const { return sat_pow(q_, a * b); }

std::vector<Morphism> MatCategory::hom(int a, int b, std::uint64_t limit) const {
  check_limit(hom_size(a, b), limit, a, b);
  std::vector<Morphism> out;
  std::vector<int> m(a * b, 0);
  const std::size_t len = m.size();
  while (true) {
    out.push_back({a, b, m});
    std::size_t k = 0;
    while (k < len && ++m[k] == q_) m[k++] = 0;
    if (k == len) break;
  }
  return out;
}

Morphism MatCategory::identity(int a) const { return morphism(FqMatrix::identity(q_, a)); }

Morphism MatCategory::compose(const Morphism& g, const Morphism& f) const {
  if (f.tgt != g.src) ill_typed("composing " + to_string(g) + " after " + to_string(f));
  return morphism(matrix(g) * matrix(f));
}

std::optional<Coproduct> MatCategory::coproduct(const std::vector<int>& family) const {
  int total = 0;
  for (int x : family) total += x;
  if (total > max_) return std::nullopt;
  Coproduct c{total, {}};
  int offset = 0;
  for (int x : family) {
    FqMatrix inj(q_, total, x);
    for (int k = 0; k < x; ++k) inj.set(offset + k, k, 1);
    c.injections.push_back(morphism(inj));
    offset += x;
  }
  return c;
}

Morphism MatCategory::cotuple(const Coproduct& c, const std::vector<Morphism>& maps,
                              int target) const {
  if (maps.size() != c.injections.size()) ill_typed("cotuple arity mismatch");
  // Canonical injections are block inclusions, so the cotuple is [f_1 | f_2 | ...].
  FqMatrix out(q_, target, c.apex);
  int offset = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    require(maps[i], c.injections[i].src, target, "cotuple component");
    out.set_block(0, offset, matrix(maps[i]));
    offset += maps[i].src;
  }
  return morphism(out);
}

std::optional<Morphism> MatCategory::inverse(const Morphism& f) const {
  auto inv = matrix(f).inverse();
  if (!inv) return std::nullopt;
  return morphism(*inv);
}

std::optional<Morphism> MatCategory::perturb(const Morphism& f) const {
  if (f.data.empty()) return std::nullopt;
  Morphism z{f.src, f.tgt, std::vector<int>(f.data.size(), 0)};
  if (z != f) return z;
  z.data[0] = 1;
  return z;
}

// ---- parsing ----

PosetCategory poset_from_json_text(const std::string& spec, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("poset file: ") + e.what());
  }
  try {
    auto names = j.at("elements").get<std::vector<std::string>>();
    const std::size_t n = names.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    auto index = [&](const std::string& s) {
      auto it = std::find(names.begin(), names.end(), s);
      if (it == names.end()) throw Error(ErrorKind::Parse, "poset file: unknown element " + s);
      return static_cast<std::size_t>(it - names.begin());
    };
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    if (j.contains("leq"))
      for (const auto& pair : j.at("leq")) {
        auto p = pair.get<std::vector<std::string>>();
        if (p.size() != 2) throw Error(ErrorKind::Parse, "poset file: leq entries are pairs");
        leq[index(p[0])][index(p[1])] = true;
      }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m)
          if (leq[i][k] && leq[k][m]) leq[i][m] = true;
    return PosetCategory(spec, names, leq);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("poset file: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument)
      throw Error(ErrorKind::Parse, std::string("poset file: ") + e.what());
    throw;
  }
}

namespace {

int parse_int(const std::string& s, const std::string& spec) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 6)
    throw Error(ErrorKind::Parse, "bad category spec " + spec);
  return std::stoi(s);
}

}  // namespace

CategoryPtr parse_category(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "bad category spec " + spec);
  const std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  try {
    if (kind == "poset") {
      if (rest.rfind("chain", 0) == 0 && rest.size() > 5 &&
          std::all_of(rest.begin() + 5, rest.end(), ::isdigit))
        return std::make_shared<PosetCategory>(PosetCategory::chain(parse_int(rest.substr(5), spec)));
      if (rest == "diamond") return std::make_shared<PosetCategory>(PosetCategory::diamond());
      if (rest == "vee") return std::make_shared<PosetCategory>(PosetCategory::vee());
      std::ifstream in(rest);
      if (!in) throw Error(ErrorKind::Parse, "cannot read poset file " + rest);
      std::stringstream ss;
      ss << in.rdbuf();
      return std::make_shared<PosetCategory>(poset_from_json_text(spec, ss.str()));
    }
    if (kind == "finset") return std::make_shared<FinSetSkeleton>(parse_int(rest, spec));
    if (kind == "mat") {
      auto c2 = rest.find(':');
      if (c2 == std::string::npos) throw Error(ErrorKind::Parse, "bad category spec " + spec);
      return std::make_shared<MatCategory>(parse_int(rest.substr(0, c2), spec),
                                           parse_int(rest.substr(c2 + 1), spec));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw Error(ErrorKind::Parse, e.what());
    throw;
  }
  throw Error(ErrorKind::Parse, "unknown category kind in " + spec);
}

}  // namespace flowcat
