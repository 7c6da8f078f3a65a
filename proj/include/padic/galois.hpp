#pragma once

// Finite abelian groups, characters, the model Gamma (+) Hom(mu(F), Gamma) of
// H^1(F, Gamma), and twisting of varieties with a Gamma-action over F_q.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "padic/arith.hpp"
#include "padic/cyclotomic.hpp"
#include "padic/error.hpp"
#include "padic/ff.hpp"
#include "padic/localfield.hpp"

namespace padic {

using GroupElement = std::vector<std::int64_t>;

/// Z/d_1 x ... x Z/d_r in invariant-factor form (d_i >= 2, d_i | d_{i+1}).
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      require(factors_[i] >= 2, Errc::InvalidArgument, "invariant factors must be >= 2");
      if (i + 1 < factors_.size()) {
        require(factors_[i + 1] % factors_[i] == 0, Errc::InvalidArgument,
                "invariant factors must divide each other");
      }
    }
  }

  static FinAbGroup cyclic(std::int64_t d) { return d == 1 ? FinAbGroup{} : FinAbGroup{{d}}; }

  /// "Z/2 x Z/4", "Z/6", or "1"/"trivial".
  static FinAbGroup parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "1" || s == "trivial" || s == "Z/1") return {};
    std::vector<std::int64_t> factors;
    std::size_t pos = 0;
    while (pos < s.size()) {
      require(s.compare(pos, 2, "Z/") == 0, Errc::ParseError, "expected 'Z/' in group '" + text + "'");
      pos += 2;
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      require(end > pos, Errc::ParseError, "expected order in group '" + text + "'");
      const std::int64_t d = std::stoll(s.substr(pos, end - pos));
      if (d != 1) factors.push_back(d);
      pos = end;
      if (pos < s.size()) {
        require(s[pos] == 'x' || s[pos] == '*', Errc::ParseError, "expected 'x' in group '" + text + "'");
        ++pos;
      }
    }
    return FinAbGroup(std::move(factors));
  }

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t order() const {
    std::int64_t n = 1;
    for (auto d : factors_) n *= d;
    return n;
  }
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  bool is_trivial() const { return factors_.empty(); }

  GroupElement identity() const { return GroupElement(factors_.size(), 0); }

  GroupElement reduce(GroupElement a) const {
    require(a.size() == factors_.size(), Errc::InvalidArgument, "element has wrong length");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod(a[i], factors_[i]);
    return a;
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], factors_[i]);
    return r;
  }
  GroupElement neg(const GroupElement& a) const {
    GroupElement r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(-a[i], factors_[i]);
    return r;
  }
  GroupElement scale(const GroupElement& a, std::int64_t k) const {
    GroupElement r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] * k, factors_[i]);
    return r;
  }
  bool is_identity(const GroupElement& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; });
  }
  std::int64_t element_order(const GroupElement& a) const {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < a.size(); ++i) ord = std::lcm(ord, factors_[i] / std::gcd(a[i], factors_[i]));
    return ord;
  }

  /// Position in the lexicographic enumeration (first coordinate most significant).
  std::int64_t index_of(const GroupElement& a) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i) idx = idx * factors_[i] + mod(a[i], factors_[i]);
    return idx;
  }
  GroupElement element_at(std::int64_t idx) const {
    GroupElement a(factors_.size(), 0);
    for (std::size_t i = factors_.size(); i-- > 0;) {
      a[i] = idx % factors_[i];
      idx /= factors_[i];
    }
    return a;
  }
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    const std::int64_t n = order();
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
  }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(factors_[i]);
    return s;
  }

  bool operator==(const FinAbGroup&) const = default;

 private:
  std::vector<std::int64_t> factors_;
};

inline std::string element_to_string(const GroupElement& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

/// Comma-separated tuple "1,0"; the empty string denotes the identity of the trivial group.
inline GroupElement parse_element(const FinAbGroup& g, const std::string& text) {
  GroupElement a;
  std::string cur;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    try {
      std::size_t used = 0;
      a.push_back(std::stoll(cur, &used));
      require(used == cur.size(), Errc::ParseError, "bad integer '" + cur + "'");
    } catch (const std::logic_error&) {
      fail(Errc::ParseError, "bad integer '" + cur + "'");
    }
  }
  require(a.size() == g.rank(), Errc::ParseError, "element '" + text + "' does not match group " + g.to_string());
  return g.reduce(a);
}

/// Character a -> sum_i a_i * exps_i / d_i in Q/Z.
class Character {
 public:
  Character() = default;
  Character(FinAbGroup owner, GroupElement exps) : owner_(std::move(owner)), exps_(owner_.reduce(std::move(exps))) {}
  static Character trivial(const FinAbGroup& g) { return {g, g.identity()}; }

  const FinAbGroup& owner() const { return owner_; }
  const GroupElement& exps() const { return exps_; }

  Rational operator()(const GroupElement& a) const {
    require(a.size() == exps_.size(), Errc::OwnerMismatch, "element not in the character's group");
    Rational s = 0;
    const auto& d = owner_.factors();
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(mod(a[i] * exps_[i], d[i])) / d[i];
    return frac(s);
  }

  /// Value as k / exponent(G), returning k.
  std::int64_t numerator_over_exponent(const GroupElement& a) const {
    const std::int64_t e = owner_.exponent();
    std::int64_t k = 0;
    const auto& d = owner_.factors();
    for (std::size_t i = 0; i < a.size(); ++i) k += mod(a[i] * exps_[i], d[i]) * (e / d[i]);
    return mod(k, e);
  }

  bool is_trivial() const { return owner_.is_identity(exps_); }
  std::int64_t order() const { return owner_.element_order(exps_); }

  Character operator+(const Character& o) const {
    require(owner_ == o.owner_, Errc::OwnerMismatch, "characters of different groups");
    return {owner_, owner_.add(exps_, o.exps_)};
  }

  bool operator==(const Character&) const = default;

 private:
  FinAbGroup owner_;
  GroupElement exps_;
};

inline std::vector<Character> all_characters(const FinAbGroup& g) {
  std::vector<Character> out;
  for (auto& e : g.elements()) out.emplace_back(g, e);
  return out;
}

/// sum_{a in G} xi * exp(2 pi i chi(a)) in exact cyclotomic arithmetic.
inline Cyclotomic character_sum(const Character& chi, const Rational& xi = Rational(0)) {
  const FinAbGroup& g = chi.owner();
  const std::int64_t e = g.exponent();
  std::vector<std::int64_t> hist(static_cast<std::size_t>(e), 0);
  for (std::int64_t i = 0; i < g.order(); ++i) ++hist[static_cast<std::size_t>(chi.numerator_over_exponent(g.element_at(i)))];
  auto s = Cyclotomic::from_histogram(e, std::move(hist));
  return xi == 0 ? s : s * Cyclotomic::from_q_mod_z(xi);
}

/// Element of H^1(F, Gamma) = Gamma (+) Hom(mu(F), Gamma), the second factor
/// identified with Gamma through the fixed primitive root.
struct TorsorClass {
  FinAbGroup owner;
  GroupElement unr;
  GroupElement ram;

  bool is_unramified() const { return owner.is_identity(ram); }
  bool operator==(const TorsorClass&) const = default;
};

inline void check_h1_admissible(const FinAbGroup& g, std::int64_t q) {
  const auto [p, m] = prime_power(q);
  (void)m;
  require(std::gcd(g.order(), p) == 1, Errc::BadCharacteristic, "|Gamma| is not coprime to p");
  require((q - 1) % g.exponent() == 0, Errc::RootsOfUnityMissing,
          "exponent " + std::to_string(g.exponent()) + " does not divide q - 1 = " + std::to_string(q - 1));
}

/// All |Gamma|^2 classes, unramified part major.
inline std::vector<TorsorClass> h1_enumerate(const FinAbGroup& g, const LocalFieldSpec& F) {
  check_h1_admissible(g, F.q());
  std::vector<TorsorClass> out;
  const auto elems = g.elements();
  out.reserve(elems.size() * elems.size());
  for (const auto& x : elems)
    for (const auto& f : elems) out.push_back({g, x, f});
  return out;
}

/// <(x,f),(y,g)> = f(y) - g(x) in Q/Z, with Gamma* = Gamma via the invariant-factor basis.
inline Rational h1_pairing(const TorsorClass& a, const TorsorClass& b) {
  require(a.owner == b.owner, Errc::OwnerMismatch, "torsor classes for different groups");
  const Character f(a.owner, a.ram);
  const Character g(b.owner, b.ram);
  return frac(f(b.unr) - g(a.unr));
}

inline TorsorClass h1_add(const TorsorClass& a, const TorsorClass& b) {
  require(a.owner == b.owner, Errc::OwnerMismatch, "torsor classes for different groups");
  return {a.owner, a.owner.add(a.unr, b.unr), a.owner.add(a.ram, b.ram)};
}

/// Class of the mu_d-torsor of d-th roots of x.
inline TorsorClass kummer_class(const TruncatedLaurentSeries& x, std::int64_t d) {
  const auto& field = x.field();
  require(d >= 1, Errc::InvalidArgument, "d must be positive");
  require(d % field->p() != 0, Errc::PDividesN, "p divides d");
  require((field->q() - 1) % d == 0, Errc::RootsOfUnityMissing, "d does not divide q - 1");
  const auto cls = ls_power_class(x, d);
  const auto g = FinAbGroup::cyclic(d);
  if (g.is_trivial()) return {g, {}, {}};
  return {g, {cls.residue_class}, {cls.valuation_class}};
}

// ---------------------------------------------------------------------------
// Gamma-varieties over F_q

/// Gamma acting diagonally on A^n over F_q: a scales coordinate i by
/// zeta^{E * chi_i(a)} with zeta the canonical primitive E-th root, E = exponent.
struct LinearDiagonalModel {
  FinAbGroup group;
  Field field;
  std::vector<Character> coords;

  LinearDiagonalModel(FinAbGroup g, Field f, std::vector<Character> c)
      : group(std::move(g)), field(std::move(f)), coords(std::move(c)) {
    require(field != nullptr, Errc::InvalidArgument, "missing field");
    check_h1_admissible(group, field->q());
    for (const auto& chi : coords) require(chi.owner() == group, Errc::OwnerMismatch, "coordinate character group");
  }

  std::size_t dim() const { return coords.size(); }

  /// Scalar by which a acts on coordinate i, as an F_q index.
  FieldSpec::Elem scalar(const GroupElement& a, std::size_t i) const {
    const std::int64_t e = group.exponent();
    return field->exp((field->q() - 1) / e * coords[i].numerator_over_exponent(a));
  }

  /// Sub-model on the given coordinates.
  LinearDiagonalModel restrict_to(const std::vector<std::size_t>& which) const {
    std::vector<Character> c;
    for (auto i : which) c.push_back(coords[i]);
    return {group, field, std::move(c)};
  }
};

/// Finite set of geometric points with commuting generator and Frobenius permutations.
struct PointSetModel {
  FinAbGroup group;
  std::vector<std::vector<std::uint32_t>> generators;  // one permutation per invariant factor
  std::vector<std::uint32_t> frobenius;

  PointSetModel(FinAbGroup g, std::vector<std::vector<std::uint32_t>> gens, std::vector<std::uint32_t> frob)
      : group(std::move(g)), generators(std::move(gens)), frobenius(std::move(frob)) {
    const std::size_t n = frobenius.size();
    require(generators.size() == group.rank(), Errc::InvalidArgument, "one permutation per generator expected");
    auto is_perm = [n](const std::vector<std::uint32_t>& p) {
      if (p.size() != n) return false;
      std::vector<bool> seen(n, false);
      for (auto v : p) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
      }
      return true;
    };
    require(is_perm(frobenius), Errc::InvalidArgument, "Frobenius is not a permutation");
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& s = generators[i];
      require(is_perm(s), Errc::InvalidArgument, "generator is not a permutation");
      for (std::size_t x = 0; x < n; ++x) {
        std::uint32_t y = static_cast<std::uint32_t>(x);
        for (std::int64_t k = 0; k < group.factors()[i]; ++k) y = s[y];
        require(y == x, Errc::InvalidArgument, "generator order does not divide its factor");
        require(s[frobenius[x]] == frobenius[s[x]], Errc::InvalidArgument, "action and Frobenius do not commute");
        for (const auto& t : generators) require(s[t[x]] == t[s[x]], Errc::InvalidArgument, "generators do not commute");
      }
    }
  }

  std::size_t size() const { return frobenius.size(); }

  std::vector<std::uint32_t> action(const GroupElement& a) const {
    std::vector<std::uint32_t> perm(size());
    std::iota(perm.begin(), perm.end(), 0U);
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::int64_t k = 0; k < a[i]; ++k)
        for (auto& v : perm) v = generators[i][v];
    return perm;
  }
};

using GammaVarietyAction = std::variant<LinearDiagonalModel, PointSetModel>;

inline const FinAbGroup& action_group(const GammaVarietyAction& action) {
  return std::visit([](const auto& m) -> const FinAbGroup& { return m.group; }, action);
}

inline constexpr std::int64_t kMaxModelPoints = 1'000'000;

namespace detail {

// Fixed points of c^m x^{Q} = x over the algebraic closure, Q = q^m, c in F_q^x:
// x = 0 or x^{Q-1} = c^{-m}; the latter is separable of degree Q - 1.
inline BigInt linear_coordinate_twist_count(std::int64_t q, std::int64_t m) {
  BigInt big_q = 1;
  for (std::int64_t i = 0; i < m; ++i) big_q *= q;
  return 1 + (big_q - 1);
}

}  // namespace detail

/// #M_T(F_{q^m}) for the unramified twist T of class tau: fixed points of (tau o Frob)^m.
inline BigInt twist_pointcount(const GammaVarietyAction& action, const GroupElement& tau, std::int64_t m) {
  require(m >= 1, Errc::InvalidArgument, "m must be positive");
  if (const auto* lin = std::get_if<LinearDiagonalModel>(&action)) {
    const auto t = lin->group.reduce(tau);
    BigInt total = 1;
    (void)t;
    for (std::size_t i = 0; i < lin->dim(); ++i) total *= detail::linear_coordinate_twist_count(lin->field->q(), m);
    return total;
  }
  const auto& pts = std::get<PointSetModel>(action);
  const auto t = pts.group.reduce(tau);
  const auto act = pts.action(t);
  BigInt count = 0;
  for (std::uint32_t x = 0; x < pts.size(); ++x) {
    std::uint32_t y = x;
    for (std::int64_t k = 0; k < m; ++k) y = act[pts.frobenius[y]];
    if (y == x) ++count;
  }
  return count;
}

/// Same count by an independent route: for linear models, coordinatewise
/// enumeration of F_{q^{m E}} (which contains every solution); for point
/// models, the cycle structure of tau o Frob.
inline BigInt twist_pointcount_by_enumeration(const GammaVarietyAction& action, const GroupElement& tau,
                                              std::int64_t m) {
  require(m >= 1, Errc::InvalidArgument, "m must be positive");
  if (const auto* lin = std::get_if<LinearDiagonalModel>(&action)) {
    const auto& base = lin->field;
    const std::int64_t degree = base->m() * m * lin->group.exponent();
    long double size = 1;
    for (std::int64_t i = 0; i < degree; ++i) size *= static_cast<long double>(base->p());
    require(size <= static_cast<long double>(kMaxFieldSize), Errc::ModelTooLarge,
            "enumeration field F_{q^" + std::to_string(m * lin->group.exponent()) + "} exceeds 10^6");
    const Field big = ff_make_field(base->p(), static_cast<int>(degree));
    const auto embed = ff_embedding(base, big);
    const auto t = lin->group.reduce(tau);
    BigInt total = 1;
    for (std::size_t i = 0; i < lin->dim(); ++i) {
      const auto c = embed[lin->scalar(t, i)];
      std::int64_t count = 0;
      for (std::int64_t x = 0; x < big->q(); ++x) {
        auto y = static_cast<FieldSpec::Elem>(x);
        for (std::int64_t k = 0; k < m; ++k) y = big->mul(c, big->pow(y, base->q()));
        if (y == static_cast<FieldSpec::Elem>(x)) ++count;
      }
      total *= count;
    }
    return total;
  }
  const auto& pts = std::get<PointSetModel>(action);
  const auto act = pts.action(pts.group.reduce(tau));
  std::vector<bool> seen(pts.size(), false);
  BigInt count = 0;
  for (std::uint32_t x = 0; x < pts.size(); ++x) {
    if (seen[x]) continue;
    std::int64_t len = 0;
    std::uint32_t y = x;
    do {
      seen[y] = true;
      y = act[pts.frobenius[y]];
      ++len;
    } while (y != x);
    if (m % len == 0) count += len;
  }
  return count;
}

/// Point model of a linear action on A^n(F_{q^E}), E = exponent; every point
/// with Frob(x) = gamma x lies there.
inline PointSetModel to_point_model(const LinearDiagonalModel& lin) {
  const auto& base = lin.field;
  const std::int64_t degree = base->m() * lin.group.exponent();
  long double total = 1;
  for (std::int64_t i = 0; i < degree * static_cast<std::int64_t>(lin.dim()); ++i)
    total *= static_cast<long double>(base->p());
  require(total <= static_cast<long double>(kMaxModelPoints), Errc::ModelTooLarge, "point model exceeds 10^6 points");
  const Field big = ff_make_field(base->p(), static_cast<int>(degree));
  const auto embed = ff_embedding(base, big);
  const std::int64_t bq = big->q();
  const auto n = static_cast<std::size_t>(total);
  auto apply = [&](auto&& coord_map) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      std::size_t rest = idx, out = 0, place = 1;
      for (std::size_t i = 0; i < lin.dim(); ++i) {
        const auto x = static_cast<FieldSpec::Elem>(rest % static_cast<std::size_t>(bq));
        rest /= static_cast<std::size_t>(bq);
        out += static_cast<std::size_t>(coord_map(i, x)) * place;
        place *= static_cast<std::size_t>(bq);
      }
      perm[idx] = static_cast<std::uint32_t>(out);
    }
    return perm;
  };
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::size_t g = 0; g < lin.group.rank(); ++g) {
    GroupElement e = lin.group.identity();
    e[g] = 1;
    gens.push_back(apply([&](std::size_t i, FieldSpec::Elem x) { return big->mul(embed[lin.scalar(e, i)], x); }));
  }
  auto frob = apply([&](std::size_t, FieldSpec::Elem x) { return big->pow(x, base->q()); });
  return {lin.group, std::move(gens), std::move(frob)};
}

struct BurnsideResult {
  Rational groupoid_count;  // #[M/Gamma](F_q) from orbit enumeration
  Rational twist_average;   // (1/|Gamma|) sum_tau #M_tau(F_q)
  bool equal() const { return groupoid_count == twist_average; }
};

/// Groupoid count of [M/Gamma](F_q) against the average of twisted counts.
inline BurnsideResult burnside_check(const GammaVarietyAction& action) {
  const FinAbGroup& g = action_group(action);
  BurnsideResult r;
  BigInt twisted = 0;
  for (const auto& tau : g.elements()) twisted += twist_pointcount(action, tau, 1);
  r.twist_average = Rational(twisted) / g.order();

  const PointSetModel pts = std::holds_alternative<PointSetModel>(action)
                                ? std::get<PointSetModel>(action)
                                : to_point_model(std::get<LinearDiagonalModel>(action));
  const auto elems = g.elements();
  std::vector<std::vector<std::uint32_t>> acts;
  acts.reserve(elems.size());
  for (const auto& a : elems) acts.push_back(pts.action(a));
  std::vector<bool> seen(pts.size(), false);
  Rational total = 0;
  for (std::uint32_t x = 0; x < pts.size(); ++x) {
    if (seen[x]) continue;
    std::int64_t stab = 0, twists = 0;
    for (const auto& act : acts) {
      seen[act[x]] = true;
      if (act[x] == x) ++stab;
      if (act[x] == pts.frobenius[x]) ++twists;  // Frob(x) = gamma x
    }
    // Each Frobenius-stable orbit carries `twists` objects, each with `stab` automorphisms.
    total += Rational(twists) / stab;
  }
  r.groupoid_count = total;
  return r;
}

}  // namespace padic
